#pragma once

// Random instances of the range amalgam construction.

#include <algorithm>
#include <iterator>
#include <optional>
#include <random>
#include <vector>

#include "relwb/fragment.hpp"
#include "relwb/morphisms.hpp"

namespace testing {

struct RangeSample {
  std::vector<relwb::Element> u, v, w;
  relwb::FragmentMap alpha, beta;
};

inline std::vector<relwb::Element> pick(const std::vector<relwb::Element>& from, int k, std::mt19937_64& rng) {
  std::vector<relwb::Element> out;
  std::sample(from.begin(), from.end(), std::back_inserter(out), k, rng);
  return out;
}

inline std::vector<relwb::Element> image(const relwb::FragmentMap& g, const std::vector<relwb::Element>& xs) {
  std::vector<relwb::Element> out;
  for (auto x : xs) out.push_back(g(x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// A partial isomorphism of the ambient sending gu[i] to gv[iota[i]] whose
// inverse carries all of gv into dom(g).
inline std::optional<relwb::FragmentMap> pull_back(const relwb::FragmentMap& g, const std::vector<relwb::Element>& gu,
                                                   const std::vector<relwb::Element>& gv,
                                                   const std::vector<relwb::Element>& iota, std::mt19937_64& rng) {
  using namespace relwb;
  const Structure& amb = g.ambient();
  auto dom = g.domain();
  std::shuffle(dom.begin(), dom.end(), rng);
  const Structure a1 = induced_substructure(amb, gv);
  const Structure target = induced_substructure(amb, dom);
  std::vector<Element> partial(gv.size(), -1);
  for (std::size_t i = 0; i < gu.size(); ++i) {
    const auto pos = std::find(dom.begin(), dom.end(), gu[i]) - dom.begin();
    if (pos == static_cast<std::ptrdiff_t>(dom.size())) return std::nullopt;
    partial[static_cast<std::size_t>(iota[i])] = static_cast<Element>(pos);
  }
  const auto psi = find_morphism_extending(a1, target, MorphismKind::embedding, partial);
  if (!psi.morphism) return std::nullopt;
  std::vector<Element> table(static_cast<std::size_t>(amb.size()), -1);
  for (std::size_t j = 0; j < gv.size(); ++j) table[dom[psi.morphism->map[j]]] = gv[j];
  return FragmentMap(amb, std::move(table));
}

// Random U, V, W inside dom(g) with g[U] inside dom(g), random embeddings of
// g[U] into g[V] and g[W], and alpha, beta realising them.
inline std::optional<RangeSample> sample_range_instance(const relwb::FragmentMap& g, std::mt19937_64& rng) {
  using namespace relwb;
  const auto dom = g.domain();
  std::vector<Element> inner;
  for (auto x : dom)
    if (g.defined(g(x))) inner.push_back(x);
  if (inner.empty()) return std::nullopt;
  RangeSample s;
  s.u = pick(inner, 1 + static_cast<int>(rng() % 2), rng);
  s.v = pick(dom, 1 + static_cast<int>(rng() % 3), rng);
  s.w = pick(dom, 1 + static_cast<int>(rng() % 3), rng);
  const auto gu = image(g, s.u), gv = image(g, s.v), gw = image(g, s.w);
  const Structure& amb = g.ambient();
  const Structure a0 = induced_substructure(amb, gu);
  auto choose = [&](const std::vector<Element>& gx) -> std::optional<std::vector<Element>> {
    const auto embs = enumerate_embeddings(a0, induced_substructure(amb, gx));
    if (embs.empty()) return std::nullopt;
    return embs[rng() % embs.size()].map;
  };
  const auto i1 = choose(gv), i2 = choose(gw);
  if (!i1 || !i2) return std::nullopt;
  auto alpha = pull_back(g, gu, gv, *i1, rng);
  auto beta = pull_back(g, gu, gw, *i2, rng);
  if (!alpha || !beta) return std::nullopt;
  s.alpha = std::move(*alpha);
  s.beta = std::move(*beta);
  return s;
}

}  // namespace testing
