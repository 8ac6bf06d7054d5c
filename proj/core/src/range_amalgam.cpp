#include <algorithm>

#include "relwb/amalgam.hpp"
#include "relwb/canonical.hpp"
#include "relwb/error.hpp"

namespace relwb {

namespace {

std::vector<Element> image_of(const FragmentMap& g, const std::vector<Element>& xs) {
  std::vector<Element> out;
  for (Element x : xs) out.push_back(g(x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void require_partial_isomorphism(const FragmentMap& a, const char* name) {
  const auto dom = a.domain();
  std::vector<Element> img;
  for (Element x : dom) img.push_back(a(x));
  auto sorted = img;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError(std::string(name) + " is not injective");
  if (!is_embedding(induced_substructure(a.ambient(), dom), induced_substructure(a.ambient(), img),
                    [&] {
                      std::vector<Element> id(dom.size());
                      for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<Element>(i);
                      return id;
                    }()))
    throw InputError(std::string(name) + " is not a partial isomorphism");
}

// Preimages under `a` of every element of `ys`, aligned with ys.
std::vector<Element> preimages(const FragmentMap& a, const std::vector<Element>& ys, const char* name) {
  std::vector<Element> out;
  for (Element y : ys) {
    Element found = -1;
    for (Element x = 0; x < static_cast<Element>(a.table().size()); ++x)
      if (a.table()[x] == y) {
        found = x;
        break;
      }
    if (found < 0)
      throw InsufficientFragment("element " + std::to_string(y) + " has no preimage under " + name);
    out.push_back(found);
  }
  return out;
}

Element position(const std::vector<Element>& sorted, Element x) {
  return static_cast<Element>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
}

}  // namespace

RangeAmalgam explicit_amalgam_rr(const FragmentMap& g, const std::vector<Element>& u,
                                 const std::vector<Element>& v, const std::vector<Element>& w,
                                 const FragmentMap& alpha, const FragmentMap& beta, int width) {
  const Structure& amb = g.ambient();
  if (!(alpha.ambient() == amb) || !(beta.ambient() == amb))
    throw InputError("alpha and beta must live on the ambient of g");
  if (width <= 0) width = std::max(2, default_width(amb.signature()));
  const auto rr = is_range_rigid(g, width);
  if (!rr.holds) throw InputError("map is not range-rigid at width " + std::to_string(width));
  require_partial_isomorphism(alpha, "alpha");
  require_partial_isomorphism(beta, "beta");

  const auto gu = image_of(g, u);
  const auto gv = image_of(g, v);
  const auto gw = image_of(g, w);
  std::vector<Element> e1;
  std::vector<Element> e2;
  for (Element x : gu) {
    if (!alpha.defined(x) || !std::binary_search(gv.begin(), gv.end(), alpha(x)))
      throw InputError("alpha does not send g[U] into g[V]");
    if (!beta.defined(x) || !std::binary_search(gw.begin(), gw.end(), beta(x)))
      throw InputError("beta does not send g[U] into g[W]");
    e1.push_back(position(gv, alpha(x)));
    e2.push_back(position(gw, beta(x)));
  }

  const auto pre_v = preimages(alpha, gv, "alpha");
  const auto pre_w = preimages(beta, gw, "beta");
  std::vector<Element> support;
  for (const auto* pre : {&pre_v, &pre_w})
    for (Element x : *pre) support.push_back(g(x));
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  std::vector<Element> f1;
  for (Element x : pre_v) f1.push_back(position(support, g(x)));
  std::vector<Element> f2;
  for (Element x : pre_w) f2.push_back(position(support, g(x)));

  RangeAmalgam out;
  out.instance = AmalgamationInstance{induced_substructure(amb, gu), induced_substructure(amb, gv),
                                      induced_substructure(amb, gw),
                                      Morphism{MorphismKind::embedding, e1},
                                      Morphism{MorphismKind::embedding, e2}};
  out.amalgam = Amalgam{induced_substructure(amb, support), Morphism{MorphismKind::embedding, f1},
                        Morphism{MorphismKind::embedding, f2}};
  out.support = support;

  const auto& inst = out.instance;
  const auto& am = out.amalgam;
  if (!is_embedding(inst.a1, am.c, am.f1.map))
    throw InvariantViolation("g o alpha^-1 restricted to g[V] is not an embedding");
  if (!is_embedding(inst.a2, am.c, am.f2.map))
    throw InvariantViolation("g o beta^-1 restricted to g[W] is not an embedding");
  for (std::size_t i = 0; i < gu.size(); ++i)
    if (am.f1.map[e1[i]] != am.f2.map[e2[i]])
      throw InvariantViolation("amalgam square does not commute over g[U]");
  return out;
}

}  // namespace relwb
