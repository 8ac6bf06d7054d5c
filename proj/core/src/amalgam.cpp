#include "relwb/amalgam.hpp"

#include <algorithm>
#include <map>

#include "completion.hpp"
#include "relwb/error.hpp"
#include "relwb/parallel.hpp"

namespace relwb {

namespace {

void check_instance(const BoundedClass& c, const AmalgamationInstance& inst) {
  if (!is_embedding(inst.a0, inst.a1, inst.e1.map)) throw InputError("e1 is not an embedding");
  if (!is_embedding(inst.a0, inst.a2, inst.e2.map)) throw InputError("e2 is not an embedding");
  for (const Structure* s : {&inst.a0, &inst.a1, &inst.a2})
    if (!member(c, *s)) throw InputError("instance structure is not in the class");
}

// Partial injections from `from` into `to`, each as a vector aligned with
// `from` (-1 = not identified), ordered by number of identifications and
// then lexicographically.
std::vector<std::vector<Element>> identifications(const std::vector<Element>& from,
                                                  const std::vector<Element>& to, bool most_first) {
  std::vector<std::vector<Element>> out;
  std::vector<Element> cur(from.size(), -1);
  std::vector<char> used(to.size(), 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == from.size()) {
      out.push_back(cur);
      return;
    }
    cur[i] = -1;
    self(self, i + 1);
    for (std::size_t j = 0; j < to.size(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      cur[i] = to[j];
      self(self, i + 1);
      used[j] = 0;
    }
    cur[i] = -1;
  };
  rec(rec, 0);
  auto ids = [](const std::vector<Element>& v) {
    return std::count_if(v.begin(), v.end(), [](Element x) { return x >= 0; });
  };
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    const auto ia = ids(a);
    const auto ib = ids(b);
    if (ia != ib) return most_first ? ia > ib : ia < ib;
    // -1 sorts after identified positions within equal counts
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](Element x, Element y) {
                                          return static_cast<unsigned>(x) < static_cast<unsigned>(y);
                                        });
  });
  return out;
}

}  // namespace

AmalgamResult find_amalgam(const BoundedClass& c, const AmalgamationInstance& inst,
                           const AmalgamOptions& opts) {
  check_instance(c, inst);
  const int n0 = inst.a0.size();
  const int n1 = inst.a1.size();
  const int n2 = inst.a2.size();
  AmalgamResult result;
  result.size_cap = opts.size_cap >= 0 ? opts.size_cap : n1 + n2 - n0 + opts.slack;

  std::vector<Element> base2(static_cast<std::size_t>(n2), -1);
  std::vector<char> in_e1(static_cast<std::size_t>(n1), 0);
  for (Element a = 0; a < n0; ++a) {
    base2[inst.e2.map[a]] = inst.e1.map[a];
    in_e1[inst.e1.map[a]] = 1;
  }
  std::vector<Element> new2;
  for (Element x = 0; x < n2; ++x)
    if (base2[x] < 0) new2.push_back(x);
  std::vector<Element> free1;
  for (Element x = 0; x < n1; ++x)
    if (!in_e1[x]) free1.push_back(x);

  std::vector<Element> all1(static_cast<std::size_t>(n1));
  for (Element x = 0; x < n1; ++x) all1[x] = x;
  const auto& sig = c.signature();

  for (const auto& ident : identifications(new2, free1, opts.prefer_identifications)) {
    std::vector<Element> f2 = base2;
    int size = n1;
    for (std::size_t i = 0; i < new2.size(); ++i) f2[new2[i]] = ident[i] >= 0 ? ident[i] : size++;
    if (size > result.size_cap) continue;
    ++result.quotients_tried;

    detail::PartialStructure p(sig, size);
    p.copy_from(inst.a1, all1);
    bool conflict = false;
    for (std::size_t r = 0; r < sig.size() && !conflict; ++r) {
      const int k = sig[r].arity;
      if (n2 == 0) continue;
      std::vector<Element> idx(static_cast<std::size_t>(k), 0);
      std::vector<Element> t(static_cast<std::size_t>(k), 0);
      while (true) {
        for (int q = 0; q < k; ++q) t[q] = f2[idx[q]];
        const std::int8_t want = inst.a2.holds(r, idx) ? detail::PartialStructure::kIn
                                                        : detail::PartialStructure::kOut;
        const std::int8_t have = p.state(r, t);
        if (have == detail::PartialStructure::kFree) {
          p.set(r, t, want);
        } else if (have != want) {
          conflict = true;
          break;
        }
        int pos = k - 1;
        while (pos >= 0 && ++idx[pos] == n2) idx[pos--] = 0;
        if (pos < 0) break;
      }
    }
    if (conflict) continue;

    std::optional<Structure> found;
    detail::for_each_completion(c.index(), p, n1, [&](const detail::PartialStructure& done) {
      found = done.to_structure();
      return false;
    });
    if (found) {
      Amalgam am{*found, Morphism{MorphismKind::embedding, all1}, Morphism{MorphismKind::embedding, f2}};
      if (!verify_amalgam(c, inst, am)) throw InvariantViolation("amalgam search produced an invalid amalgam");
      result.amalgam = std::move(am);
      return result;
    }
  }
  return result;
}

bool verify_amalgam(const BoundedClass& c, const AmalgamationInstance& inst, const Amalgam& am) {
  if (!is_embedding(inst.a1, am.c, am.f1.map) || !is_embedding(inst.a2, am.c, am.f2.map)) return false;
  for (Element a = 0; a < inst.a0.size(); ++a)
    if (am.f1.map[inst.e1.map[a]] != am.f2.map[inst.e2.map[a]]) return false;
  return member(c, am.c);
}

namespace {

// Embeddings a0 -> a1 that are lexicographically least in their orbit under
// Aut(a1).
std::vector<Morphism> embedding_representatives(const Structure& a0, const Structure& a1) {
  auto all = enumerate_embeddings(a0, a1);
  if (all.size() <= 1) return all;
  auto autos = enumerate_embeddings(a1, a1);
  std::vector<Morphism> out;
  for (auto& e : all) {
    bool least = true;
    std::vector<Element> moved(e.map.size());
    for (const auto& sigma : autos) {
      for (std::size_t i = 0; i < moved.size(); ++i) moved[i] = sigma.map[e.map[i]];
      if (moved < e.map) {
        least = false;
        break;
      }
    }
    if (least) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

ApReport check_ap(const BoundedClass& c, int n, int size_cap, const ApOptions& opts) {
  ApReport report;
  report.n = n;
  report.size_cap = size_cap;
  const auto age = enumerate_age(c, n, AgeOptions{std::max(n, 8), opts.parallel});
  std::vector<Structure> bases;
  if (member(c, Structure(c.signature(), 0))) bases.emplace_back(c.signature(), 0);
  bases.insert(bases.end(), age.begin(), age.end());

  std::vector<AmalgamationInstance> instances;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    const auto& a0 = bases[b];
    std::vector<std::vector<Morphism>> reps(age.size());
    for (std::size_t i = 0; i < age.size(); ++i)
      if (age[i].size() >= a0.size()) reps[i] = embedding_representatives(a0, age[i]);
    for (std::size_t i1 = 0; i1 < age.size(); ++i1)
      for (std::size_t i2 = i1; i2 < age.size(); ++i2)
        for (const auto& e1 : reps[i1])
          for (const auto& e2 : reps[i2])
            instances.push_back(AmalgamationInstance{a0, age[i1], age[i2], e1, e2});
  }

  auto has_amalgam = [&](std::size_t i) {
    AmalgamOptions ao;
    ao.size_cap = size_cap;
    return find_amalgam(c, instances[i], ao).amalgam.has_value();
  };
  std::size_t first_fail = instances.size();
  if (opts.parallel) {
    auto ok = detail::indexed_map(instances.size(), true, has_amalgam);
    for (std::size_t i = 0; i < ok.size(); ++i)
      if (!ok[i]) {
        first_fail = i;
        break;
      }
  } else {
    for (std::size_t i = 0; i < instances.size(); ++i)
      if (!has_amalgam(i)) {
        first_fail = i;
        break;
      }
  }
  if (first_fail < instances.size()) {
    report.holds = false;
    report.failure = instances[first_fail];
    report.instances_checked = first_fail + 1;
  } else {
    report.instances_checked = instances.size();
  }
  return report;
}

}  // namespace relwb
