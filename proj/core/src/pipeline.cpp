#include <algorithm>

#include "relwb/canonical.hpp"
#include "relwb/error.hpp"

namespace relwb {

std::string_view to_string(PipelineStage::Status s) {
  switch (s) {
    case PipelineStage::Status::passed: return "passed";
    case PipelineStage::Status::failed: return "failed";
    case PipelineStage::Status::skipped: return "skipped";
  }
  return "?";
}

bool PipelineReport::passed() const {
  return !stages.empty() && std::all_of(stages.begin(), stages.end(), [](const PipelineStage& s) {
    return s.status == PipelineStage::Status::passed;
  });
}

namespace {

std::string tuple_text(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::to_string(t[i]);
  return out + ")";
}

std::string map_text(const std::vector<Element>& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? " " : "") + std::to_string(m[i]);
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string counts_by_size(const std::vector<Structure>& v, int n) {
  std::vector<int> c(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& s : v)
    if (s.size() <= n) ++c[s.size()];
  std::string out;
  for (int k = 1; k <= n; ++k) out += (k > 1 ? " " : "") + std::to_string(c[k]);
  return out;
}

}  // namespace

PipelineReport core_pipeline(const BoundedClass& base, const ReductDefinition& r, const FragmentMap& g,
                             int n, const PipelineOptions& opts) {
  if (!(g.ambient().signature() == base.signature())) throw InputError("map ambient has another signature");
  if (!(r.base() == base.signature())) throw InputError("reduct is over another signature");
  if (n < 1) throw InputError("pipeline size bound must be at least 1");

  PipelineReport rep;
  rep.width = opts.width > 0 ? opts.width : default_width(base.signature());
  rep.fragment_size = g.ambient().size();
  const int w = rep.width;
  const char* names[] = {"canonicity", "idempotent-power", "induced-class",
                         "bounds-prime", "reduct-core", "hom-equivalence"};
  for (const char* name : names) rep.stages.push_back(PipelineStage{name, PipelineStage::Status::skipped, {}});
  auto fail = [&](std::size_t i, std::string key, std::string value) {
    rep.stages[i].status = PipelineStage::Status::failed;
    rep.stages[i].facts.emplace_back(std::move(key), std::move(value));
    return rep;
  };

  // 1. canonicity and range-rigidity of g
  {
    auto& st = rep.stages[0];
    rep.canonical = is_canonical(g, w, opts.parallel);
    rep.range_rigid = is_range_rigid(g, w, opts.parallel);
    st.facts.emplace_back("domain-size", std::to_string(g.domain().size()));
    st.facts.emplace_back("canonical", yes_no(rep.canonical->holds));
    if (rep.canonical->witness)
      st.facts.emplace_back("canonical-witness", tuple_text(rep.canonical->witness->first) + " " +
                                                     tuple_text(rep.canonical->witness->second));
    st.facts.emplace_back("range-rigid", yes_no(rep.range_rigid->holds));
    if (rep.range_rigid->witness) st.facts.emplace_back("range-rigid-witness", tuple_text(*rep.range_rigid->witness));
    if (!rep.canonical->holds) return fail(0, "reason", "map is not canonical");
    st.status = PipelineStage::Status::passed;
  }

  // 2. idempotent power of the type map
  FragmentMap gk;
  {
    auto& st = rep.stages[1];
    rep.type_map = induced_type_map(g, w, opts.parallel);
    st.facts.emplace_back("domain-types", std::to_string(rep.type_map->domain_types));
    st.facts.emplace_back("image-types", std::to_string(rep.type_map->image_types));
    IdempotentPower ip;
    try {
      ip = idempotent_power(rep.type_map->map);
    } catch (const InputError& e) {
      return fail(1, "reason", e.what());
    }
    rep.power = ip.k;
    gk = g.power(ip.k);
    rep.powered = gk;
    st.facts.emplace_back("power", std::to_string(ip.k));
    st.facts.emplace_back("powered-domain-size", std::to_string(gk.domain().size()));
    st.facts.emplace_back("powered-map", map_text(gk.table()));
    if (gk.domain().empty()) return fail(1, "reason", "powered map has an empty domain on this fragment");
    const auto rr = is_range_rigid(gk, w, opts.parallel);
    st.facts.emplace_back("powered-range-rigid", yes_no(rr.holds));
    if (!rr.holds) return fail(1, "reason", "powered map is not range-rigid: " + tuple_text(*rr.witness));
    st.status = PipelineStage::Status::passed;
  }

  // 3. the class induced by the range
  {
    auto& st = rep.stages[2];
    try {
      rep.induced_age = induced_class(gk, base, n, w, opts.parallel);
    } catch (const InputError& e) {
      return fail(2, "reason", e.what());
    }
    st.facts.emplace_back("max-size", std::to_string(n));
    st.facts.emplace_back("counts-by-size", counts_by_size(rep.induced_age, n));
    st.status = PipelineStage::Status::passed;
  }

  // 4. enlarged bound set, regenerating the induced class
  {
    auto& st = rep.stages[3];
    const int m = std::max(1, base.signature().max_arity());
    std::vector<Structure> small;
    for (const auto& s : rep.induced_age)
      if (s.size() <= m) small.push_back(s);
    rep.bounds_prime = bound_set_prime(base, m, small);
    const auto added = rep.bounds_prime->forbidden().size() - base.forbidden().size();
    st.facts.emplace_back("m", std::to_string(m));
    st.facts.emplace_back("bounds-added", std::to_string(added));
    const auto regenerated = enumerate_age(*rep.bounds_prime, n, AgeOptions{std::max(n, 8), opts.parallel});
    st.facts.emplace_back("regenerated-counts-by-size", counts_by_size(regenerated, n));
    const bool same = regenerated == rep.induced_age;
    st.facts.emplace_back("regenerates-induced-class", yes_no(same));
    if (!same) return fail(3, "reason", "age of the enlarged bound set differs from the induced class");
    st.status = PipelineStage::Status::passed;
  }

  // 5. A_g: core verdict and recoverability must agree
  {
    auto& st = rep.stages[4];
    rep.a_g = restrict_reduct(r, g.ambient(), gk);
    rep.a_g_is_core = is_core(*rep.a_g, opts.search);
    const auto rec = recoverability_check(*rep.a_g, opts.search);
    rep.a_g_recoverable = rec.holds;
    rep.recoverability_witness = rec.witness;
    st.facts.emplace_back("size", std::to_string(rep.a_g->size()));
    st.facts.emplace_back("is-core", yes_no(*rep.a_g_is_core));
    st.facts.emplace_back("recoverable", yes_no(rec.holds));
    st.facts.emplace_back("endomorphisms-checked", std::to_string(rec.endomorphisms_checked));
    if (rec.witness) st.facts.emplace_back("recoverability-witness", map_text(rec.witness->map));
    if (*rep.a_g_is_core != rec.holds) return fail(4, "reason", "core verdict and recoverability disagree");
    st.status = PipelineStage::Status::passed;
  }

  // 6. the reduct on dom(g^k) and A_g are homomorphically equivalent
  {
    auto& st = rep.stages[5];
    rep.a_fragment = induced_substructure(apply_reduct(r, g.ambient()), gk.domain());
    const bool eq = homomorphically_equivalent(*rep.a_fragment, *rep.a_g, opts.search);
    st.facts.emplace_back("fragment-size", std::to_string(rep.a_fragment->size()));
    st.facts.emplace_back("equivalent", yes_no(eq));
    if (!eq) return fail(5, "reason", "reduct fragment and A_g are not homomorphically equivalent");
    st.status = PipelineStage::Status::passed;
  }
  return rep;
}

}  // namespace relwb
