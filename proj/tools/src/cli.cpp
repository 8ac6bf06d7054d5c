#include "relwb/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "relwb/amalgam.hpp"
#include "relwb/bounded_class.hpp"
#include "relwb/canonical.hpp"
#include "relwb/corpus.hpp"
#include "relwb/error.hpp"
#include "relwb/morphisms.hpp"
#include "relwb/ramsey.hpp"
#include "relwb/text_format.hpp"

namespace relwb::cli {

namespace {

struct Flags {
  int width = 0;
  int max_size = -1;
  int cap = -1;
  long long budget = -1;
  int colors = 2;
  std::string format = "text";
  bool parallel = false;
  unsigned long long seed = 1;
  int map_size = -1;
  std::string file;
  std::string reduct;
  std::string table;
};

class Report {
 public:
  Report(std::ostream& out, bool machine) : out_(out), machine_(machine) {}

  void kv(const std::string& key, const std::string& value) {
    if (machine_)
      out_ << key << '\t' << value << '\n';
    else
      out_ << key << ": " << value << '\n';
  }
  void kv(const std::string& key, long long value) { kv(key, std::to_string(value)); }
  void flag(const std::string& key, bool value) { kv(key, value ? "yes" : "no"); }

  /// Multi-line certificate in the workbench text format.
  void cert(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!machine_) out_ << "# " << key << '\n';
    while (std::getline(in, line)) {
      if (machine_)
        out_ << key << '\t' << line << '\n';
      else
        out_ << line << '\n';
    }
  }

 private:
  std::ostream& out_;
  bool machine_;
};

std::string join(const std::vector<Element>& v, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

std::string tuple_text(const Tuple& t) { return "(" + join(t, ",") + ")"; }

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("malformed integer list '" + s + "'");
    }
  }
  return out;
}

/// A class reference with the names it brings into scope.
struct ClassRef {
  BoundedClass cls;
  const CorpusEntry* entry = nullptr;
  std::shared_ptr<WorkbenchFile> file;
  std::string name;
};

class Session {
 public:
  Session(const Flags& flags, std::ostream& out) : flags_(flags), report_(out, flags.format == "machine") {}

  Report& report() { return report_; }
  const Flags& flags() const { return flags_; }

  SearchOptions search() const {
    SearchOptions o;
    if (flags_.budget > 0) o.node_budget = static_cast<std::uint64_t>(flags_.budget);
    o.parallel = flags_.parallel;
    return o;
  }

  RamseyOptions ramsey() const {
    RamseyOptions o;
    if (flags_.budget > 0) o.node_budget = static_cast<std::uint64_t>(flags_.budget);
    o.parallel = flags_.parallel;
    return o;
  }

  int max_size(int fallback) const { return flags_.max_size >= 0 ? flags_.max_size : fallback; }
  int cap(int fallback) const { return flags_.cap >= 0 ? flags_.cap : fallback; }

  const WorkbenchFile* extra_file() {
    if (flags_.file.empty()) return nullptr;
    if (!extra_) extra_ = std::make_shared<WorkbenchFile>(load_file(flags_.file));
    return extra_.get();
  }

  ClassRef resolve_class(const std::string& name) {
    ClassRef ref;
    ref.name = name;
    if (std::filesystem::is_regular_file(name)) {
      ref.file = std::make_shared<WorkbenchFile>(load_file(name));
      auto c = ref.file->bounded_class();
      if (!c) throw InputError(name + " declares neither a forbidden block nor a class reference");
      ref.cls = std::move(*c);
      if (ref.file->class_name && !ref.file->has_forbidden_block) ref.entry = &get_class(*ref.file->class_name);
      return ref;
    }
    if (const WorkbenchFile* f = extra_file(); f && f->class_name == name) {
      ref.file = extra_;
      ref.cls = *f->bounded_class();
      if (!f->has_forbidden_block) ref.entry = &get_class(name);
      return ref;
    }
    ref.entry = &get_class(name);
    ref.cls = ref.entry->cls;
    return ref;
  }

  Structure resolve_structure(const std::string& name, const ClassRef* scope = nullptr) {
    if (scope && scope->file)
      if (const Structure* s = scope->file->find_structure(name)) return *s;
    if (const WorkbenchFile* f = extra_file())
      if (const Structure* s = f->find_structure(name)) return *s;
    if (scope && scope->entry)
      for (const auto& s : scope->entry->structures)
        if (s.name == name) return s.structure;
    if (auto s = find_corpus_structure(name)) return *s;
    throw InputError("unknown structure '" + name + "'");
  }

  FragmentMap resolve_map(const std::string& name, const ClassRef& scope) {
    auto from_file = [&](const WorkbenchFile* f) -> std::optional<FragmentMap> {
      if (!f) return std::nullopt;
      if (name.empty() && !f->maps.empty()) return f->maps.front().map;
      if (const NamedFragmentMap* m = f->find_map(name)) return m->map;
      return std::nullopt;
    };
    if (auto m = from_file(scope.file.get())) return *m;
    if (auto m = from_file(extra_file())) return *m;
    if (scope.entry && !scope.entry->maps.empty()) {
      const NamedMap& m = name.empty() ? scope.entry->maps.front() : scope.entry->map(name);
      return m.make(flags_.map_size > 0 ? flags_.map_size : m.default_size);
    }
    throw InputError(name.empty() ? "no fragment map available for " + scope.name
                                  : "unknown map '" + name + "'");
  }

  ReductDefinition resolve_reduct(const ClassRef& scope) {
    const std::string& name = flags_.reduct;
    auto from_file = [&](const WorkbenchFile* f) -> const ReductDefinition* {
      return f && !name.empty() ? f->find_reduct(name) : nullptr;
    };
    if (const auto* r = from_file(scope.file.get())) return *r;
    if (const auto* r = from_file(extra_file())) return *r;
    if (scope.entry) {
      if (!name.empty()) return scope.entry->reduct(name);
      if (!scope.entry->pipeline_reduct.empty()) return scope.entry->reduct(scope.entry->pipeline_reduct);
    }
    if (!name.empty()) throw InputError("unknown reduct '" + name + "'");
    return ReductDefinition::identity(scope.cls.signature());
  }

 private:
  Flags flags_;
  Report report_;
  std::shared_ptr<WorkbenchFile> extra_;
};

void emit_structures(Report& rep, const std::string& prefix, const std::vector<Structure>& v, int n) {
  for (int k = 1; k <= n; ++k)
    rep.kv("count." + std::to_string(k),
           static_cast<long long>(std::count_if(v.begin(), v.end(), [&](const Structure& s) { return s.size() == k; })));
  rep.kv("total", static_cast<long long>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    rep.cert(prefix, serialize_structure(prefix + std::to_string(i + 1), v[i]));
}

void emit_coloring(Report& rep, const Coloring& col) {
  rep.kv("copies", static_cast<long long>(col.copies.size()));
  for (std::size_t i = 0; i < col.copies.size(); ++i)
    rep.kv("color", join(col.copies[i].map) + " -> " + std::to_string(col.assignment[i]));
}

int emit_search(Report& rep, const MorphismResult& r) {
  rep.kv("status", std::string(to_string(r.status)));
  rep.kv("nodes", static_cast<long long>(r.nodes));
  if (r.morphism) rep.kv("map", join(r.morphism->map));
  return r.status == SearchStatus::budget_exceeded ? kExitBudget : kExitOk;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_age(Session& ss, const std::string& cls_name) {
  auto ref = ss.resolve_class(cls_name);
  const int n = ss.max_size(3);
  AgeOptions opts;
  opts.cap = ss.cap(opts.cap);
  opts.parallel = ss.flags().parallel;
  const auto age = enumerate_age(ref.cls, n, opts);
  auto& rep = ss.report();
  rep.kv("class", ref.cls.label());
  rep.kv("max-size", n);
  emit_structures(rep, "A", age, n);
  return kExitOk;
}

int cmd_member(Session& ss, const std::string& cls_name, const std::string& s_name) {
  auto ref = ss.resolve_class(cls_name);
  const Structure s = ss.resolve_structure(s_name, &ref);
  auto& rep = ss.report();
  const bool in = member(ref.cls, s);
  rep.kv("class", ref.cls.label());
  rep.flag("member", in);
  if (!in) {
    const auto& forb = ref.cls.forbidden();
    for (std::size_t i = 0; i < forb.size(); ++i) {
      auto r = find_morphism(forb[i], s, MorphismKind::embedding, ss.search());
      if (r.status == SearchStatus::budget_exceeded) return kExitBudget;
      if (r.morphism) {
        rep.kv("forbidden-index", static_cast<long long>(i + 1));
        rep.kv("embedding", join(r.morphism->map));
        rep.cert("forbidden", serialize_structure("F" + std::to_string(i + 1), forb[i]));
        break;
      }
    }
  }
  return kExitOk;
}

int cmd_morphism(Session& ss, MorphismKind kind, const std::string& s_name, const std::string& t_name) {
  const Structure s = ss.resolve_structure(s_name);
  const Structure t = ss.resolve_structure(t_name);
  ss.report().kv("kind", std::string(to_string(kind)));
  return emit_search(ss.report(), find_morphism(s, t, kind, ss.search()));
}

int cmd_core(Session& ss, const std::string& s_name) {
  const Structure s = ss.resolve_structure(s_name);
  CoreOptions opts;
  opts.search = ss.search();
  const auto r = compute_core(s, opts);
  auto& rep = ss.report();
  rep.kv("size", s.size());
  rep.kv("core-size", r.core.size());
  rep.kv("steps", r.steps);
  rep.kv("kept", join(r.kept));
  rep.kv("retraction", join(r.retraction.map));
  rep.flag("input-is-core", r.core.size() == s.size());
  rep.cert("core", serialize_structure("core", r.core));
  return kExitOk;
}

void emit_instance(Report& rep, const AmalgamationInstance& inst) {
  rep.cert("instance", serialize_structure("A0", inst.a0) + serialize_structure("A1", inst.a1) +
                           serialize_structure("A2", inst.a2));
  rep.kv("e1", join(inst.e1.map));
  rep.kv("e2", join(inst.e2.map));
}

int cmd_ap_check(Session& ss, const std::string& cls_name) {
  auto ref = ss.resolve_class(cls_name);
  const int n = ss.max_size(3);
  const auto r = check_ap(ref.cls, n, ss.cap(2 * n), ApOptions{ss.flags().parallel});
  auto& rep = ss.report();
  rep.kv("class", ref.cls.label());
  rep.kv("n", r.n);
  rep.kv("size-cap", r.size_cap);
  rep.flag("holds", r.holds);
  rep.kv("instances-checked", static_cast<long long>(r.instances_checked));
  if (r.failure) emit_instance(rep, *r.failure);
  return kExitOk;
}

int cmd_amalgam(Session& ss, const std::string& cls_name, const std::vector<std::string>& names) {
  auto ref = ss.resolve_class(cls_name);
  AmalgamationInstance inst;
  inst.a0 = ss.resolve_structure(names.at(0), &ref);
  inst.a1 = ss.resolve_structure(names.at(1), &ref);
  inst.a2 = ss.resolve_structure(names.at(2), &ref);
  auto embed = [&](const Structure& into, const char* which) {
    auto r = find_morphism(inst.a0, into, MorphismKind::embedding, ss.search());
    if (r.status == SearchStatus::budget_exceeded) throw BudgetExceeded("embedding search exhausted its budget");
    if (!r.morphism) throw InputError(std::string("A0 does not embed into ") + which);
    return *r.morphism;
  };
  inst.e1 = embed(inst.a1, "A1");
  inst.e2 = embed(inst.a2, "A2");
  AmalgamOptions opts;
  opts.size_cap = ss.cap(-1);
  const auto r = find_amalgam(ref.cls, inst, opts);
  auto& rep = ss.report();
  rep.kv("e1", join(inst.e1.map));
  rep.kv("e2", join(inst.e2.map));
  rep.kv("size-cap", r.size_cap);
  rep.kv("quotients-tried", static_cast<long long>(r.quotients_tried));
  rep.flag("found", r.amalgam.has_value());
  if (r.amalgam) {
    rep.kv("f1", join(r.amalgam->f1.map));
    rep.kv("f2", join(r.amalgam->f2.map));
    rep.flag("verified", verify_amalgam(ref.cls, inst, *r.amalgam));
    rep.cert("amalgam", serialize_structure("C", r.amalgam->c));
  }
  return kExitOk;
}

int cmd_approximant(Session& ss, const std::string& cls_name) {
  auto ref = ss.resolve_class(cls_name);
  const int k = ss.max_size(2);
  const auto r = build_approximant(ref.cls, k, ss.cap(24));
  auto& rep = ss.report();
  rep.kv("k", r.k);
  rep.kv("budget", r.budget);
  rep.kv("size", r.structure.size());
  rep.flag("complete", r.complete);
  rep.kv("demands-processed", static_cast<long long>(r.demands_processed));
  rep.kv("unrealized", static_cast<long long>(r.unrealized.size()));
  for (const auto& d : r.unrealized) rep.kv("unrealized-base", join(d.base));
  rep.cert("approximant", serialize_structure("H", r.structure));
  return kExitOk;
}

int map_width(Session& ss, const FragmentMap& g) {
  return ss.flags().width > 0 ? ss.flags().width : default_width(g.ambient().signature());
}

void emit_map_header(Report& rep, const FragmentMap& g, int w) {
  rep.kv("width", w);
  rep.kv("fragment-size", g.ambient().size());
  rep.kv("domain-size", static_cast<long long>(g.domain().size()));
}

int cmd_canonical(Session& ss, const std::string& cls_name, const std::string& map_name) {
  auto ref = ss.resolve_class(cls_name);
  const auto g = ss.resolve_map(map_name, ref);
  const int w = map_width(ss, g);
  const auto v = is_canonical(g, w, ss.flags().parallel);
  auto& rep = ss.report();
  emit_map_header(rep, g, w);
  rep.flag("canonical", v.holds);
  if (v.witness) {
    const auto& sig = g.ambient().signature();
    rep.kv("witness", tuple_text(v.witness->first) + " " + tuple_text(v.witness->second));
    rep.kv("witness-type", describe(qf_type(g.ambient(), v.witness->first), sig));
    rep.kv("image-types", describe(qf_type(g.ambient(), *g.apply(v.witness->first)), sig) + " vs " +
                              describe(qf_type(g.ambient(), *g.apply(v.witness->second)), sig));
  }
  return kExitOk;
}

int cmd_range_rigid(Session& ss, const std::string& cls_name, const std::string& map_name) {
  auto ref = ss.resolve_class(cls_name);
  const auto g = ss.resolve_map(map_name, ref);
  const int w = map_width(ss, g);
  const auto v = is_range_rigid(g, w, ss.flags().parallel);
  auto& rep = ss.report();
  emit_map_header(rep, g, w);
  rep.flag("range-rigid", v.holds);
  if (v.witness) {
    rep.kv("witness", tuple_text(*v.witness));
    rep.kv("witness-type", describe(qf_type(g.ambient(), *v.witness), g.ambient().signature()));
  }
  return kExitOk;
}

void emit_type_map(Report& rep, const TypeMap& t, const Signature& sig, const std::string& key) {
  rep.kv(key + "-entries", static_cast<long long>(t.entries.size()));
  for (const auto& [a, b] : t.entries) rep.kv(key, describe(a, sig) + " -> " + describe(b, sig));
}

int cmd_type_map(Session& ss, const std::string& cls_name, const std::string& map_name) {
  auto ref = ss.resolve_class(cls_name);
  const auto g = ss.resolve_map(map_name, ref);
  const int w = map_width(ss, g);
  const auto r = induced_type_map(g, w, ss.flags().parallel);
  auto& rep = ss.report();
  emit_map_header(rep, g, w);
  rep.kv("domain-types", static_cast<long long>(r.domain_types));
  rep.kv("image-types", static_cast<long long>(r.image_types));
  emit_type_map(rep, r.map, g.ambient().signature(), "type");
  return kExitOk;
}

int cmd_idempotent_power(Session& ss, const std::string& cls_name, const std::string& map_name) {
  auto& rep = ss.report();
  if (!ss.flags().table.empty()) {
    const auto f = parse_int_list(ss.flags().table);
    const int n = static_cast<int>(f.size());
    for (int x : f)
      if (x < 0 || x >= n) throw InputError("table entries must lie in 0.." + std::to_string(n - 1));
    const auto [k, p] = idempotent_power(f);
    rep.kv("k", k);
    rep.kv("power", join(p, ","));
    return kExitOk;
  }
  if (cls_name.empty()) throw InputError("idempotent-power needs a class and map, or --table");
  auto ref = ss.resolve_class(cls_name);
  const auto g = ss.resolve_map(map_name, ref);
  const int w = map_width(ss, g);
  const auto t = induced_type_map(g, w, ss.flags().parallel);
  const auto p = idempotent_power(t.map);
  emit_map_header(rep, g, w);
  rep.kv("k", p.k);
  emit_type_map(rep, p.power, g.ambient().signature(), "power");
  return kExitOk;
}

int cmd_induced_class(Session& ss, const std::string& cls_name, const std::string& map_name) {
  auto ref = ss.resolve_class(cls_name);
  const auto g = ss.resolve_map(map_name, ref);
  const int n = ss.max_size(3);
  const auto v = induced_class(g, ref.cls, n, ss.flags().width, ss.flags().parallel);
  auto& rep = ss.report();
  rep.kv("max-size", n);
  emit_structures(rep, "B", v, n);
  return kExitOk;
}

int cmd_bounds_prime(Session& ss, const std::string& cls_name, const std::string& map_name) {
  auto ref = ss.resolve_class(cls_name);
  const auto g = ss.resolve_map(map_name, ref);
  const int m = ss.max_size(3);
  const auto small = induced_class(g, ref.cls, m, ss.flags().width, ss.flags().parallel);
  const auto bp = bound_set_prime(ref.cls, m, small);
  auto& rep = ss.report();
  rep.kv("m", m);
  rep.kv("base-forbidden", static_cast<long long>(ref.cls.forbidden().size()));
  rep.kv("forbidden", static_cast<long long>(bp.forbidden().size()));
  rep.cert("class", serialize_class(bp));
  return kExitOk;
}

struct RamseyArgs {
  Structure h, s, f;
};

RamseyArgs ramsey_args(Session& ss, const std::vector<std::string>& names) {
  return {ss.resolve_structure(names.at(0)), ss.resolve_structure(names.at(1)), ss.resolve_structure(names.at(2))};
}

int cmd_ramsey_check(Session& ss, const std::vector<std::string>& names) {
  const auto a = ramsey_args(ss, names);
  const int r = ss.flags().colors;
  const auto bad = find_bad_coloring(a.h, a.s, a.f, r, ss.ramsey());
  auto& rep = ss.report();
  rep.kv("colors", r);
  rep.flag("witness", !bad.has_value());
  if (bad) emit_coloring(rep, *bad);
  return kExitOk;
}

int cmd_bad_coloring(Session& ss, const std::vector<std::string>& names) {
  const auto a = ramsey_args(ss, names);
  const int r = ss.flags().colors;
  const auto bad = find_bad_coloring(a.h, a.s, a.f, r, ss.ramsey());
  auto& rep = ss.report();
  rep.kv("colors", r);
  rep.flag("found", bad.has_value());
  if (bad) emit_coloring(rep, *bad);
  return kExitOk;
}

int cmd_witness_search(Session& ss, const std::string& cls_name, const std::vector<std::string>& names) {
  auto ref = ss.resolve_class(cls_name);
  const Structure s = ss.resolve_structure(names.at(0), &ref);
  const Structure f = ss.resolve_structure(names.at(1), &ref);
  WitnessSearchOptions opts;
  opts.ramsey = ss.ramsey();
  const int r = ss.flags().colors;
  const auto res = search_witness(ref.cls, s, f, r, ss.max_size(6), opts);
  auto& rep = ss.report();
  rep.kv("colors", r);
  rep.kv("max-size", res.max_n);
  rep.kv("hosts-checked", static_cast<long long>(res.hosts_checked));
  rep.flag("found", res.witness.has_value());
  if (res.witness) {
    rep.kv("witness-size", res.witness->size());
    rep.cert("witness", serialize_structure("W", *res.witness));
  }
  return kExitOk;
}

int cmd_transfer(Session& ss, const std::string& cls_name, const std::string& map_name) {
  auto ref = ss.resolve_class(cls_name);
  if (!ref.entry || !ref.entry->transfer) throw InputError(cls_name + " has no transfer setup");
  const auto& setup = *ref.entry->transfer;
  const auto g = ss.resolve_map(map_name.empty() ? setup.map : map_name, ref);
  const Structure& s = ref.entry->structure(setup.pattern);
  const Structure& f = ref.entry->structure(setup.target);
  const auto rng = g.range();
  const Structure bg = induced_substructure(g.ambient(), rng);
  Morphism f_emb{MorphismKind::embedding, {}};
  for (std::size_t i = 0; i < rng.size(); ++i) f_emb.map.push_back(static_cast<Element>(i));

  const int r = ss.flags().colors;
  std::mt19937_64 gen(ss.flags().seed);
  std::uniform_int_distribution<int> pick(0, r - 1);
  const auto col = make_coloring(s, bg, r, [&](const std::vector<Element>&) { return pick(gen); });
  const auto t = transfer_witness(g, f_emb, setup.host, s, f, col);
  const auto check = find_monochromatic_copy(col, f);

  auto& rep = ss.report();
  rep.kv("seed", std::to_string(ss.flags().seed));
  rep.kv("colors", r);
  rep.kv("range-size", static_cast<long long>(rng.size()));
  rep.kv("host", join(setup.host));
  rep.kv("copy", join(t.copy.map));
  rep.kv("color", t.color);
  rep.kv("host-copy", join(t.host_copy.map));
  rep.flag("range-has-monochromatic-copy", check.has_value());
  emit_coloring(rep, col);
  return kExitOk;
}

int cmd_pipeline(Session& ss, const std::string& cls_name, const std::string& map_name) {
  auto ref = ss.resolve_class(cls_name);
  const auto g = ss.resolve_map(map_name, ref);
  const auto reduct = ss.resolve_reduct(ref);
  PipelineOptions opts;
  opts.width = ss.flags().width;
  opts.parallel = ss.flags().parallel;
  opts.search = ss.search();
  const auto p = core_pipeline(ref.cls, reduct, g, ss.max_size(3), opts);
  auto& rep = ss.report();
  rep.kv("width", p.width);
  rep.kv("fragment-size", p.fragment_size);
  for (const auto& st : p.stages) {
    rep.kv("stage." + st.name, std::string(to_string(st.status)));
    for (const auto& [k, v] : st.facts) rep.kv(st.name + "." + k, v);
  }
  rep.flag("passed", p.passed());
  if (p.a_g) rep.cert("a-g", serialize_structure("A_g", *p.a_g));
  if (p.recoverability_witness) rep.kv("recoverability-witness", join(p.recoverability_witness->map));
  return kExitOk;
}

int cmd_corpus_list(Session& ss) {
  auto& rep = ss.report();
  for (const auto& name : corpus_names()) rep.kv(name, get_class(name).doc);
  for (const auto& s : corpus_structures()) rep.kv("structure", s.name);
  return kExitOk;
}

int cmd_corpus_export(Session& ss, const std::string& name) {
  ss.report().cert(name, serialize_entry(get_class(name)));
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"relwb: finite relational structures workbench"};
  app.name("relwb");
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--width", flags.width, "Tuple width for type computations (default: max arity)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--max-size", flags.max_size, "Size bound n for enumerations and searches")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--cap", flags.cap, "Size cap (amalgams, age cap, approximant budget)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--budget", flags.budget, "Search node budget")->check(CLI::PositiveNumber);
  app.add_option("--colors", flags.colors, "Number of colors")->check(CLI::Range(1, 64));
  app.add_option("--format", flags.format, "Report format")->check(CLI::IsMember({"text", "machine"}));
  app.add_flag("--parallel", flags.parallel, "Use worker threads");
  app.add_option("--seed", flags.seed, "Seed for randomized colorings");
  app.add_option("--map-size", flags.map_size, "Fragment size parameter for corpus maps")
      ->check(CLI::PositiveNumber);
  app.add_option("--file", flags.file, "Workbench file with extra structures, reducts and maps")
      ->check(CLI::ExistingFile);
  app.add_option("--reduct", flags.reduct, "Reduct set name for the pipeline");
  app.add_option("--table", flags.table, "Self-map as a comma list, for idempotent-power");

  std::string cls, a, b;
  std::vector<std::string> names;
  std::function<int(Session&)> action;

  auto with_class = [&](CLI::App* sub) { sub->add_option("class", cls, "Corpus class or workbench file")->required(); };
  auto with_map = [&](CLI::App* sub) {
    with_class(sub);
    sub->add_option("map", a, "Fragment map name (default: the first one)");
  };

  auto* age = app.add_subcommand("age", "Enumerate the age up to --max-size");
  with_class(age);
  age->callback([&] { action = [&](Session& s) { return cmd_age(s, cls); }; });

  auto* mem = app.add_subcommand("member", "Check class membership");
  with_class(mem);
  mem->add_option("structure", a)->required();
  mem->callback([&] { action = [&](Session& s) { return cmd_member(s, cls, a); }; });

  for (auto kind : {MorphismKind::homomorphism, MorphismKind::embedding, MorphismKind::isomorphism}) {
    const char* name = kind == MorphismKind::homomorphism ? "hom" : kind == MorphismKind::embedding ? "emb" : "iso";
    auto* sub = app.add_subcommand(name, std::string("Least ") + std::string(to_string(kind)) + " S -> T");
    sub->add_option("source", a)->required();
    sub->add_option("target", b)->required();
    sub->callback([&, kind] { action = [&, kind](Session& s) { return cmd_morphism(s, kind, a, b); }; });
  }

  auto* core = app.add_subcommand("core", "Compute the core and its retraction");
  core->add_option("structure", a)->required();
  core->callback([&] { action = [&](Session& s) { return cmd_core(s, a); }; });

  auto* ap = app.add_subcommand("ap-check", "Check amalgamation up to --max-size with amalgams up to --cap");
  with_class(ap);
  ap->callback([&] { action = [&](Session& s) { return cmd_ap_check(s, cls); }; });

  auto* am = app.add_subcommand("amalgam", "Amalgamate A1 and A2 over A0 along least embeddings");
  with_class(am);
  am->add_option("structures", names, "A0 A1 A2")->expected(3)->required();
  am->callback([&] { action = [&](Session& s) { return cmd_amalgam(s, cls, names); }; });

  auto* appx = app.add_subcommand("approximant", "Extension-complete approximant at level --max-size, size --cap");
  with_class(appx);
  appx->callback([&] { action = [&](Session& s) { return cmd_approximant(s, cls); }; });

  auto* can = app.add_subcommand("canonical-check", "Check canonicity of a fragment map");
  with_map(can);
  can->callback([&] { action = [&](Session& s) { return cmd_canonical(s, cls, a); }; });

  auto* rr = app.add_subcommand("range-rigid-check", "Check range-rigidity of a fragment map");
  with_map(rr);
  rr->callback([&] { action = [&](Session& s) { return cmd_range_rigid(s, cls, a); }; });

  auto* tm = app.add_subcommand("type-map", "Type map induced by a canonical fragment map");
  with_map(tm);
  tm->callback([&] { action = [&](Session& s) { return cmd_type_map(s, cls, a); }; });

  auto* ip = app.add_subcommand("idempotent-power", "Least idempotent power of a type map or of --table");
  ip->add_option("class", cls, "Corpus class or workbench file");
  ip->add_option("map", a, "Fragment map name");
  ip->callback([&] { action = [&](Session& s) { return cmd_idempotent_power(s, cls, a); }; });

  auto* ic = app.add_subcommand("induced-class", "Structures induced by the range of a map");
  with_map(ic);
  ic->callback([&] { action = [&](Session& s) { return cmd_induced_class(s, cls, a); }; });

  auto* bp = app.add_subcommand("bounds-prime", "Enlarged forbidden list describing the induced class");
  with_map(bp);
  bp->callback([&] { action = [&](Session& s) { return cmd_bounds_prime(s, cls, a); }; });

  auto* rc = app.add_subcommand("ramsey-check", "Is H -> (F)^S_r ?");
  rc->add_option("structures", names, "H S F")->expected(3)->required();
  rc->callback([&] { action = [&](Session& s) { return cmd_ramsey_check(s, names); }; });

  auto* bc = app.add_subcommand("bad-coloring", "Least coloring of S-copies in H with no monochromatic F");
  bc->add_option("structures", names, "H S F")->expected(3)->required();
  bc->callback([&] { action = [&](Session& s) { return cmd_bad_coloring(s, names); }; });

  auto* ws = app.add_subcommand("witness-search", "Smallest Ramsey witness in the age up to --max-size");
  with_class(ws);
  ws->add_option("structures", names, "S F")->expected(2)->required();
  ws->callback([&] { action = [&](Session& s) { return cmd_witness_search(s, cls, names); }; });

  auto* tr = app.add_subcommand("transfer", "Transfer a random coloring of the range back to a host");
  with_map(tr);
  tr->callback([&] { action = [&](Session& s) { return cmd_transfer(s, cls, a); }; });

  auto* pl = app.add_subcommand("pipeline", "Run the six-stage core pipeline");
  with_map(pl);
  pl->callback([&] { action = [&](Session& s) { return cmd_pipeline(s, cls, a); }; });

  auto* corpus = app.add_subcommand("corpus", "Built-in corpus");
  corpus->require_subcommand(1);
  corpus->add_subcommand("list", "List entries and shared structures")->callback([&] {
    action = [&](Session& s) { return cmd_corpus_list(s); };
  });
  auto* exp = corpus->add_subcommand("export", "Print an entry in the workbench text format");
  exp->add_option("name", a)->required();
  exp->callback([&] { action = [&](Session& s) { return cmd_corpus_export(s, a); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Session session(flags, out);
    return action(session);
  } catch (const BudgetExceeded& e) {
    err << "relwb: budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  } catch (const InvariantViolation& e) {
    err << "relwb: invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const ParseError& e) {
    err << "relwb: parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "relwb: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace relwb::cli
