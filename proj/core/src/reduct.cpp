#include <algorithm>

#include "relwb/error.hpp"
#include "relwb/structure.hpp"

namespace relwb {

ReductDefinition::ReductDefinition(Signature base, std::vector<DefinedRelation> relations)
    : base_(std::move(base)), relations_(std::move(relations)) {
  for (const auto& d : relations_) {
    if (d.arity < 1) throw InputError("defined relation " + d.name + " needs arity >= 1");
    for (const auto& conj : d.formula)
      for (const auto& lit : conj) {
        for (int v : lit.vars)
          if (v < 0 || v >= d.arity)
            throw InputError("variable x" + std::to_string(v) + " out of range in " + d.name);
        const bool atom = lit.kind == Literal::Kind::atom || lit.kind == Literal::Kind::negated_atom;
        if (atom) {
          if (lit.rel >= base_.size()) throw InputError("unknown base relation in " + d.name);
          if (static_cast<int>(lit.vars.size()) != base_[lit.rel].arity)
            throw InputError("arity mismatch for " + base_[lit.rel].name + " in " + d.name);
        } else if (lit.vars.size() != 2) {
          throw InputError("(in)equality literal needs two variables in " + d.name);
        }
      }
  }
  target_signature();  // validates names
}

ReductDefinition ReductDefinition::identity(const Signature& base) {
  std::vector<std::string> names;
  for (const auto& r : base.relations()) names.push_back(r.name);
  return keep(base, names);
}

ReductDefinition ReductDefinition::keep(const Signature& base, const std::vector<std::string>& names) {
  std::vector<DefinedRelation> defs;
  for (const auto& name : names) {
    const std::size_t r = base.index_of(name);
    Literal lit{Literal::Kind::atom, r, {}};
    for (int i = 0; i < base[r].arity; ++i) lit.vars.push_back(i);
    defs.push_back(DefinedRelation{name, base[r].arity, {{lit}}});
  }
  return ReductDefinition(base, std::move(defs));
}

Signature ReductDefinition::target_signature() const {
  std::vector<RelationSymbol> rels;
  for (const auto& d : relations_) rels.push_back(RelationSymbol{d.name, d.arity});
  return Signature(std::move(rels));
}

bool ReductDefinition::satisfies(std::size_t defined, const Structure& s,
                                 std::span<const Element> t) const {
  const auto& d = relations_.at(defined);
  std::vector<Element> args;
  for (const auto& conj : d.formula) {
    bool ok = true;
    for (const auto& lit : conj) {
      switch (lit.kind) {
        case Literal::Kind::atom:
        case Literal::Kind::negated_atom: {
          args.clear();
          for (int v : lit.vars) args.push_back(t[v]);
          ok = s.holds(lit.rel, args) == (lit.kind == Literal::Kind::atom);
          break;
        }
        case Literal::Kind::equal: ok = t[lit.vars[0]] == t[lit.vars[1]]; break;
        case Literal::Kind::not_equal: ok = t[lit.vars[0]] != t[lit.vars[1]]; break;
      }
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

Structure apply_reduct(const ReductDefinition& r, const Structure& s) {
  if (!(r.base() == s.signature())) throw InputError("reduct base signature does not match structure");
  const int n = s.size();
  std::vector<std::vector<Element>> flat(r.relations().size());
  for (std::size_t d = 0; d < r.relations().size(); ++d) {
    const int k = r.relations()[d].arity;
    if (n == 0) continue;
    std::vector<Element> t(static_cast<std::size_t>(k), 0);
    while (true) {
      if (r.satisfies(d, s, t)) flat[d].insert(flat[d].end(), t.begin(), t.end());
      int pos = k - 1;
      while (pos >= 0 && ++t[pos] == n) t[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return Structure::from_flat(r.target_signature(), n, std::move(flat));
}

}  // namespace relwb
