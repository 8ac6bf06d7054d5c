#include "relwb/structure.hpp"

#include <sstream>

#include "relwb/error.hpp"

namespace relwb {

QfType qf_type(const Structure& s, std::span<const Element> tuple) {
  for (Element e : tuple)
    if (e < 0 || e >= s.size())
      throw InputError("element " + std::to_string(e) + " outside domain of size " +
                       std::to_string(s.size()));
  const int k = static_cast<int>(tuple.size());
  QfType type;
  type.eq_pattern.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    int j = 0;
    while (tuple[j] != tuple[i]) ++j;
    type.eq_pattern[i] = j;
  }
  if (k == 0) return type;
  const auto& sig = s.signature();
  for (std::size_t r = 0; r < sig.size(); ++r) {
    const int arity = sig[r].arity;
    Tuple idx(static_cast<std::size_t>(arity), 0);
    Tuple elems(static_cast<std::size_t>(arity), 0);
    while (true) {
      for (int p = 0; p < arity; ++p) elems[p] = tuple[idx[p]];
      if (s.holds(r, elems)) type.diagram.push_back({r, idx});
      int pos = arity - 1;
      while (pos >= 0 && ++idx[pos] == k) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return type;
}

std::string describe(const QfType& type, const Signature& signature) {
  std::ostringstream out;
  out << "(";
  for (int i = 0; i < type.width(); ++i) out << (i ? "," : "") << "x" << i;
  out << ")[";
  bool first = true;
  for (int i = 0; i < type.width(); ++i) {
    if (type.eq_pattern[i] != i) {
      out << (first ? "" : " ") << "x" << type.eq_pattern[i] << "=x" << i;
      first = false;
    }
  }
  for (const auto& atom : type.diagram) {
    // Only atoms over class representatives; the rest follow.
    bool representative = true;
    for (int v : atom.indices)
      if (type.eq_pattern[v] != v) representative = false;
    if (!representative) continue;
    out << (first ? "" : " ") << signature[atom.rel].name << "(";
    for (std::size_t p = 0; p < atom.indices.size(); ++p)
      out << (p ? "," : "") << "x" << atom.indices[p];
    out << ")";
    first = false;
  }
  out << "]";
  return out.str();
}

}  // namespace relwb
