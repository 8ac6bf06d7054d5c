#include "relwb/structure.hpp"

#include <algorithm>
#include <set>

#include "relwb/error.hpp"

namespace relwb {

namespace {

constexpr std::size_t kDenseLimit = std::size_t{1} << 20;

std::size_t power(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > kDenseLimit) return kDenseLimit + 1;
  }
  return r;
}

void sort_flat(std::vector<Element>& flat, int arity) {
  if (arity <= 0 || flat.empty()) return;
  const auto k = static_cast<std::size_t>(arity);
  const std::size_t count = flat.size() / k;
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(flat.begin() + a * k, flat.begin() + (a + 1) * k,
                                        flat.begin() + b * k, flat.begin() + (b + 1) * k);
  };
  auto equal = [&](std::size_t a, std::size_t b) {
    return std::equal(flat.begin() + a * k, flat.begin() + (a + 1) * k, flat.begin() + b * k);
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<Element> out;
  out.reserve(flat.size());
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0 && equal(order[i], order[i - 1])) continue;
    out.insert(out.end(), flat.begin() + order[i] * k, flat.begin() + (order[i] + 1) * k);
  }
  flat.swap(out);
}

}  // namespace

Signature::Signature(std::vector<RelationSymbol> relations) : relations_(std::move(relations)) {
  std::set<std::string> seen;
  for (const auto& r : relations_) {
    if (r.arity < 1) throw InputError("relation '" + r.name + "' has non-positive arity");
    if (r.name.empty()) throw InputError("relation with empty name");
    if (!seen.insert(r.name).second) throw InputError("duplicate relation symbol '" + r.name + "'");
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Signature::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw InputError("unknown relation symbol '" + std::string(name) + "'");
}

int Signature::max_arity() const noexcept {
  int m = 0;
  for (const auto& r : relations_) m = std::max(m, r.arity);
  return m;
}

Structure::Structure(Signature signature, int size)
    : signature_(std::move(signature)), size_(size), flat_(signature_.size()) {
  if (size < 0) throw InputError("negative structure size");
  index();
}

Structure::Structure(Signature signature, int size, const std::vector<std::vector<Tuple>>& tables)
    : signature_(std::move(signature)), size_(size), flat_(signature_.size()) {
  if (size < 0) throw InputError("negative structure size");
  if (tables.size() != signature_.size())
    throw InputError("table count does not match signature");
  for (std::size_t r = 0; r < tables.size(); ++r) {
    for (const auto& t : tables[r]) {
      if (static_cast<int>(t.size()) != signature_[r].arity)
        throw InputError("tuple of wrong arity for relation '" + signature_[r].name + "'");
      flat_[r].insert(flat_[r].end(), t.begin(), t.end());
    }
  }
  for (std::size_t r = 0; r < flat_.size(); ++r) {
    for (Element e : flat_[r])
      if (e < 0 || e >= size_)
        throw InputError("element " + std::to_string(e) + " outside domain of size " +
                         std::to_string(size_));
    sort_flat(flat_[r], signature_[r].arity);
  }
  index();
}

Structure Structure::from_flat(Signature signature, int size,
                               std::vector<std::vector<Element>> flat_tables) {
  Structure s;
  s.signature_ = std::move(signature);
  s.size_ = size;
  if (size < 0) throw InputError("negative structure size");
  if (flat_tables.size() != s.signature_.size())
    throw InputError("table count does not match signature");
  s.flat_ = std::move(flat_tables);
  for (std::size_t r = 0; r < s.flat_.size(); ++r) {
    if (s.flat_[r].size() % static_cast<std::size_t>(s.signature_[r].arity) != 0)
      throw InputError("flat table length is not a multiple of the arity");
    for (Element e : s.flat_[r])
      if (e < 0 || e >= size)
        throw InputError("element " + std::to_string(e) + " outside domain of size " +
                         std::to_string(size));
    sort_flat(s.flat_[r], s.signature_[r].arity);
  }
  s.index();
  return s;
}

void Structure::index() {
  dense_.assign(signature_.size(), {});
  for (std::size_t r = 0; r < signature_.size(); ++r) {
    const int k = signature_[r].arity;
    const std::size_t cells = power(static_cast<std::size_t>(size_), k);
    if (cells > kDenseLimit) continue;
    auto& bits = dense_[r];
    bits.assign((cells + 63) / 64, 0);
    for (std::size_t i = 0; i < tuple_count(r); ++i) {
      std::size_t code = 0;
      for (Element e : tuple(r, i)) code = code * static_cast<std::size_t>(size_) + e;
      bits[code / 64] |= std::uint64_t{1} << (code % 64);
    }
  }
}

std::vector<Tuple> Structure::tuples(std::size_t rel) const {
  std::vector<Tuple> out;
  out.reserve(tuple_count(rel));
  for (std::size_t i = 0; i < tuple_count(rel); ++i) {
    auto t = tuple(rel, i);
    out.emplace_back(t.begin(), t.end());
  }
  return out;
}

std::size_t Structure::atom_count() const {
  std::size_t n = 0;
  for (std::size_t r = 0; r < signature_.size(); ++r) n += tuple_count(r);
  return n;
}

bool Structure::holds(std::size_t rel, std::span<const Element> t) const {
  const int k = signature_[rel].arity;
  if (static_cast<int>(t.size()) != k) return false;
  for (Element e : t)
    if (e < 0 || e >= size_) return false;
  if (!dense_[rel].empty() || size_ == 0) {
    if (dense_[rel].empty()) return false;
    std::size_t code = 0;
    for (Element e : t) code = code * static_cast<std::size_t>(size_) + e;
    return (dense_[rel][code / 64] >> (code % 64)) & 1U;
  }
  // Binary search over the sorted flat table.
  const auto& flat = flat_[rel];
  std::size_t lo = 0;
  std::size_t hi = tuple_count(rel);
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto m = tuple(rel, mid);
    if (std::lexicographical_compare(m.begin(), m.end(), t.begin(), t.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == tuple_count(rel)) return false;
  return std::equal(t.begin(), t.end(), flat.begin() + lo * static_cast<std::size_t>(k));
}

bool operator==(const Structure& a, const Structure& b) {
  return a.size_ == b.size_ && a.signature_ == b.signature_ && a.flat_ == b.flat_;
}

std::strong_ordering operator<=>(const Structure& a, const Structure& b) {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  if (auto c = a.flat_ <=> b.flat_; c != 0) return c;
  return a.signature_.relations() <=> b.signature_.relations();
}

std::size_t hash_value(const Structure& s) {
  std::size_t h = std::hash<int>{}(s.size()) * 1000003u;
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    h ^= s.tuple_count(r) + 0x9e3779b9u + (h << 6) + (h >> 2);
    for (Element e : s.flat_table(r)) h ^= static_cast<std::size_t>(e) + 0x9e3779b9u + (h << 6) + (h >> 2);
  }
  return h;
}

StructureBuilder::StructureBuilder(Signature signature, int size)
    : signature_(std::move(signature)), size_(size), flat_(signature_.size()) {}

StructureBuilder& StructureBuilder::add(std::size_t rel, std::span<const Element> t) {
  if (rel >= signature_.size()) throw InputError("relation index out of range");
  if (static_cast<int>(t.size()) != signature_[rel].arity)
    throw InputError("tuple of wrong arity for relation '" + signature_[rel].name + "'");
  flat_[rel].insert(flat_[rel].end(), t.begin(), t.end());
  return *this;
}

StructureBuilder& StructureBuilder::add(std::string_view rel, std::initializer_list<Element> t) {
  return add(signature_.index_of(rel), std::span<const Element>(t.begin(), t.size()));
}

StructureBuilder& StructureBuilder::add_symmetric(std::string_view rel, Element a, Element b) {
  add(rel, {a, b});
  return add(rel, {b, a});
}

Structure StructureBuilder::build() const { return Structure::from_flat(signature_, size_, flat_); }

Structure induced_substructure(const Structure& s, std::span<const Element> subset) {
  std::vector<Element> position(static_cast<std::size_t>(s.size()), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const Element e = subset[i];
    if (e < 0 || e >= s.size())
      throw InputError("element " + std::to_string(e) + " outside domain of size " +
                       std::to_string(s.size()));
    if (position[e] != -1) throw InputError("repeated element " + std::to_string(e) + " in subset");
    position[e] = static_cast<Element>(i);
  }
  const auto& sig = s.signature();
  std::vector<std::vector<Element>> flat(sig.size());
  for (std::size_t r = 0; r < sig.size(); ++r) {
    for (std::size_t i = 0; i < s.tuple_count(r); ++i) {
      auto t = s.tuple(r, i);
      bool inside = true;
      for (Element e : t)
        if (position[e] < 0) {
          inside = false;
          break;
        }
      if (!inside) continue;
      for (Element e : t) flat[r].push_back(position[e]);
    }
  }
  return Structure::from_flat(sig, static_cast<int>(subset.size()), std::move(flat));
}

Structure relabel(const Structure& s, std::span<const Element> perm) {
  if (static_cast<int>(perm.size()) != s.size()) throw InputError("relabeling has wrong length");
  const auto& sig = s.signature();
  std::vector<std::vector<Element>> flat(sig.size());
  for (std::size_t r = 0; r < sig.size(); ++r) {
    flat[r].reserve(s.flat_table(r).size());
    for (Element e : s.flat_table(r)) flat[r].push_back(perm[e]);
  }
  return Structure::from_flat(sig, s.size(), std::move(flat));
}

Structure expand_with_complements(const Structure& s) {
  const auto& sig = s.signature();
  std::vector<RelationSymbol> symbols;
  for (const auto& r : sig.relations()) {
    symbols.push_back(r);
    symbols.push_back({"co-" + r.name, r.arity});
  }
  std::vector<std::vector<Element>> flat;
  for (std::size_t r = 0; r < sig.size(); ++r) {
    flat.push_back(s.flat_table(r));
    std::vector<Element> co;
    const int k = sig[r].arity;
    Tuple t(static_cast<std::size_t>(k), 0);
    if (s.size() > 0) {
      while (true) {
        if (!s.holds(r, t)) co.insert(co.end(), t.begin(), t.end());
        int pos = k - 1;
        while (pos >= 0 && ++t[pos] == s.size()) t[pos--] = 0;
        if (pos < 0) break;
      }
    }
    flat.push_back(std::move(co));
  }
  return Structure::from_flat(Signature(std::move(symbols)), s.size(), std::move(flat));
}

}  // namespace relwb
