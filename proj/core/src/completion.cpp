#include "completion.hpp"

#include <algorithm>

#include "relwb/error.hpp"

namespace relwb::detail {

PartialStructure::PartialStructure(const Signature& signature, int size)
    : signature_(signature), size_(size), cells_(signature.size()) {
  for (std::size_t r = 0; r < signature.size(); ++r) {
    std::size_t count = 1;
    for (int p = 0; p < signature[r].arity; ++p) count *= static_cast<std::size_t>(size);
    cells_[r].assign(count, kFree);
  }
}

std::vector<Element> PartialStructure::tuple_at(std::size_t rel, std::size_t off) const {
  const int k = signature_[rel].arity;
  std::vector<Element> t(static_cast<std::size_t>(k));
  for (int p = k - 1; p >= 0; --p) {
    t[p] = static_cast<Element>(off % static_cast<std::size_t>(size_));
    off /= static_cast<std::size_t>(size_);
  }
  return t;
}

void PartialStructure::copy_from(const Structure& s, std::span<const Element> elements) {
  const auto m = static_cast<Element>(elements.size());
  std::vector<Element> idx;
  std::vector<Element> t;
  for (std::size_t r = 0; r < signature_.size(); ++r) {
    const int k = signature_[r].arity;
    if (m == 0) continue;
    idx.assign(static_cast<std::size_t>(k), 0);
    t.assign(static_cast<std::size_t>(k), 0);
    while (true) {
      for (int p = 0; p < k; ++p) t[p] = elements[idx[p]];
      set(r, t, s.holds(r, idx) ? kIn : kOut);
      int pos = k - 1;
      while (pos >= 0 && ++idx[pos] == m) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
}

Structure PartialStructure::to_structure() const {
  std::vector<std::vector<Element>> flat(signature_.size());
  for (std::size_t r = 0; r < signature_.size(); ++r)
    for (std::size_t off = 0; off < cells_[r].size(); ++off)
      if (cells_[r][off] == kIn) {
        auto t = tuple_at(r, off);
        flat[r].insert(flat[r].end(), t.begin(), t.end());
      }
  return Structure::from_flat(signature_, size_, std::move(flat));
}

namespace {

struct Group {
  int j;
  int i;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
};

class Completer {
 public:
  Completer(const PatternIndex& index, PartialStructure& p, int first_checked,
            const std::function<bool(const PartialStructure&)>& visit)
      : index_(index), p_(p), visit_(visit) {
    const int n = p.size();
    int j0 = std::clamp(first_checked, 0, n);
    std::vector<std::pair<std::pair<int, int>, std::pair<std::size_t, std::size_t>>> free;
    for (std::size_t r = 0; r < p.signature().size(); ++r)
      for (std::size_t off = 0; off < p.cell_count(r); ++off) {
        if (p.cell(r, off) != PartialStructure::kFree) continue;
        auto t = p.tuple_at(r, off);
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        const int j = t.back();
        const int i = t.size() > 1 ? t[t.size() - 2] : -1;
        j0 = std::min(j0, j);
        free.push_back({{j, i}, {r, off}});
      }
    for (int j = j0; j < n; ++j)
      for (int i = -1; i < j; ++i) groups_.push_back(Group{j, i, {}});
    for (auto& [key, cell] : free) {
      const auto [j, i] = key;
      // Groups for a fixed j are laid out for i = -1, 0, ..., j-1.
      std::size_t g = 0;
      for (int jj = j0; jj < j; ++jj) g += static_cast<std::size_t>(jj + 1);
      groups_[g + static_cast<std::size_t>(i + 1)].cells.push_back(cell);
    }
  }

  bool run() { return step(0); }

 private:
  bool step(std::size_t g) {
    if (g == groups_.size()) return visit_(p_);
    auto& group = groups_[g];
    const std::size_t f = group.cells.size();
    if (f > 40) throw InputError("too many undecided tuples in one completion step");
    const std::uint64_t combos = std::uint64_t{1} << f;
    bool keep_going = true;
    for (std::uint64_t mask = 0; mask < combos && keep_going; ++mask) {
      for (std::size_t c = 0; c < f; ++c)
        p_.cell(group.cells[c].first, group.cells[c].second) =
            (mask >> c) & 1 ? PartialStructure::kIn : PartialStructure::kOut;
      if (clean(group.j, group.i)) keep_going = step(g + 1);
    }
    for (auto [r, off] : group.cells) p_.cell(r, off) = PartialStructure::kFree;
    return keep_going;
  }

  bool violates(std::span<const Element> elements) const {
    auto bits = index_.diagram(elements, [&](std::size_t r, std::span<const Element> t) {
      return p_.state(r, t) == PartialStructure::kIn;
    });
    return index_.forbidden(bits);
  }

  // Tests every subset whose two largest elements are i < j (or {j} alone).
  bool clean(int j, int i) {
    if (i < 0) {
      const Element one[] = {j};
      return !(index_.has_size(1) && violates(one));
    }
    std::vector<Element> subset;
    for (int k = 2; k <= index_.max_size(); ++k) {
      if (!index_.has_size(k) || k - 2 > i) continue;
      // Choose k-2 elements below i.
      std::vector<Element> pick(static_cast<std::size_t>(k - 2));
      for (int q = 0; q < k - 2; ++q) pick[q] = q;
      while (true) {
        subset = pick;
        subset.push_back(i);
        subset.push_back(j);
        if (violates(subset)) return false;
        int q = k - 3;
        while (q >= 0 && pick[q] == i - (k - 2) + q) --q;
        if (q < 0) break;
        ++pick[q];
        for (int z = q + 1; z < k - 2; ++z) pick[z] = pick[z - 1] + 1;
      }
    }
    return true;
  }

  const PatternIndex& index_;
  PartialStructure& p_;
  const std::function<bool(const PartialStructure&)>& visit_;
  std::vector<Group> groups_;
};

}  // namespace

bool for_each_completion(const PatternIndex& index, PartialStructure& p, int first_checked,
                         const std::function<bool(const PartialStructure&)>& visit) {
  Completer c(index, p, first_checked, visit);
  return c.run();
}

}  // namespace relwb::detail
