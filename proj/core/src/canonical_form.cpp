#include "relwb/structure.hpp"

#include <algorithm>
#include <numeric>

namespace relwb {

namespace {

using Certificate = std::vector<std::vector<Element>>;

struct Incidence {
  std::size_t rel;
  std::size_t tuple;
  int pos;
};

// Individualisation-refinement search for the lexicographically least
// relabeled table set over all leaves of the refinement tree. Leaves with
// equal certificates yield automorphisms, which prune sibling branches.
class Canonizer {
 public:
  explicit Canonizer(const Structure& s) : s_(s), n_(s.size()), incidences_(static_cast<std::size_t>(n_)) {
    for (std::size_t r = 0; r < s.signature().size(); ++r)
      for (std::size_t i = 0; i < s.tuple_count(r); ++i) {
        auto t = s.tuple(r, i);
        for (std::size_t p = 0; p < t.size(); ++p)
          incidences_[t[p]].push_back({r, i, static_cast<int>(p)});
      }
  }

  CanonicalForm run() {
    if (n_ == 0) return {s_, {}};
    std::vector<Element> path;
    search(refine(std::vector<int>(static_cast<std::size_t>(n_), 0)), path);
    return {relabel(s_, best_perm_), best_perm_};
  }

 private:
  static std::vector<int> densify(const std::vector<long long>& keys) {
    std::vector<long long> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
      out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
    return out;
  }

  std::vector<int> refine(std::vector<int> colors) const {
    int count = *std::max_element(colors.begin(), colors.end()) + 1;
    while (count < n_) {
      std::vector<std::vector<int>> keys(static_cast<std::size_t>(n_));
      for (int v = 0; v < n_; ++v) {
        std::vector<std::vector<int>> parts;
        parts.reserve(incidences_[v].size());
        for (const auto& inc : incidences_[v]) {
          std::vector<int> part{static_cast<int>(inc.rel), inc.pos};
          for (Element e : s_.tuple(inc.rel, inc.tuple)) part.push_back(colors[e]);
          parts.push_back(std::move(part));
        }
        std::sort(parts.begin(), parts.end());
        auto& key = keys[v];
        key.push_back(colors[v]);
        for (auto& part : parts) key.insert(key.end(), part.begin(), part.end());
      }
      std::vector<std::vector<int>> distinct = keys;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      const int next = static_cast<int>(distinct.size());
      if (next == count) break;
      for (int v = 0; v < n_; ++v)
        colors[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), keys[v]) -
                                     distinct.begin());
      count = next;
    }
    return colors;
  }

  Certificate certificate(const std::vector<int>& perm) const {
    Certificate cert(s_.signature().size());
    for (std::size_t r = 0; r < cert.size(); ++r) {
      const int k = s_.signature()[r].arity;
      std::vector<std::vector<Element>> tuples;
      for (std::size_t i = 0; i < s_.tuple_count(r); ++i) {
        std::vector<Element> t;
        for (Element e : s_.tuple(r, i)) t.push_back(perm[e]);
        tuples.push_back(std::move(t));
      }
      std::sort(tuples.begin(), tuples.end());
      cert[r].reserve(tuples.size() * static_cast<std::size_t>(k));
      for (auto& t : tuples) cert[r].insert(cert[r].end(), t.begin(), t.end());
    }
    return cert;
  }

  void leaf(const std::vector<int>& colors) {
    Certificate cert = certificate(colors);
    if (!have_best_ || cert < best_cert_) {
      have_best_ = true;
      best_cert_ = std::move(cert);
      best_perm_ = colors;
      return;
    }
    if (cert == best_cert_) {
      std::vector<Element> inverse(static_cast<std::size_t>(n_));
      for (int v = 0; v < n_; ++v) inverse[best_perm_[v]] = v;
      std::vector<Element> aut(static_cast<std::size_t>(n_));
      for (int v = 0; v < n_; ++v) aut[v] = inverse[colors[v]];
      automorphisms_.push_back(std::move(aut));
    }
  }

  // Orbit representative of v under the automorphisms found so far that fix
  // every element of `path`.
  std::vector<int> orbits(const std::vector<Element>& path) const {
    std::vector<int> parent(static_cast<std::size_t>(n_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& aut : automorphisms_) {
      bool fixes = std::all_of(path.begin(), path.end(), [&](Element p) { return aut[p] == p; });
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        int a = find(v);
        int b = find(aut[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (int v = 0; v < n_; ++v) parent[v] = find(v);
    return parent;
  }

  void search(const std::vector<int>& colors, std::vector<Element>& path) {
    std::vector<int> cell_size(static_cast<std::size_t>(n_), 0);
    for (int c : colors) ++cell_size[c];
    int target = -1;
    for (int c = 0; c < n_; ++c)
      if (cell_size[c] > 1) {
        target = c;
        break;
      }
    if (target < 0) {
      leaf(colors);
      return;
    }
    std::vector<Element> explored;
    for (int v = 0; v < n_; ++v) {
      if (colors[v] != target) continue;
      if (!explored.empty()) {
        auto orbit = orbits(path);
        bool seen = std::any_of(explored.begin(), explored.end(),
                                [&](Element u) { return orbit[u] == orbit[v]; });
        if (seen) continue;
      }
      explored.push_back(v);
      std::vector<long long> keys(static_cast<std::size_t>(n_));
      for (int x = 0; x < n_; ++x)
        keys[x] = 2LL * colors[x] + ((colors[x] == target && x != v) ? 1 : 0);
      path.push_back(v);
      search(refine(densify(keys)), path);
      path.pop_back();
    }
  }

  const Structure& s_;
  int n_;
  std::vector<std::vector<Incidence>> incidences_;
  bool have_best_ = false;
  Certificate best_cert_;
  std::vector<Element> best_perm_;
  std::vector<std::vector<Element>> automorphisms_;
};

constexpr std::size_t kExhaustiveKeyLimit = 5;

}  // namespace

CanonicalForm canonical_form(const Structure& s) { return Canonizer(s).run(); }

std::string small_canonical_key(
    const Signature& signature, std::span<const Element> elements,
    const std::function<bool(std::size_t, std::span<const Element>)>& holds) {
  const std::size_t m = elements.size();
  std::string key = std::to_string(m) + "|";
  if (m <= kExhaustiveKeyLimit) {
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    std::string bits;
    std::vector<Element> idx;
    std::vector<Element> t;
    do {
      bits.clear();
      for (std::size_t r = 0; r < signature.size(); ++r) {
        const int k = signature[r].arity;
        idx.assign(static_cast<std::size_t>(k), 0);
        t.assign(static_cast<std::size_t>(k), 0);
        if (m == 0) continue;
        while (true) {
          for (int p = 0; p < k; ++p) t[p] = elements[perm[idx[p]]];
          bits.push_back(holds(r, t) ? '1' : '0');
          int pos = k - 1;
          while (pos >= 0 && ++idx[pos] == static_cast<Element>(m)) idx[pos--] = 0;
          if (pos < 0) break;
        }
      }
      if (best.empty() || bits < best) best = bits;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return key + best;
  }
  // Larger sets: materialise and canonise.
  std::vector<std::vector<Element>> flat(signature.size());
  for (std::size_t r = 0; r < signature.size(); ++r) {
    const int k = signature[r].arity;
    std::vector<Element> idx(static_cast<std::size_t>(k), 0);
    std::vector<Element> t(static_cast<std::size_t>(k), 0);
    while (true) {
      for (int p = 0; p < k; ++p) t[p] = elements[idx[p]];
      if (holds(r, t)) flat[r].insert(flat[r].end(), idx.begin(), idx.end());
      int pos = k - 1;
      while (pos >= 0 && ++idx[pos] == static_cast<Element>(m)) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  auto cf = canonical_form(Structure::from_flat(signature, static_cast<int>(m), std::move(flat)));
  for (std::size_t r = 0; r < signature.size(); ++r) {
    key += ";";
    for (Element e : cf.structure.flat_table(r)) key += std::to_string(e) + ",";
  }
  return key;
}

std::string small_canonical_key(const Structure& s) {
  std::vector<Element> all(static_cast<std::size_t>(s.size()));
  std::iota(all.begin(), all.end(), 0);
  return small_canonical_key(s.signature(), all,
                             [&](std::size_t r, std::span<const Element> t) { return s.holds(r, t); });
}

}  // namespace relwb
