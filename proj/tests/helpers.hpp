#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "relwb/corpus.hpp"
#include "relwb/structure.hpp"

namespace testing {

inline relwb::Signature graph_sig() { return relwb::Signature{{"E", 2}}; }

inline relwb::Structure named(const char* name) { return *relwb::find_corpus_structure(name); }

inline relwb::Structure random_structure(const relwb::Signature& sig, int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::vector<relwb::Element>> flat(sig.size());
  for (std::size_t r = 0; r < sig.size(); ++r) {
    const int k = sig[r].arity;
    std::vector<relwb::Element> t(static_cast<std::size_t>(k), 0);
    if (n == 0) continue;
    while (true) {
      if (coin(rng)) flat[r].insert(flat[r].end(), t.begin(), t.end());
      int pos = k - 1;
      while (pos >= 0 && ++t[pos] == n) t[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return relwb::Structure::from_flat(sig, n, std::move(flat));
}

inline relwb::Structure random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  relwb::StructureBuilder b(graph_sig(), n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) b.add_symmetric("E", i, j);
  return b.build();
}

inline std::vector<relwb::Element> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<relwb::Element> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace testing
