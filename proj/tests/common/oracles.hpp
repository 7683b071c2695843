#pragma once

// Independent reference computations used only to cross-check the library.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "shrinklab/truth_table.hpp"

namespace shrinklab::oracle {

// Min formula size and depth by plain relaxation over all pairs until
// nothing changes. Quadratic per sweep, so only for arity <= 3.
struct Fixpoint {
  std::vector<int> size;
  std::vector<int> depth;
};

inline Fixpoint relaxation_sizes(int m) {
  const std::uint32_t count = 1u << (1u << m);
  const int inf = 1 << 20;
  Fixpoint fp{std::vector<int>(count, inf), std::vector<int>(count, inf)};
  fp.size[0] = fp.size[count - 1] = 0;
  fp.depth[0] = fp.depth[count - 1] = 0;
  for (int v = 1; v <= m; ++v) {
    for (bool neg : {false, true}) {
      const auto t = static_cast<std::uint32_t>(TruthTable::literal(m, v, neg).low_word());
      fp.size[t] = 1;
      fp.depth[t] = 0;
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t f = 0; f < count; ++f) {
      if (fp.size[f] == inf) continue;
      for (std::uint32_t g = 0; g < count; ++g) {
        if (fp.size[g] == inf) continue;
        const int s = fp.size[f] + fp.size[g];
        const int d = std::max(fp.depth[f], fp.depth[g]) + 1;
        for (std::uint32_t h : {f & g, f | g}) {
          if (s < fp.size[h]) {
            fp.size[h] = s;
            changed = true;
          }
          if (d < fp.depth[h]) {
            fp.depth[h] = d;
            changed = true;
          }
        }
      }
    }
  }
  return fp;
}

// Every function (as a table value) computable by some formula with at
// most `leaves` leaves over m variables, by explicit tree enumeration.
inline std::set<std::uint32_t> functions_up_to_size(int m, int leaves) {
  std::vector<std::set<std::uint32_t>> exact(static_cast<std::size_t>(leaves) + 1);
  for (int v = 1; v <= m; ++v) {
    for (bool neg : {false, true}) {
      exact[1].insert(static_cast<std::uint32_t>(TruthTable::literal(m, v, neg).low_word()));
    }
  }
  for (int k = 2; k <= leaves; ++k) {
    for (int a = 1; a < k; ++a) {
      for (std::uint32_t f : exact[static_cast<std::size_t>(a)]) {
        for (std::uint32_t g : exact[static_cast<std::size_t>(k - a)]) {
          exact[static_cast<std::size_t>(k)].insert(f & g);
          exact[static_cast<std::size_t>(k)].insert(f | g);
        }
      }
    }
  }
  std::set<std::uint32_t> all;
  for (const auto& s : exact) all.insert(s.begin(), s.end());
  return all;
}

}  // namespace shrinklab::oracle

namespace shrinklab::oracle {

// K and Kmin by enumerating every pair of nonempty subsets (A, B).
struct CutValues {
  long k_num = 0, k_den = 1;  // K as a fraction
  long kmin = 0;
};

inline CutValues brute_force_cuts(const TruthTable& f) {
  std::vector<std::uint64_t> ones, zeros;
  for (std::uint64_t x = 0; x < f.size(); ++x) (f[x] ? ones : zeros).push_back(x);
  CutValues best;
  if (ones.empty() || zeros.empty()) return best;
  for (std::uint64_t am = 1; am < (std::uint64_t{1} << ones.size()); ++am) {
    for (std::uint64_t bm = 1; bm < (std::uint64_t{1} << zeros.size()); ++bm) {
      std::int64_t edges = 0;
      std::int64_t min_a = 1 << 30, min_b = 1 << 30;
      std::vector<std::int64_t> deg_b(zeros.size(), 0);
      std::int64_t na = 0, nb = 0;
      for (std::size_t i = 0; i < ones.size(); ++i) {
        if (!((am >> i) & 1u)) continue;
        ++na;
        std::int64_t d = 0;
        for (std::size_t j = 0; j < zeros.size(); ++j) {
          if (((bm >> j) & 1u) && __builtin_popcountll(ones[i] ^ zeros[j]) == 1) {
            ++d;
            ++deg_b[j];
          }
        }
        edges += d;
        min_a = std::min(min_a, d);
      }
      for (std::size_t j = 0; j < zeros.size(); ++j) {
        if ((bm >> j) & 1u) {
          ++nb;
          min_b = std::min(min_b, deg_b[j]);
        }
      }
      if (edges * edges * best.k_den > best.k_num * na * nb) {
        best.k_num = edges * edges;
        best.k_den = na * nb;
      }
      best.kmin = std::max(best.kmin, min_a * min_b);
    }
  }
  return best;
}

}  // namespace shrinklab::oracle
