#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "shrinklab/pair_distribution.hpp"
#include "shrinklab/rng.hpp"

namespace shrinklab::testgen {

// Random Khrapchenko distribution on f: a few unit-distance cut edges with
// random positive integer weights.
inline std::optional<PairDistribution> random_khrapchenko(Rng& rng, const TruthTable& f) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  for (std::uint64_t a = 0; a < f.size(); ++a) {
    if (!f[a]) continue;
    for (int i = 0; i < f.arity(); ++i) {
      const std::uint64_t b = a ^ (std::uint64_t{1} << i);
      if (!f[b]) edges.emplace_back(a, b);
    }
  }
  if (edges.empty()) return std::nullopt;
  std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, long>> chosen;
  long total = 0;
  for (const auto& e : edges) {
    if (uniform_below(rng, 3) == 0) continue;
    const long wt = 1 + static_cast<long>(uniform_below(rng, 5));
    chosen.push_back({e, wt});
    total += wt;
  }
  if (chosen.empty()) {
    chosen.push_back({edges[uniform_below(rng, edges.size())], 1});
    total = 1;
  }
  std::vector<WeightedPair> pairs;
  for (const auto& [e, wt] : chosen) {
    pairs.push_back({word_from_index(e.first, f.arity()), word_from_index(e.second, f.arity()), make_rational(wt, total)});
  }
  return PairDistribution(2, f.arity(), std::move(pairs));
}

// Random distribution over arbitrary pairs of f^-1(1) x f^-1(0).
inline std::optional<PairDistribution> random_pairs(Rng& rng, const TruthTable& f) {
  std::vector<std::uint64_t> ones, zeros;
  for (std::uint64_t x = 0; x < f.size(); ++x) (f[x] ? ones : zeros).push_back(x);
  if (ones.empty() || zeros.empty()) return std::nullopt;
  const int count = 1 + static_cast<int>(uniform_below(rng, 6));
  std::vector<WeightedPair> pairs;
  long total = 0;
  std::vector<long> wts;
  for (int k = 0; k < count; ++k) {
    wts.push_back(1 + static_cast<long>(uniform_below(rng, 4)));
    total += wts.back();
  }
  for (int k = 0; k < count; ++k) {
    pairs.push_back({word_from_index(ones[uniform_below(rng, ones.size())], f.arity()),
                     word_from_index(zeros[uniform_below(rng, zeros.size())], f.arity()),
                     make_rational(wts[static_cast<std::size_t>(k)], total)});
  }
  return PairDistribution(2, f.arity(), std::move(pairs));
}

}  // namespace shrinklab::testgen
