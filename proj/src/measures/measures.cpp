#include "shrinklab/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace shrinklab {

namespace {

Rational ratio(long long num, long long den) {
  return make_rational(static_cast<long>(num), static_cast<long>(den));
}

void check_measure_arity(const TruthTable& f) {
  if (f.arity() > kMeasureMaxArity) {
    throw CapExceeded("exhaustive K/Kmin cover at most " + std::to_string(kMeasureMaxArity) +
                      " variables, got " + std::to_string(f.arity()));
  }
}

// Bipartite unit-distance graph between the two classes, seen from the
// smaller class U so that subsets of U can be enumerated.
struct CutGraph {
  std::vector<std::uint64_t> u, v;
  bool u_is_ones = true;
  std::vector<std::uint32_t> v_nbrs;  // bitmask over U per v
  std::vector<std::uint32_t> u_nbrs;  // bitmask over V per u

  explicit CutGraph(const TruthTable& f) {
    std::vector<std::uint64_t> ones, zeros;
    for (std::uint64_t x = 0; x < f.size(); ++x) (f[x] ? ones : zeros).push_back(x);
    u_is_ones = ones.size() <= zeros.size();
    u = u_is_ones ? ones : zeros;
    v = u_is_ones ? zeros : ones;
    v_nbrs.assign(v.size(), 0);
    u_nbrs.assign(u.size(), 0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (std::popcount(u[i] ^ v[j]) == 1) {
          v_nbrs[j] |= 1u << i;
          u_nbrs[i] |= 1u << j;
        }
      }
    }
  }

  Cut cut(std::uint32_t u_mask, std::uint32_t v_mask) const {
    Cut c;
    std::vector<std::uint64_t> us, vs;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if ((u_mask >> i) & 1u) us.push_back(u[i]);
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
      if ((v_mask >> j) & 1u) vs.push_back(v[j]);
    }
    c.ones = u_is_ones ? us : vs;
    c.zeros = u_is_ones ? vs : us;
    return c;
  }
};

}  // namespace

Rational khrapchenko_K(const TruthTable& f) {
  check_measure_arity(f);
  const CutGraph g(f);
  if (g.u.empty()) return 0;
  // For a fixed side S, the best partner set of size k takes the k largest
  // degrees into S.
  long long best_num = 0, best_den = 1;
  std::vector<int> deg(g.v.size());
  for (std::uint32_t s = 1; s < (1u << g.u.size()); ++s) {
    for (std::size_t j = 0; j < g.v.size(); ++j) deg[j] = std::popcount(g.v_nbrs[j] & s);
    std::sort(deg.begin(), deg.end(), std::greater<>());
    long long edges = 0;
    const long long size_s = std::popcount(s);
    for (std::size_t k = 1; k <= deg.size(); ++k) {
      edges += deg[k - 1];
      const long long num = edges * edges;
      const long long den = size_s * static_cast<long long>(k);
      if (num * best_den > best_num * den) {
        best_num = num;
        best_den = den;
      }
    }
  }
  return ratio(best_num, best_den);
}

KminResult khrapchenko_Kmin_argmax(const TruthTable& f) {
  check_measure_arity(f);
  const CutGraph g(f);
  KminResult best;
  if (g.u.empty()) return best;
  std::uint32_t best_s = 0, best_t = 0;
  std::vector<int> deg(g.v.size());
  for (std::uint32_t s = 1; s < (1u << g.u.size()); ++s) {
    std::set<int> thresholds;
    for (std::size_t j = 0; j < g.v.size(); ++j) {
      deg[j] = std::popcount(g.v_nbrs[j] & s);
      if (deg[j] > 0) thresholds.insert(deg[j]);
    }
    // Any partner set T can be replaced by {v : deg(v) >= min_T deg}
    // without lowering either factor.
    for (int beta : thresholds) {
      std::uint32_t t = 0;
      for (std::size_t j = 0; j < g.v.size(); ++j) {
        if (deg[j] >= beta) t |= 1u << j;
      }
      int min_u = 1 << 30;
      for (std::size_t i = 0; i < g.u.size(); ++i) {
        if ((s >> i) & 1u) min_u = std::min(min_u, std::popcount(g.u_nbrs[i] & t));
      }
      const long value = static_cast<long>(beta) * min_u;
      if (value > best.value) {
        best.value = value;
        best_s = s;
        best_t = t;
      }
    }
  }
  if (best.value > 0) best.cut = g.cut(best_s, best_t);
  return best;
}

long khrapchenko_Kmin(const TruthTable& f) { return khrapchenko_Kmin_argmax(f).value; }

long km_binary(const TruthTable& f) { return khrapchenko_Kmin(f); }

namespace {

// Marginal weight of each a (resp. b) and, per coordinate, the weight of
// pairs that differ there.
FlipFactors flip_factors(const PairDistribution& d) {
  std::map<Word, Rational> mass_a, mass_b;
  std::map<std::pair<Word, int>, Rational> flip_a, flip_b;
  for (const auto& p : d.pairs()) {
    mass_a[p.a] += p.weight;
    mass_b[p.b] += p.weight;
    for (int i = 0; i < d.length(); ++i) {
      if (p.a[static_cast<std::size_t>(i)] != p.b[static_cast<std::size_t>(i)]) {
        flip_a[{p.a, i}] += p.weight;
        flip_b[{p.b, i}] += p.weight;
      }
    }
  }
  auto max_ratio = [](const auto& flips, const auto& mass) {
    Rational best = 0;
    for (const auto& [key, w] : flips) best = std::max(best, Rational(w / mass.at(key.first)));
    return best;
  };
  const Rational pa = max_ratio(flip_a, mass_a);
  const Rational pb = max_ratio(flip_b, mass_b);
  if (pa == 0 || pb == 0) throw std::invalid_argument("distribution has a pair with a == b");
  return {1 / pa, 1 / pb};
}

}  // namespace

FlipFactors khrapchenko_cert(const PairDistribution& d) {
  for (const auto& p : d.pairs()) {
    if (hamming_distance(p.a, p.b) != 1) {
      throw std::invalid_argument("not a Khrapchenko distribution: a pair differs in " +
                                  std::to_string(hamming_distance(p.a, p.b)) + " coordinates");
    }
  }
  return flip_factors(d);
}

Rational khrapchenko_cert_value(const PairDistribution& d) { return khrapchenko_cert(d).value(); }

double khrapchenko_shannon_value(const PairDistribution& d) {
  if (!d.is_khrapchenko()) throw std::invalid_argument("not a Khrapchenko distribution");
  auto coord = [](const WeightedPair& p) {
    for (std::size_t i = 0; i < p.a.size(); ++i) {
      if (p.a[i] != p.b[i]) return static_cast<int>(i);
    }
    return -1;
  };
  auto cond_entropy = [&](bool by_a) {
    std::map<Word, Rational> mass;
    std::map<std::pair<Word, int>, Rational> joint;
    for (const auto& p : d.pairs()) {
      const Word& key = by_a ? p.a : p.b;
      mass[key] += p.weight;
      joint[{key, coord(p)}] += p.weight;
    }
    double h = 0;
    for (const auto& [key, w] : joint) {
      const double pj = w.get_d();
      h -= pj * std::log2(pj / mass.at(key.first).get_d());
    }
    return h;
  };
  return std::exp2(cond_entropy(true) + cond_entropy(false));
}

Rational amb_relation_value(const TruthTable& f, const Relation& r) {
  r.check_consistent(f);
  std::map<std::uint64_t, long long> deg_a, deg_b;
  std::map<std::pair<std::uint64_t, int>, long long> ri_a, ri_b;
  for (const auto& [a, b] : r.pairs()) {
    ++deg_a[a];
    ++deg_b[b];
    for (std::uint64_t diff = a ^ b; diff; diff &= diff - 1) {
      const int i = std::countr_zero(diff);
      ++ri_a[{a, i}];
      ++ri_b[{b, i}];
    }
  }
  auto min_of = [](const auto& m) {
    long long v = -1;
    for (const auto& kv : m) v = v < 0 ? kv.second : std::min(v, kv.second);
    return v;
  };
  auto max_of = [](const auto& m) {
    long long v = 0;
    for (const auto& kv : m) v = std::max(v, kv.second);
    return v;
  };
  return ratio(min_of(deg_a) * min_of(deg_b), max_of(ri_a) * max_of(ri_b));
}

Relation relation_from_sets(const TruthTable& f, const std::vector<std::uint64_t>& ones,
                            const std::vector<std::uint64_t>& zeros) {
  if (ones.empty() || zeros.empty()) throw std::invalid_argument("A and B must be nonempty");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (auto a : ones) {
    if (a >= f.size() || !f[a]) throw std::invalid_argument("A contains an input outside f^-1(1)");
  }
  for (auto b : zeros) {
    if (b >= f.size() || f[b]) throw std::invalid_argument("B contains an input outside f^-1(0)");
  }
  for (auto a : ones) {
    for (auto b : zeros) {
      if (std::popcount(a ^ b) == 1) pairs.emplace_back(a, b);
    }
  }
  if (pairs.empty()) throw std::invalid_argument("A x B contains no unit-distance pair");
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return Relation(f.arity(), std::move(pairs));
}

AmbMax amb_exact_max(const TruthTable& f) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> all;
  for (std::uint64_t a = 0; a < f.size(); ++a) {
    if (!f[a]) continue;
    for (std::uint64_t b = 0; b < f.size(); ++b) {
      if (!f[b]) all.emplace_back(a, b);
    }
  }
  if (all.empty()) throw std::invalid_argument("Amb is undefined for a constant function");
  if (all.size() > 12) {
    throw CapExceeded("exact Amb needs |f^-1(1) x f^-1(0)| <= 12, got " + std::to_string(all.size()));
  }
  std::optional<AmbMax> best;
  for (std::uint32_t mask = 1; mask < (1u << all.size()); ++mask) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::size_t k = 0; k < all.size(); ++k) {
      if ((mask >> k) & 1u) pairs.push_back(all[k]);
    }
    Relation r(f.arity(), std::move(pairs));
    Rational v = amb_relation_value(f, r);
    if (!best || v > best->value) best = AmbMax{v, std::move(r)};
  }
  return *best;
}

FlipFactors am_cert(const PairDistribution& d) {
  if (!d.binary()) throw std::invalid_argument("the soft-adversary certificate needs a binary alphabet");
  return flip_factors(d);
}

Rational am_cert_value(const PairDistribution& d) { return am_cert(d).value(); }

PairDistribution am_from_uniform_relation(const Relation& r) {
  std::vector<std::pair<Word, Word>> support;
  for (const auto& [a, b] : r.pairs()) support.emplace_back(word_from_index(a, r.arity()), word_from_index(b, r.arity()));
  return uniform_pair_distribution(2, r.arity(), support);
}

PairDistribution am_from_khrapchenko(const PairDistribution& d) {
  if (!d.is_khrapchenko()) throw std::invalid_argument("not a Khrapchenko distribution");
  const int c = std::bit_width(static_cast<unsigned>(d.sigma() - 1));
  auto encode = [&](const Word& w) {
    Word out;
    out.reserve(w.size() * static_cast<std::size_t>(c));
    for (auto sym : w) {
      for (int bit = 0; bit < c; ++bit) out.push_back((sym >> bit) & 1u);
    }
    return out;
  };
  std::vector<WeightedPair> pairs;
  for (const auto& p : d.pairs()) pairs.push_back({encode(p.a), encode(p.b), p.weight});
  return PairDistribution(2, d.length() * c, std::move(pairs));
}

Rational wa2_scheme_value(const TruthTable& f, const Relation& r, const WeightScheme& scheme) {
  r.check_consistent(f);
  const int n = r.arity();
  auto describe = [n](std::uint64_t a, std::uint64_t b, int i) {
    std::string s = "(a=";
    for (int k = 0; k < n; ++k) s.push_back(((a >> k) & 1u) ? '1' : '0');
    s += ", b=";
    for (int k = 0; k < n; ++k) s.push_back(((b >> k) & 1u) ? '1' : '0');
    return s + ", i=" + std::to_string(i + 1) + ")";
  };
  std::map<std::uint64_t, Rational> mass_a, mass_b;
  std::map<std::pair<std::uint64_t, int>, Rational> flip_a, flip_b;
  for (const auto& [a, b] : r.pairs()) {
    const auto wi = scheme.w.find({a, b});
    if (wi == scheme.w.end() || wi->second <= 0) {
      throw std::invalid_argument("invalid weighting scheme: missing or non-positive w at " + describe(a, b, -1));
    }
    const Rational& w = wi->second;
    mass_a[a] += w;
    mass_b[b] += w;
    for (std::uint64_t diff = a ^ b; diff; diff &= diff - 1) {
      const int i = std::countr_zero(diff);
      const auto p1 = scheme.w_one_side.find({a, b, i});
      const auto p0 = scheme.w_zero_side.find({a, b, i});
      if (p1 == scheme.w_one_side.end() || p0 == scheme.w_zero_side.end() || p1->second <= 0 ||
          p0->second <= 0) {
        throw std::invalid_argument("invalid weighting scheme: missing or non-positive w' at " + describe(a, b, i));
      }
      if (p1->second * p0->second < w * w) {
        throw std::invalid_argument("invalid weighting scheme: w'(a,b,i) w'(b,a,i) < w(a,b)^2 at " +
                                    describe(a, b, i));
      }
      flip_a[{a, i}] += p1->second;
      flip_b[{b, i}] += p0->second;
    }
  }
  auto min_ratio = [](const auto& mass, const auto& flips) {
    std::optional<Rational> best;
    for (const auto& [key, w] : flips) {
      Rational v = mass.at(key.first) / w;
      if (!best || v < *best) best = v;
    }
    return *best;
  };
  return min_ratio(mass_a, flip_a) * min_ratio(mass_b, flip_b);
}

std::pair<Relation, WeightScheme> wa2_from_am(const PairDistribution& d) {
  if (!d.binary()) throw std::invalid_argument("wa2_from_am needs a binary alphabet");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  WeightScheme s;
  for (const auto& p : d.pairs()) {
    const std::uint64_t a = index_from_word(p.a), b = index_from_word(p.b);
    pairs.emplace_back(a, b);
    s.w[{a, b}] = p.weight;
    for (std::uint64_t diff = a ^ b; diff; diff &= diff - 1) {
      const int i = std::countr_zero(diff);
      s.w_one_side[{a, b, i}] = p.weight;
      s.w_zero_side[{a, b, i}] = p.weight;
    }
  }
  return {Relation(d.length(), std::move(pairs)), std::move(s)};
}

}  // namespace shrinklab
