#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "shrinklab/pair_distribution.hpp"
#include "shrinklab/rational.hpp"
#include "shrinklab/truth_table.hpp"

namespace shrinklab {

// Exhaustive K and Kmin are limited to this arity.
inline constexpr int kMeasureMaxArity = 4;

struct Cut {
  std::vector<std::uint64_t> ones;   // A ⊆ f^-1(1)
  std::vector<std::uint64_t> zeros;  // B ⊆ f^-1(0)
};

struct KminResult {
  long value = 0;
  Cut cut;  // a maximizing (A, B); empty for constant f
};

// max |E(A,B)|^2 / (|A||B|) over all cuts; 0 for constant f.
Rational khrapchenko_K(const TruthTable& f);
// max of min_{a in A} |E(a,B)| * min_{b in B} |E(A,b)|.
KminResult khrapchenko_Kmin_argmax(const TruthTable& f);
long khrapchenko_Kmin(const TruthTable& f);
// Km over the binary alphabet, which coincides with Kmin.
long km_binary(const TruthTable& f);

// Exact conditional min-entropy factors of a pair distribution:
// one_factor = 1 / max_{a,i} Pr[a_i != b_i | a], likewise for zero inputs.
struct FlipFactors {
  Rational one_factor;
  Rational zero_factor;
  Rational value() const { return one_factor * zero_factor; }
};

// 2^{Hm(i|a)} * 2^{Hm(i|b)} for a distribution over unit-distance pairs.
FlipFactors khrapchenko_cert(const PairDistribution& d);
Rational khrapchenko_cert_value(const PairDistribution& d);
// 2^{H(i|a) + H(i|b)} with Shannon entropies; reported, never asserted.
double khrapchenko_shannon_value(const PairDistribution& d);

Rational amb_relation_value(const TruthTable& f, const Relation& r);
// Unit-distance pairs of A x B; throws if there are none.
Relation relation_from_sets(const TruthTable& f, const std::vector<std::uint64_t>& ones,
                            const std::vector<std::uint64_t>& zeros);

// Maximum of amb_relation_value over every nonempty relation. Refused
// (CapExceeded) when |f^-1(1)| * |f^-1(0)| > 12.
struct AmbMax {
  Rational value;
  Relation relation;
};
AmbMax amb_exact_max(const TruthTable& f);

FlipFactors am_cert(const PairDistribution& d);
Rational am_cert_value(const PairDistribution& d);
PairDistribution am_from_uniform_relation(const Relation& r);
// Re-encodes each symbol as value-1 in bit_width(sigma-1) bits, low bit first.
PairDistribution am_from_khrapchenko(const PairDistribution& d);

// Throws std::invalid_argument naming the first (a, b, i) that breaks
// w'(a,b,i) w'(b,a,i) >= w(a,b)^2 or lacks a weight.
Rational wa2_scheme_value(const TruthTable& f, const Relation& r, const WeightScheme& scheme);
std::pair<Relation, WeightScheme> wa2_from_am(const PairDistribution& d);

}  // namespace shrinklab
