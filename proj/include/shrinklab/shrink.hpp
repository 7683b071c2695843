#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shrinklab/formula.hpp"
#include "shrinklab/proj_distribution.hpp"
#include "shrinklab/rational.hpp"
#include "shrinklab/truth_table.hpp"

namespace shrinklab {

// Largest accepted ratio E[L] / bound in shrinkage-curve rows. Frozen
// from a pilot run; the asymptotic bounds hide their constants.
inline constexpr double kShrinkageRatioThreshold = 10.0;

// Sum over the support of Pr[pi] * L(f|_pi). Throws CapExceeded when some
// restriction keeps more than four essential variables.
Rational expected_L_exact(const TruthTable& f, const ProjDistribution& d);
Rational expected_L_exact(const Formula& phi, const ProjDistribution& d);

struct McEstimate {
  double mean = 0;
  std::optional<double> stderr_of_mean;  // absent for a single trial
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  // Samples whose restriction kept too many variables for the exact
  // oracle; those contribute the simplified formula's size instead.
  std::uint64_t upper_bound_samples = 0;
};

// Trial k draws d.sample(seed, k); the result does not depend on the
// number of threads.
McEstimate expected_L_mc(const Formula& phi, const ProjDistribution& d, std::uint64_t trials,
                         std::uint64_t seed, bool parallel = true);

// Pr[f|_p is a single literal].
Rational prob_single_literal(const TruthTable& f, const ProjDistribution& d);

// lhs <= sqrt(bound_squared), decided exactly as lhs^2 <= bound_squared.
struct SqrtBoundCheck {
  bool defined = true;  // false when the conditioning event has probability 0
  Rational lhs;
  Rational bound_squared;
  bool holds = true;
  double bound() const;
};

// Pr[L(f|_p) = 1] against q*sqrt(L(f)) with q^2 = q0*q1 taken from the
// tightest fixing parameters of d. Throws if d is not fixing.
SqrtBoundCheck single_literal_check(const TruthTable& f, const ProjDistribution& d);

// Pr[L(f2|_{p_{y_j<-sigma}}) = 1 | f1|_p = y_j^tau] against q*sqrt(L(f2)),
// where y^tau = y XOR tau.
SqrtBoundCheck conditional_shrink_check(const TruthTable& f1, const TruthTable& f2,
                                        const ProjDistribution& d, int j, bool sigma, bool tau);

struct ReductionCheck {
  int lhs = 0;
  int rhs = 0;
  bool holds = true;
};

// L(phi|_pi) against the sum over internal gates g of (depth(g)+2) times
// the indicator that the left child restricts to a literal y and the right
// child restricts, after the one-variable rule for g's type, to a literal;
// plus 1 when L(phi|_pi) = 1.
ReductionCheck reduction_bound_check(const Formula& phi, const Projection& pi);

enum class CurveFamily { Restriction, MAlive };
enum class CurveMode { Exact, MonteCarlo };

struct CurveRow {
  int n = 0;
  int s = 0;
  int d = 0;
  std::string param;  // p for restrictions, m for alive-variable projections
  Rational q;
  std::string expected;  // exact num/den, or mean+/-stderr in MC mode
  double expected_value = 0;
  double bound = 0;
  double bound_depth_free = 0;  // same bound with d^2 dropped
  double ratio = 0;
  std::string mode;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
};

struct CurveSpec {
  int parity_t = 2;  // formula is parity_formula(t) on 2^t variables
  CurveFamily family = CurveFamily::Restriction;
  std::vector<Rational> p_grid;  // restriction family
  std::vector<int> m_grid;       // alive-variable family
  CurveMode mode = CurveMode::Exact;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// Restriction rows use q = 2p/(1-p) and the bound q^2 d^2 s + q sqrt(s).
// Alive rows use q = 1/(n-m+1) and m^4 q^2 d^2 s + m^2 q sqrt(s). In
// exact mode q is instead the larger tightest parameter found by the
// checker.
std::vector<CurveRow> shrinkage_curve(const CurveSpec& spec);

std::string curve_csv_header();
std::string format_curve_csv(const std::vector<CurveRow>& rows);

}  // namespace shrinklab
