#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shrinklab/pair_distribution.hpp"
#include "shrinklab/projection.hpp"
#include "shrinklab/rational.hpp"
#include "shrinklab/rng.hpp"

namespace shrinklab {

// Largest number of weighted points an exact distribution may hold.
inline constexpr std::uint64_t kSupportCap = 10'000'000;

// A random projection from x_1..x_n to y_1..y_m, held either as an exact
// weighted support or as a seeded sampler.
class ProjDistribution {
 public:
  using Point = std::pair<Projection, Rational>;
  using Draw = std::function<Projection(Rng&)>;

  // Weights must be positive and sum to 1; duplicate projections merge.
  static ProjDistribution exact(int n, int m, std::vector<Point> points);
  static ProjDistribution sampler(int n, int m, Draw draw, std::string support);

  int source_arity() const { return n_; }
  int target_arity() const { return m_; }
  bool is_exact() const { return !draw_; }
  const std::string& description() const { return description_; }

  // Sorted by projection; throws std::logic_error on a sampler.
  const std::vector<Point>& support() const;
  Rational probability(const Projection& pi) const;

  // Draw number `index` of the stream seeded by `seed`; independent of
  // how draws are scheduled.
  Projection sample(std::uint64_t seed, std::uint64_t index) const;
  Projection sample_with(Rng& rng) const;

 private:
  ProjDistribution() = default;
  int n_ = 0;
  int m_ = 0;
  std::vector<Point> points_;
  std::vector<double> cumulative_;
  Draw draw_;
  std::string description_;
};

// One constraint of the fixing or hiding inequality.
struct ProjViolation {
  Projection pi;
  bool sigma = false;
  int x = 0;  // 1-based source variable
  int y = 0;  // 1-based target variable involved
  Rational lhs;
  Rational rhs;
};

struct ProjVerdict {
  bool holds = true;
  std::optional<ProjViolation> violation;  // first failure, when any
};

struct TightParams {
  // False when some constraint has positive left side and zero
  // right-hand probability; q0 and q1 are then meaningless.
  bool bounded = true;
  Rational q0;
  Rational q1;
  // Constraints attaining q0 and q1 (or the unbounded one).
  std::optional<ProjViolation> witness0;
  std::optional<ProjViolation> witness1;
};

ProjVerdict is_fixing(const ProjDistribution& d, const Rational& q0, const Rational& q1);
ProjVerdict is_hiding(const ProjDistribution& d, const Rational& q0, const Rational& q1);
TightParams tightest_fixing(const ProjDistribution& d);
TightParams tightest_hiding(const ProjDistribution& d);

// Max number of distinct target variables seen at one source position.
int max_targets_per_position(const ProjDistribution& d);

// A random event E independent of the projection: with probability
// `weight`, E is the set of projections accepted by `contains`.
struct RandomEvent {
  std::function<bool(const Projection&)> contains;
  Rational weight;
};
// Largest Pr[p(x_i) in {y_j, ~y_j} | p_{y_j<-sigma} in E] per sigma over
// all i and j, skipping zero-probability conditions.
std::pair<Rational, Rational> generalized_hiding_bound(const ProjDistribution& d,
                                                       const std::vector<RandomEvent>& events);

ProjDistribution join(const ProjDistribution& a, const ProjDistribution& b);
// m independent copies; sampler form when the exact support would exceed
// the cap.
ProjDistribution m_fold(const ProjDistribution& d, int copies);

struct HidingToFixing {
  ProjDistribution result;
  // Pr[rho is the identity]; independent of p by construction.
  Rational identity_probability;
  // Pr[p' = p] overall.
  Rational unchanged_probability;
  // For each support point p: Pr[rho is the identity | p] and
  // Pr[p' = p | p].
  struct PerPoint {
    Projection p;
    Rational identity_given_p;
    Rational unchanged_given_p;
  };
  std::vector<PerPoint> per_point;
};
// Composes each p with an independent rho that keeps y_j with probability
// 1 - 1/2m and fixes it to 0 or 1 with probability 1/4m each.
HidingToFixing hiding_to_fixing(const ProjDistribution& d);

// Binary pair distribution to a projection onto one variable y with
// p_{y<-1} = a and p_{y<-0} = b.
ProjDistribution adversary_to_hiding(const PairDistribution& mu);

struct FilterPredicate {
  std::string name;
  std::function<bool(const Projection&)> accepts;
};

struct ClosureWitness {
  Projection pi;
  int y = 0;
  bool sigma = false;
};
// Checks closure under every y_j <- sigma on the substitution closure of
// the support; returns the first accepted projection whose substitution is
// rejected.
std::optional<ClosureWitness> check_filter_closure(const ProjDistribution& d,
                                                   const FilterPredicate& filter);
ProjDistribution condition_on_filter(const ProjDistribution& d, const FilterPredicate& filter);

// Families. Each is exact when the support fits under the cap and a
// sampler otherwise.
ProjDistribution p_random_restriction(int n, const Rational& p);
ProjDistribution random_edge(int n);
ProjDistribution random_m_alive(int n, int m);
// k blocks of `block` variables (odd); in each block one uniform position
// maps to y_b and the others take a uniform balanced assignment.
ProjDistribution majority_block(int block, int k);

// `projdist <n> <m>`, then per point `w <num>/<den>` and its projection.
std::string format_proj_distribution(const ProjDistribution& d);
ProjDistribution parse_proj_distribution(std::string_view text);

std::string format_violation(const ProjViolation& v);

}  // namespace shrinklab
