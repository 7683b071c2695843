#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "shrinklab/pair_distribution.hpp"
#include "shrinklab/rational.hpp"

namespace shrinklab {

// Shannon quantities are doubles; comparisons use this tolerance.
inline constexpr double kEntropyTolerance = 1e-9;

// Distribution over tuples of integer symbols with named coordinates.
class FiniteJointDist {
 public:
  using Outcome = std::vector<std::int64_t>;

  FiniteJointDist(std::vector<std::string> names, std::vector<std::pair<Outcome, Rational>> outcomes);

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::pair<Outcome, Rational>>& outcomes() const { return outcomes_; }
  int index_of(const std::string& name) const;

  // Distribution of the listed coordinates, in the listed order.
  FiniteJointDist marginal(const std::vector<std::string>& vars) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::pair<Outcome, Rational>> outcomes_;
};

double entropy(const FiniteJointDist& d, const std::vector<std::string>& vars);
double cond_entropy(const FiniteJointDist& d, const std::vector<std::string>& target,
                    const std::vector<std::string>& given);
double mutual_information(const FiniteJointDist& d, const std::vector<std::string>& x,
                          const std::vector<std::string>& y);
double cond_mutual_information(const FiniteJointDist& d, const std::vector<std::string>& x,
                               const std::vector<std::string>& y, const std::vector<std::string>& z);

// Hm(target | given) = min log 1/Pr[target | given]; the exact value
// 2^{Hm} = 1/max Pr is kept alongside the float.
struct MinEntropy {
  Rational two_pow;
  double bits;
};
MinEntropy min_entropy_cond(const FiniteJointDist& d, const std::vector<std::string>& target,
                            const std::vector<std::string>& given);

struct InfoCheck {
  double lhs = 0;  // I(x,y; l)
  double rhs = 0;  // I(x; l | y) + I(y; l | x)
  bool holds = true;
};

// Builds the joint distribution of (a, b, leaf) under `d`, where `leaf_of`
// runs a deterministic protocol, and compares external with internal
// information.
InfoCheck info_inequality_check(const std::function<int(const Word&, const Word&)>& leaf_of,
                                const PairDistribution& d);

}  // namespace shrinklab
