#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "shrinklab/proj_distribution.hpp"

namespace shrinklab {

namespace {

// One inequality lhs <= q_sigma * scale, where scale is Pr[p = pi] for
// fixing and 1 for hiding (lhs is then already conditional).
struct Constraint {
  Projection pi;
  bool sigma;
  int x;
  int y;
  Rational lhs;
  Rational scale;
};

const std::vector<ProjDistribution::Point>& exact_support(const ProjDistribution& d) {
  if (!d.is_exact()) {
    throw std::invalid_argument("exact check refused for sampler distribution: " + d.description());
  }
  return d.support();
}

// Ordered by (pi, sigma, x).
std::vector<Constraint> fixing_constraints(const ProjDistribution& d) {
  std::map<std::tuple<Projection, bool, int>, std::pair<int, Rational>> lhs;
  for (const auto& [p, w] : exact_support(d)) {
    for (int i = 1; i <= p.source_arity(); ++i) {
      const Image& im = p(i);
      if (!im.is_literal()) continue;
      for (bool sigma : {false, true}) {
        auto& slot = lhs[{substitute(p, im.var(), sigma), sigma, i}];
        slot.first = im.var();
        slot.second += w;
      }
    }
  }
  std::vector<Constraint> out;
  out.reserve(lhs.size());
  for (auto& [key, val] : lhs) {
    const auto& [pi, sigma, i] = key;
    out.push_back({pi, sigma, i, val.first, val.second, d.probability(pi)});
  }
  return out;
}

// Ordered by (y, sigma, pi, x). Conditions of probability zero never
// appear because every key comes from a support point.
std::vector<Constraint> hiding_constraints(const ProjDistribution& d) {
  std::map<std::tuple<int, bool, Projection>, Rational> cond;
  std::map<std::tuple<int, bool, Projection, int>, Rational> joint;
  for (const auto& [p, w] : exact_support(d)) {
    for (int j = 1; j <= d.target_arity(); ++j) {
      for (bool sigma : {false, true}) {
        Projection pi = substitute(p, j, sigma);
        for (int i = 1; i <= p.source_arity(); ++i) {
          if (p(i).is_literal() && p(i).var() == j) joint[{j, sigma, pi, i}] += w;
        }
        cond[{j, sigma, std::move(pi)}] += w;
      }
    }
  }
  std::vector<Constraint> out;
  out.reserve(joint.size());
  for (auto& [key, w] : joint) {
    const auto& [j, sigma, pi, i] = key;
    out.push_back({pi, sigma, i, j, w / cond.at({j, sigma, pi}), Rational(1)});
  }
  return out;
}

ProjViolation to_violation(const Constraint& c, const Rational& rhs) {
  return {c.pi, c.sigma, c.x, c.y, c.lhs, rhs};
}

// Lowest index k with bad(k); the scan runs in parallel but the answer
// does not depend on scheduling.
template <class Bad>
std::size_t first_failure(std::size_t count, Bad bad) {
  std::size_t first = count;
#pragma omp parallel for reduction(min : first) schedule(static)
  for (long k = 0; k < static_cast<long>(count); ++k) {
    if (bad(static_cast<std::size_t>(k))) first = std::min(first, static_cast<std::size_t>(k));
  }
  return first;
}

ProjVerdict verify(const std::vector<Constraint>& cs, const Rational& q0, const Rational& q1) {
  const auto k = first_failure(cs.size(), [&](std::size_t i) {
    const auto& c = cs[i];
    return c.lhs > (c.sigma ? q1 : q0) * c.scale;
  });
  if (k == cs.size()) return {true, std::nullopt};
  const auto& c = cs[k];
  return {false, to_violation(c, (c.sigma ? q1 : q0) * c.scale)};
}

TightParams tightest(const std::vector<Constraint>& cs) {
  TightParams t;
  t.q0 = 0;
  t.q1 = 0;
  std::optional<ProjViolation> unbounded;
  std::vector<Rational> ratio(cs.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < static_cast<long>(cs.size()); ++k) {
    const auto& c = cs[static_cast<std::size_t>(k)];
    if (c.scale != 0) ratio[static_cast<std::size_t>(k)] = c.lhs / c.scale;
  }
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const auto& c = cs[k];
    if (c.scale == 0) {
      if (t.bounded) unbounded = to_violation(c, 0);
      t.bounded = false;
      continue;
    }
    auto& q = c.sigma ? t.q1 : t.q0;
    auto& w = c.sigma ? t.witness1 : t.witness0;
    if (!w || ratio[k] > q) {
      q = ratio[k];
      w = to_violation(c, c.scale);
    }
  }
  if (!t.bounded) {
    t.witness0 = unbounded;
    t.witness1 = unbounded;
  }
  return t;
}

}  // namespace

ProjVerdict is_fixing(const ProjDistribution& d, const Rational& q0, const Rational& q1) {
  return verify(fixing_constraints(d), q0, q1);
}

ProjVerdict is_hiding(const ProjDistribution& d, const Rational& q0, const Rational& q1) {
  return verify(hiding_constraints(d), q0, q1);
}

TightParams tightest_fixing(const ProjDistribution& d) { return tightest(fixing_constraints(d)); }

TightParams tightest_hiding(const ProjDistribution& d) { return tightest(hiding_constraints(d)); }

int max_targets_per_position(const ProjDistribution& d) {
  std::vector<std::set<int>> seen(static_cast<std::size_t>(d.source_arity()));
  for (const auto& [p, w] : exact_support(d)) {
    for (int i = 1; i <= p.source_arity(); ++i) {
      if (p(i).is_literal()) seen[static_cast<std::size_t>(i - 1)].insert(p(i).var());
    }
  }
  std::size_t best = 0;
  for (const auto& s : seen) best = std::max(best, s.size());
  return static_cast<int>(best);
}

std::pair<Rational, Rational> generalized_hiding_bound(const ProjDistribution& d,
                                                       const std::vector<RandomEvent>& events) {
  const auto& pts = exact_support(d);
  Rational best[2] = {0, 0};
  for (int j = 1; j <= d.target_arity(); ++j) {
    for (bool sigma : {false, true}) {
      Rational cond = 0;
      std::vector<Rational> joint(static_cast<std::size_t>(d.source_arity()), Rational(0));
      for (const auto& [p, w] : pts) {
        const Projection pi = substitute(p, j, sigma);
        Rational inside = 0;
        for (const auto& e : events) {
          if (e.contains(pi)) inside += e.weight;
        }
        if (inside == 0) continue;
        cond += w * inside;
        for (int i = 1; i <= p.source_arity(); ++i) {
          if (p(i).is_literal() && p(i).var() == j) joint[static_cast<std::size_t>(i - 1)] += w * inside;
        }
      }
      if (cond == 0) continue;
      for (const auto& jt : joint) best[sigma] = std::max(best[sigma], Rational(jt / cond));
    }
  }
  return {best[0], best[1]};
}

std::string format_violation(const ProjViolation& v) {
  std::ostringstream out;
  out << "pi = [";
  for (int i = 1; i <= v.pi.source_arity(); ++i) {
    const Image& im = v.pi(i);
    if (i > 1) out << ' ';
    if (im.is_constant()) {
      out << (im.constant_value() ? '1' : '0');
    } else {
      out << (im.negated() ? "!y" : "y") << im.var();
    }
  }
  out << "] sigma = " << (v.sigma ? 1 : 0) << " x" << v.x;
  if (v.y > 0) out << " y" << v.y;
  out << " lhs = " << format_rational(v.lhs) << " rhs = " << format_rational(v.rhs);
  return out.str();
}

}  // namespace shrinklab
