#include "shrinklab/shrink.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "shrinklab/size_table.hpp"

namespace shrinklab {

namespace {

bool is_single_literal(const TruthTable& t) { return t.essential_variables().size() == 1; }

void collect_vars(const Formula::Node& node, std::set<int>& vars) {
  switch (node.kind) {
    case Formula::Kind::Leaf: vars.insert(node.lit.var); break;
    case Formula::Kind::Const: break;
    default:
      collect_vars(*node.left, vars);
      collect_vars(*node.right, vars);
  }
}

// Restricted tables above this many live variables are not built.
constexpr int kMcTableVars = 16;

int sample_size(const Formula& phi, const Projection& p, bool& upper) {
  const Formula psi = apply_projection_formula(phi, p, true);
  upper = false;
  if (psi.is_const()) return 0;
  std::set<int> used;
  collect_vars(*psi.node(), used);
  if (static_cast<int>(used.size()) <= kMcTableVars && psi.max_var() <= 64) {
    const std::vector<int> vars(used.begin(), used.end());
    const int k = static_cast<int>(vars.size());
    TruthTable t(k);
    for (std::uint64_t z = 0; z < t.size(); ++z) {
      std::uint64_t input = 0;
      for (int b = 0; b < k; ++b) {
        if ((z >> b) & 1) input |= std::uint64_t{1} << (vars[static_cast<std::size_t>(b)] - 1);
      }
      t.set(z, psi.eval(input));
    }
    if (t.essential_variables().size() <= 4) return L_exact(t);
  }
  upper = true;
  return psi.size();
}

// q^2 = q0*q1 for the tightest fixing parameters of d.
Rational fixing_q_squared(const ProjDistribution& d) {
  const TightParams t = tightest_fixing(d);
  if (!t.bounded) throw std::invalid_argument("distribution is not fixing for any q");
  return t.q0 * t.q1;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

double SqrtBoundCheck::bound() const { return std::sqrt(to_double(bound_squared)); }

Rational expected_L_exact(const TruthTable& f, const ProjDistribution& d) {
  if (f.arity() != d.source_arity()) {
    throw std::invalid_argument("function arity " + std::to_string(f.arity()) +
                                " does not match projection source arity " +
                                std::to_string(d.source_arity()));
  }
  const auto& pts = d.support();
  std::vector<int> sizes(pts.size());
  std::vector<std::string> errors(pts.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long k = 0; k < static_cast<long>(pts.size()); ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      sizes[i] = L_exact(restrict_tt(f, pts[i].first));
    } catch (const CapExceeded& e) {
      errors[i] = e.what();
    }
  }
  Rational total = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!errors[i].empty()) throw CapExceeded(errors[i]);
    total += pts[i].second * sizes[i];
  }
  return total;
}

Rational expected_L_exact(const Formula& phi, const ProjDistribution& d) {
  return expected_L_exact(tt_from_formula(phi, d.source_arity()), d);
}

McEstimate expected_L_mc(const Formula& phi, const ProjDistribution& d, std::uint64_t trials,
                         std::uint64_t seed, bool parallel) {
  if (trials == 0) throw std::invalid_argument("Monte Carlo needs at least one trial");
  if (phi.max_var() > d.source_arity()) {
    throw std::invalid_argument("formula mentions x" + std::to_string(phi.max_var()) +
                                " beyond the projection's source arity");
  }
  std::vector<int> values(trials);
  std::vector<char> upper(trials);
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (long k = 0; k < static_cast<long>(trials); ++k) {
    const auto i = static_cast<std::size_t>(k);
    bool up = false;
    values[i] = sample_size(phi, d.sample(seed, i), up);
    upper[i] = up;
  }
  McEstimate est;
  est.trials = trials;
  est.seed = seed;
  double sum = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    sum += values[i];
    est.upper_bound_samples += upper[i] ? 1 : 0;
  }
  est.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    double ss = 0;
    for (int v : values) ss += (v - est.mean) * (v - est.mean);
    est.stderr_of_mean = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
  }
  return est;
}

Rational prob_single_literal(const TruthTable& f, const ProjDistribution& d) {
  Rational total = 0;
  for (const auto& [p, w] : d.support()) {
    if (is_single_literal(restrict_tt(f, p))) total += w;
  }
  return total;
}

SqrtBoundCheck single_literal_check(const TruthTable& f, const ProjDistribution& d) {
  const Rational q2 = fixing_q_squared(d);
  SqrtBoundCheck c;
  c.lhs = prob_single_literal(f, d);
  c.bound_squared = q2 * L_exact(f);
  c.holds = c.lhs * c.lhs <= c.bound_squared;
  return c;
}

SqrtBoundCheck conditional_shrink_check(const TruthTable& f1, const TruthTable& f2,
                                        const ProjDistribution& d, int j, bool sigma, bool tau) {
  if (j < 1 || j > d.target_arity()) throw std::out_of_range("conditional check: y index out of range");
  const Rational q2 = fixing_q_squared(d);
  const TruthTable target = TruthTable::literal(d.target_arity(), j, tau);
  Rational cond = 0;
  Rational joint = 0;
  for (const auto& [p, w] : d.support()) {
    if (restrict_tt(f1, p) != target) continue;
    cond += w;
    if (is_single_literal(restrict_tt(f2, substitute(p, j, sigma)))) joint += w;
  }
  SqrtBoundCheck c;
  c.bound_squared = q2 * L_exact(f2);
  if (cond == 0) {
    c.defined = false;
    c.holds = false;
    return c;
  }
  c.lhs = joint / cond;
  c.holds = c.lhs * c.lhs <= c.bound_squared;
  return c;
}

ReductionCheck reduction_bound_check(const Formula& phi, const Projection& pi) {
  const int n = pi.source_arity();
  if (phi.max_var() > n) throw std::invalid_argument("formula mentions variables beyond the projection");
  auto restricted = [&](const Formula& g, const Projection& p) {
    return restrict_tt(tt_from_formula(g, n), p);
  };
  ReductionCheck r;
  const TruthTable whole = restricted(phi, pi);
  r.lhs = L_exact(whole);
  std::function<void(const Formula&, int)> walk = [&](const Formula& g, int depth) {
    if (!g.is_gate()) return;
    const TruthTable left = restricted(g.left(), pi);
    const auto ess = left.essential_variables();
    if (ess.size() == 1) {
      const int j = ess.front();
      // Value of y_j at which the left literal is 0 (OR) or 1 (AND); with
      // it the gate reduces to its right child.
      const bool lit_at_one = left[std::uint64_t{1} << (j - 1)];
      const bool sigma = g.kind() == Formula::Kind::Or ? !lit_at_one : lit_at_one;
      if (is_single_literal(restricted(g.right(), substitute(pi, j, sigma)))) r.rhs += depth + 2;
    }
    walk(g.left(), depth + 1);
    walk(g.right(), depth + 1);
  };
  walk(phi, 0);
  if (r.lhs == 1) r.rhs += 1;
  r.holds = r.lhs <= r.rhs;
  return r;
}

std::vector<CurveRow> shrinkage_curve(const CurveSpec& spec) {
  if (spec.parity_t < 0 || spec.parity_t > 4) throw std::invalid_argument("parity_t must lie in 0..4");
  if (spec.mode == CurveMode::MonteCarlo && spec.trials == 0) {
    throw std::invalid_argument("Monte Carlo curve needs trials >= 1");
  }
  const Formula phi = parity_formula(spec.parity_t);
  const int n = 1 << spec.parity_t;
  const int s = phi.size();
  const int depth = phi.depth();
  std::vector<CurveRow> rows;

  auto finish = [&](CurveRow row, const ProjDistribution& dist, double weight_sq, double weight) {
    row.n = n;
    row.s = s;
    row.d = depth;
    if (spec.mode == CurveMode::Exact) {
      const Rational el = expected_L_exact(phi, dist);
      row.expected = format_fraction(el);
      row.expected_value = to_double(el);
      row.mode = "exact";
    } else {
      const McEstimate est = expected_L_mc(phi, dist, spec.trials, spec.seed);
      row.expected = format_double(est.mean) + "+/-" +
                     (est.stderr_of_mean ? format_double(*est.stderr_of_mean) : std::string("n/a"));
      row.expected_value = est.mean;
      row.mode = est.upper_bound_samples ? "mc-upper" : "mc";
      row.seed = spec.seed;
      row.trials = spec.trials;
    }
    const double q = to_double(row.q);
    row.bound = weight_sq * q * q * depth * depth * s + weight * q * std::sqrt(static_cast<double>(s));
    row.bound_depth_free = weight_sq * q * q * s + weight * q * std::sqrt(static_cast<double>(s));
    row.ratio = row.bound > 0 ? row.expected_value / row.bound : 0;
    rows.push_back(std::move(row));
  };

  if (spec.family == CurveFamily::Restriction) {
    for (const Rational& p : spec.p_grid) {
      const ProjDistribution dist = p_random_restriction(n, p);
      CurveRow row;
      row.param = format_rational(p);
      row.q = 2 * p / (1 - p);
      if (spec.mode == CurveMode::Exact) {
        const TightParams t = tightest_fixing(dist);
        row.q = std::max(t.q0, t.q1);
      }
      finish(std::move(row), dist, 1, 1);
    }
  } else {
    for (int m : spec.m_grid) {
      const ProjDistribution dist = random_m_alive(n, m);
      CurveRow row;
      row.param = std::to_string(m);
      row.q = make_rational(1, n - m + 1);
      if (spec.mode == CurveMode::Exact) {
        const TightParams t = tightest_hiding(dist);
        row.q = std::max(t.q0, t.q1);
      }
      const double mm = m;
      finish(std::move(row), dist, mm * mm * mm * mm, mm * mm);
    }
  }
  return rows;
}

std::string curve_csv_header() { return "n,s,d,param,q_num,q_den,EL,bound,ratio,mode,seed,trials"; }

std::string format_curve_csv(const std::vector<CurveRow>& rows) {
  std::ostringstream out;
  out << curve_csv_header() << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << r.s << ',' << r.d << ',' << r.param << ',' << r.q.get_num().get_str() << ','
        << r.q.get_den().get_str() << ',' << r.expected << ',' << format_double(r.bound) << ','
        << format_double(r.ratio) << ',' << r.mode << ',';
    if (r.mode == "exact") {
      out << ",\n";
    } else {
      out << r.seed << ',' << r.trials << '\n';
    }
  }
  return out.str();
}

}  // namespace shrinklab
