#include "shrinklab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace shrinklab {

FiniteJointDist::FiniteJointDist(std::vector<std::string> names,
                                 std::vector<std::pair<Outcome, Rational>> outcomes)
    : names_(std::move(names)) {
  if (outcomes.empty()) throw std::invalid_argument("joint distribution is empty");
  std::map<Outcome, Rational> merged;
  Rational total = 0;
  for (auto& [o, w] : outcomes) {
    w.canonicalize();
    if (o.size() != names_.size()) throw std::invalid_argument("outcome arity differs from coordinate names");
    if (w <= 0) throw std::invalid_argument("joint weights must be positive");
    merged[o] += w;
    total += w;
  }
  if (total != 1) throw std::invalid_argument("joint weights sum to " + format_rational(total));
  for (auto& [o, w] : merged) outcomes_.emplace_back(o, w);
}

int FiniteJointDist::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("no coordinate named '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

FiniteJointDist FiniteJointDist::marginal(const std::vector<std::string>& vars) const {
  std::vector<int> idx;
  for (const auto& v : vars) idx.push_back(index_of(v));
  std::vector<std::pair<Outcome, Rational>> out;
  for (const auto& [o, w] : outcomes_) {
    Outcome m;
    for (int i : idx) m.push_back(o[static_cast<std::size_t>(i)]);
    out.emplace_back(std::move(m), w);
  }
  return FiniteJointDist(vars, std::move(out));
}

double entropy(const FiniteJointDist& d, const std::vector<std::string>& vars) {
  if (vars.empty()) return 0;
  double h = 0;
  const FiniteJointDist m = d.marginal(vars);
  for (const auto& [o, w] : m.outcomes()) {
    const double p = w.get_d();
    h -= p * std::log2(p);
  }
  return h;
}

namespace {

std::vector<std::string> join_vars(std::vector<std::string> a, const std::vector<std::string>& b) {
  for (const auto& v : b) {
    if (std::find(a.begin(), a.end(), v) == a.end()) a.push_back(v);
  }
  return a;
}

}  // namespace

double cond_entropy(const FiniteJointDist& d, const std::vector<std::string>& target,
                    const std::vector<std::string>& given) {
  return entropy(d, join_vars(target, given)) - entropy(d, given);
}

double mutual_information(const FiniteJointDist& d, const std::vector<std::string>& x,
                          const std::vector<std::string>& y) {
  return entropy(d, x) + entropy(d, y) - entropy(d, join_vars(x, y));
}

double cond_mutual_information(const FiniteJointDist& d, const std::vector<std::string>& x,
                               const std::vector<std::string>& y, const std::vector<std::string>& z) {
  return entropy(d, join_vars(x, z)) + entropy(d, join_vars(y, z)) - entropy(d, join_vars(join_vars(x, y), z)) -
         entropy(d, z);
}

MinEntropy min_entropy_cond(const FiniteJointDist& d, const std::vector<std::string>& target,
                            const std::vector<std::string>& given) {
  const auto all = join_vars(target, given);
  const FiniteJointDist joint = d.marginal(all);
  const auto k = given.size();
  std::map<FiniteJointDist::Outcome, Rational> given_mass;
  for (const auto& [o, w] : joint.outcomes()) {
    given_mass[FiniteJointDist::Outcome(o.end() - static_cast<std::ptrdiff_t>(k), o.end())] += w;
  }
  Rational best = 0;
  for (const auto& [o, w] : joint.outcomes()) {
    const Rational p = w / given_mass.at(FiniteJointDist::Outcome(o.end() - static_cast<std::ptrdiff_t>(k), o.end()));
    best = std::max(best, p);
  }
  const Rational inv = 1 / best;
  return {inv, std::log2(inv.get_d())};
}

InfoCheck info_inequality_check(const std::function<int(const Word&, const Word&)>& leaf_of,
                                const PairDistribution& d) {
  // Words are numbered in order of first appearance so they fit a tuple.
  std::map<Word, std::int64_t> id_a, id_b;
  std::vector<std::pair<FiniteJointDist::Outcome, Rational>> outcomes;
  for (const auto& p : d.pairs()) {
    const auto a = id_a.try_emplace(p.a, static_cast<std::int64_t>(id_a.size())).first->second;
    const auto b = id_b.try_emplace(p.b, static_cast<std::int64_t>(id_b.size())).first->second;
    outcomes.push_back({{a, b, leaf_of(p.a, p.b)}, p.weight});
  }
  const FiniteJointDist joint({"x", "y", "l"}, std::move(outcomes));
  InfoCheck c;
  c.lhs = mutual_information(joint, {"x", "y"}, {"l"});
  c.rhs = cond_mutual_information(joint, {"x"}, {"l"}, {"y"}) + cond_mutual_information(joint, {"y"}, {"l"}, {"x"});
  c.holds = c.lhs >= c.rhs - kEntropyTolerance;
  return c;
}

}  // namespace shrinklab
