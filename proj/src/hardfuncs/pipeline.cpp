#include <algorithm>
#include <limits>
#include <stdexcept>

#include "shrinklab/hardfuncs.hpp"
#include "shrinklab/size_table.hpp"

namespace shrinklab {

CompositionVerdict composition_identity_check(const TruthTable& f, const TruthTable& g,
                                              const ProjDistribution& d) {
  if (d.target_arity() != 1) throw std::invalid_argument("inner distribution must map onto one variable");
  if (d.source_arity() != g.arity()) {
    throw std::invalid_argument("inner distribution arity does not match g");
  }
  const int m = f.arity();
  if (m < 1) throw std::invalid_argument("outer function needs at least one variable");
  if (static_cast<long long>(m) * g.arity() > kMaxArity) {
    throw CapExceeded("composition needs " + std::to_string(m * g.arity()) + " variables");
  }
  const TruthTable composed = compose(f, g);
  const ProjDistribution joint = m_fold(d, m);
  if (!joint.is_exact()) throw CapExceeded("joint support exceeds the enumeration cap");

  CompositionVerdict v;
  v.f_size = L_exact(f);
  std::vector<TruthTable> variants;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) variants.push_back(negate_inputs(f, mask));
  for (const auto& [pi, w] : joint.support()) {
    ++v.points_checked;
    const TruthTable restricted = restrict_tt(composed, pi);
    const bool matches = std::find(variants.begin(), variants.end(), restricted) != variants.end();
    const int size = matches ? v.f_size : L_exact(restricted);
    if (!matches || size != v.f_size) {
      v.holds = false;
      v.witness = CompositionWitness{pi, restricted, size};
      return v;
    }
  }
  return v;
}

namespace {

int build_protocol(const Formula& phi, std::vector<ProtocolTree::Node>& nodes) {
  const auto index = static_cast<int>(nodes.size());
  nodes.emplace_back();
  if (phi.is_const()) throw std::invalid_argument("formula has constant leaves");
  if (!phi.is_gate()) {
    nodes[static_cast<std::size_t>(index)].is_leaf = true;
    nodes[static_cast<std::size_t>(index)].output = phi.node()->lit.var;
    return index;
  }
  const Formula left = phi.left();
  ProtocolTree::Node node;
  if (phi.kind() == Formula::Kind::Or) {
    node.speaker = Speaker::Alice;
    node.decide = [left](std::uint64_t a) { return left.eval(a) ? 0 : 1; };
  } else {
    node.speaker = Speaker::Bob;
    node.decide = [left](std::uint64_t b) { return left.eval(b) ? 1 : 0; };
  }
  node.child[0] = build_protocol(phi.left(), nodes);
  node.child[1] = build_protocol(phi.right(), nodes);
  nodes[static_cast<std::size_t>(index)] = std::move(node);
  return index;
}

}  // namespace

int ProtocolTree::leaf_count() const {
  return static_cast<int>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf; }));
}

int ProtocolTree::run(std::uint64_t a, std::uint64_t b) const {
  int at = 0;
  while (!nodes_[static_cast<std::size_t>(at)].is_leaf) {
    const Node& n = nodes_[static_cast<std::size_t>(at)];
    at = n.child[n.decide(n.speaker == Speaker::Alice ? a : b)];
  }
  return at;
}

ProtocolTree kw_protocol(const Formula& phi, const TruthTable& f) {
  if (f.is_constant()) throw std::invalid_argument("KW relation is empty for a constant function");
  if (phi.max_var() > f.arity() || tt_from_formula(phi, f.arity()) != f) {
    throw std::invalid_argument("formula does not compute the given function");
  }
  std::vector<ProtocolTree::Node> nodes;
  build_protocol(phi, nodes);
  return ProtocolTree(std::move(nodes));
}

KwVerdict kw_verify(const ProtocolTree& p, const TruthTable& f) {
  std::vector<std::uint64_t> ones;
  std::vector<std::uint64_t> zeros;
  for (std::uint64_t x = 0; x < f.size(); ++x) (f[x] ? ones : zeros).push_back(x);
  const long total = static_cast<long>(ones.size() * zeros.size());
  long first = std::numeric_limits<long>::max();
#pragma omp parallel for reduction(min : first) schedule(static)
  for (long t = 0; t < total; ++t) {
    const std::uint64_t a = ones[static_cast<std::size_t>(t) / zeros.size()];
    const std::uint64_t b = zeros[static_cast<std::size_t>(t) % zeros.size()];
    const int i = p.output(a, b);
    if (i < 1 || i > f.arity() || (((a ^ b) >> (i - 1)) & 1) == 0) first = std::min(first, t);
  }
  KwVerdict v;
  v.pairs_checked = static_cast<std::uint64_t>(total);
  if (first != std::numeric_limits<long>::max()) {
    v.holds = false;
    v.a = ones[static_cast<std::size_t>(first) / zeros.size()];
    v.b = zeros[static_cast<std::size_t>(first) % zeros.size()];
    v.output = p.output(v.a, v.b);
  }
  return v;
}

}  // namespace shrinklab
