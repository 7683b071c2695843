#include "shrinklab/formula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace shrinklab {

namespace {

using Node = Formula::Node;
using NodePtr = Formula::NodePtr;

NodePtr make_leaf(Literal lit) {
  if (lit.var < 1) throw std::invalid_argument("variables are 1-based");
  auto n = std::make_shared<Node>();
  n->kind = Formula::Kind::Leaf;
  n->lit = lit;
  n->size = 1;
  n->max_var = lit.var;
  return n;
}

NodePtr make_const(bool v) {
  auto n = std::make_shared<Node>();
  n->kind = Formula::Kind::Const;
  n->value = v;
  return n;
}

NodePtr make_gate(Formula::Kind kind, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->size = a->size + b->size;
  n->depth = 1 + std::max(a->depth, b->depth);
  n->max_var = std::max(a->max_var, b->max_var);
  n->left = std::move(a);
  n->right = std::move(b);
  return n;
}

bool is_gate(const NodePtr& n) {
  return n->kind == Formula::Kind::And || n->kind == Formula::Kind::Or;
}

bool eval_node(const Node& n, std::uint64_t x) {
  switch (n.kind) {
    case Formula::Kind::Leaf: return (((x >> (n.lit.var - 1)) & 1u) != 0) != n.lit.negated;
    case Formula::Kind::Const: return n.value;
    case Formula::Kind::And: return eval_node(*n.left, x) && eval_node(*n.right, x);
    case Formula::Kind::Or: return eval_node(*n.left, x) || eval_node(*n.right, x);
  }
  return false;
}

TruthTable table_of(const NodePtr& n, int arity) {
  switch (n->kind) {
    case Formula::Kind::Leaf: return TruthTable::literal(arity, n->lit.var, n->lit.negated);
    case Formula::Kind::Const: return TruthTable::constant(arity, n->value);
    case Formula::Kind::And: return table_of(n->left, arity) & table_of(n->right, arity);
    case Formula::Kind::Or: return table_of(n->left, arity) | table_of(n->right, arity);
  }
  return TruthTable(arity);
}

bool mentions(const NodePtr& n, int var) {
  if (n->max_var < var) return false;
  switch (n->kind) {
    case Formula::Kind::Leaf: return n->lit.var == var;
    case Formula::Kind::Const: return false;
    default: return mentions(n->left, var) || mentions(n->right, var);
  }
}

NodePtr substitute_node(const NodePtr& n, int var, bool value) {
  if (!mentions(n, var)) return n;
  if (n->kind == Formula::Kind::Leaf) return make_const(value != n->lit.negated);
  return make_gate(n->kind, substitute_node(n->left, var, value),
                   substitute_node(n->right, var, value));
}

NodePtr negate_node(const NodePtr& n) {
  switch (n->kind) {
    case Formula::Kind::Leaf: return make_leaf({n->lit.var, !n->lit.negated});
    case Formula::Kind::Const: return make_const(!n->value);
    case Formula::Kind::And:
      return make_gate(Formula::Kind::Or, negate_node(n->left), negate_node(n->right));
    case Formula::Kind::Or:
      return make_gate(Formula::Kind::And, negate_node(n->left), negate_node(n->right));
  }
  return n;
}

// Constant absorption for a gate whose children are already simplified.
NodePtr absorb(Formula::Kind kind, const NodePtr& a, const NodePtr& b) {
  const bool is_and = kind == Formula::Kind::And;
  for (const auto* pair : {&a, &b}) {
    const NodePtr& c = *pair;
    const NodePtr& other = (pair == &a) ? b : a;
    if (c->kind != Formula::Kind::Const) continue;
    if (is_and) return c->value ? other : c;
    return c->value ? c : other;
  }
  return nullptr;
}

NodePtr simplify_node(const NodePtr& n);

NodePtr simplify_gate(Formula::Kind kind, NodePtr a, NodePtr b) {
  if (auto r = absorb(kind, a, b)) return r;
  // One-variable rules. For a literal y^s, an OR may fix y := s in its
  // sibling and an AND may fix y := ~s.
  const bool is_or = kind == Formula::Kind::Or;
  if (a->kind == Formula::Kind::Leaf && mentions(b, a->lit.var)) {
    const bool value = is_or ? a->lit.negated : !a->lit.negated;
    b = simplify_node(substitute_node(b, a->lit.var, value));
    if (auto r = absorb(kind, a, b)) return r;
  } else if (b->kind == Formula::Kind::Leaf && mentions(a, b->lit.var)) {
    const bool value = is_or ? b->lit.negated : !b->lit.negated;
    a = simplify_node(substitute_node(a, b->lit.var, value));
    if (auto r = absorb(kind, a, b)) return r;
  }
  return make_gate(kind, std::move(a), std::move(b));
}

NodePtr simplify_node(const NodePtr& n) {
  if (!is_gate(n)) return n;
  return simplify_gate(n->kind, simplify_node(n->left), simplify_node(n->right));
}

bool same_tree(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Leaf: return a->lit == b->lit;
    case Formula::Kind::Const: return a->value == b->value;
    default: return same_tree(a->left, b->left) && same_tree(a->right, b->right);
  }
}

}  // namespace

Formula Formula::leaf(int var, bool negated, VarSpace space) {
  return Formula(make_leaf({var, negated}), space);
}

Formula Formula::constant(bool value, VarSpace space) { return Formula(make_const(value), space); }

Formula Formula::land(const Formula& a, const Formula& b) {
  return Formula(make_gate(Kind::And, a.root_, b.root_), a.space_);
}

Formula Formula::lor(const Formula& a, const Formula& b) {
  return Formula(make_gate(Kind::Or, a.root_, b.root_), a.space_);
}

bool Formula::has_constants() const {
  if (is_const()) return true;
  if (is_leaf()) return false;
  return left().has_constants() || right().has_constants();
}

bool Formula::eval(std::uint64_t input) const { return eval_node(*root_, input); }

FormulaMetrics formula_metrics(const Formula& phi) {
  if (phi.is_const()) return {0, 0};
  return {phi.size(), phi.depth()};
}

TruthTable tt_from_formula(const Formula& phi, int arity) {
  if (phi.max_var() > arity) {
    throw std::out_of_range("formula mentions variable " + std::to_string(phi.max_var()) +
                            " beyond arity " + std::to_string(arity));
  }
  return table_of(phi.node(), arity);
}

Formula substitute_var(const Formula& phi, int var, bool value) {
  return Formula(substitute_node(phi.node(), var, value), phi.space());
}

Formula negate(const Formula& phi) { return Formula(negate_node(phi.node()), phi.space()); }

Formula simplify(const Formula& phi) {
  NodePtr cur = phi.node();
  while (true) {
    NodePtr next = simplify_node(cur);
    if (same_tree(next, cur)) break;
    cur = std::move(next);
  }
  return Formula(cur, phi.space());
}

Formula apply_projection_formula(const Formula& phi, const Projection& pi, bool simplify_result) {
  if (phi.max_var() > pi.source_arity()) {
    throw std::invalid_argument("formula mentions x" + std::to_string(phi.max_var()) +
                                " but projection has " + std::to_string(pi.source_arity()) +
                                " sources");
  }
  auto rec = [&](auto&& self, const NodePtr& n) -> NodePtr {
    switch (n->kind) {
      case Formula::Kind::Const: return n;
      case Formula::Kind::Leaf: {
        const Image& im = pi(n->lit.var);
        if (im.is_constant()) return make_const(im.constant_value() != n->lit.negated);
        return make_leaf({im.var(), im.negated() != n->lit.negated});
      }
      default: return make_gate(n->kind, self(self, n->left), self(self, n->right));
    }
  };
  Formula out(rec(rec, phi.node()), VarSpace::Y);
  return simplify_result ? simplify(out) : out;
}

Formula parity_formula(int t) {
  if (t < 1) throw std::invalid_argument("parity_formula requires t >= 1");
  // xor(a, b) over disjoint variable blocks, built bottom-up.
  auto rec = [](auto&& self, int level, int first_var) -> Formula {
    if (level == 0) return Formula::leaf(first_var);
    const int half = 1 << (level - 1);
    Formula a = self(self, level - 1, first_var);
    Formula b = self(self, level - 1, first_var + half);
    return Formula::lor(Formula::land(a, negate(b)), Formula::land(negate(a), b));
  };
  return rec(rec, t, 1);
}

namespace {

// Replace the subtree reached by `path` (false = left) with a constant.
NodePtr replace_at(const NodePtr& n, const std::vector<bool>& path, std::size_t k, bool value) {
  if (k == path.size()) return make_const(value);
  if (!path[k]) return make_gate(n->kind, replace_at(n->left, path, k + 1, value), n->right);
  return make_gate(n->kind, n->left, replace_at(n->right, path, k + 1, value));
}

NodePtr balance_node(const NodePtr& n) {
  const int s = n->size;
  if (s <= 1 || n->depth <= static_cast<int>(kBalanceConstant * std::log2(s + 1.0))) return n;
  // Descend into the larger child until the subtree holds at most 2s/3
  // leaves; it then holds more than s/3.
  std::vector<bool> path;
  NodePtr cur = n;
  while (3 * cur->size > 2 * s) {
    const bool go_right = cur->right->size > cur->left->size;
    path.push_back(go_right);
    cur = go_right ? cur->right : cur->left;
  }
  const NodePtr psi = cur;
  const NodePtr when_true = simplify_node(replace_at(n, path, 0, true));
  const NodePtr when_false = simplify_node(replace_at(n, path, 0, false));
  const NodePtr pos = simplify_gate(Formula::Kind::And, balance_node(psi), balance_node(when_true));
  const NodePtr neg =
      simplify_gate(Formula::Kind::And, balance_node(negate_node(psi)), balance_node(when_false));
  if (auto r = absorb(Formula::Kind::Or, pos, neg)) return r;
  return make_gate(Formula::Kind::Or, pos, neg);
}

}  // namespace

Formula balance(const Formula& phi) {
  if (phi.size() < 1) throw std::invalid_argument("balance requires size >= 1");
  return Formula(balance_node(phi.node()), phi.space());
}

Formula random_formula(Rng& rng, int leaves, int n) {
  if (leaves < 1 || n < 1) throw std::invalid_argument("random_formula needs leaves, n >= 1");
  if (leaves == 1) {
    return Formula::leaf(static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n))) + 1,
                         coin(rng));
  }
  const int left = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(leaves - 1)));
  const bool is_and = coin(rng);
  Formula a = random_formula(rng, left, n);
  Formula b = random_formula(rng, leaves - left, n);
  return is_and ? Formula::land(a, b) : Formula::lor(a, b);
}

std::string to_string(const Formula& phi) {
  const char prefix = phi.space() == VarSpace::X ? 'x' : 'y';
  auto rec = [&](auto&& self, const NodePtr& n) -> std::string {
    switch (n->kind) {
      case Formula::Kind::Leaf:
        return std::string(n->lit.negated ? "~" : "") + prefix + std::to_string(n->lit.var);
      case Formula::Kind::Const: return n->value ? "1" : "0";
      case Formula::Kind::And: return "(" + self(self, n->left) + " & " + self(self, n->right) + ")";
      case Formula::Kind::Or: return "(" + self(self, n->left) + " | " + self(self, n->right) + ")";
    }
    return {};
  };
  return rec(rec, phi.node());
}

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view s) : s_(s) {}

  Formula parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return Formula(n, space_ == 'y' ? VarSpace::Y : VarSpace::X);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("formula parse error at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expr() {
    const char c = peek();
    if (c == '~' || c == '!') {
      ++pos_;
      return negate_node(expr());
    }
    if (c == '(') {
      ++pos_;
      NodePtr acc = expr();
      while (true) {
        const char op = peek();
        if (op == ')') {
          ++pos_;
          return acc;
        }
        if (op != '&' && op != '|') fail("expected '&', '|' or ')'");
        ++pos_;
        NodePtr rhs = expr();
        acc = make_gate(op == '&' ? Formula::Kind::And : Formula::Kind::Or, acc, rhs);
      }
    }
    if (c == '0' || c == '1') {
      ++pos_;
      return make_const(c == '1');
    }
    if (c == 'x' || c == 'y') {
      if (space_ != '\0' && space_ != c) fail("formula mixes x and y variables");
      space_ = c;
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("variable index expected");
      const int v = std::stoi(std::string(s_.substr(start, pos_ - start)));
      if (v < 1) fail("variables are 1-based");
      return make_leaf({v, false});
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  char space_ = '\0';
};

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

// ---------------------------------------------------------------------------
// UFormula

namespace {

using UNode = UFormula::Node;
using UNodePtr = UFormula::NodePtr;

UNodePtr make_unode(UFormula::Kind kind, std::vector<UNodePtr> children) {
  if (children.empty()) throw std::invalid_argument("unbounded gate needs fan-in >= 1");
  auto n = std::make_shared<UNode>();
  n->kind = kind;
  int depth = 0;
  for (const auto& c : children) {
    n->size += c->size;
    depth = std::max(depth, c->depth);
  }
  n->depth = depth + 1;
  n->children = std::move(children);
  return n;
}

template <typename Bit>
bool eval_unode(const UNode& n, const Bit& bit) {
  switch (n.kind) {
    case UFormula::Kind::Leaf: return bit(n.lit.var) != n.lit.negated;
    case UFormula::Kind::Const: return n.value;
    case UFormula::Kind::AndN:
      for (const auto& c : n.children) {
        if (!eval_unode(*c, bit)) return false;
      }
      return true;
    case UFormula::Kind::OrN:
      for (const auto& c : n.children) {
        if (eval_unode(*c, bit)) return true;
      }
      return false;
  }
  return false;
}

}  // namespace

UFormula UFormula::leaf(int var, bool negated) {
  if (var < 1) throw std::invalid_argument("variables are 1-based");
  auto n = std::make_shared<UNode>();
  n->kind = Kind::Leaf;
  n->lit = {var, negated};
  n->size = 1;
  return UFormula(n);
}

UFormula UFormula::constant(bool value) {
  auto n = std::make_shared<UNode>();
  n->kind = Kind::Const;
  n->value = value;
  return UFormula(n);
}

UFormula UFormula::and_of(std::vector<UFormula> children) {
  std::vector<UNodePtr> nodes;
  nodes.reserve(children.size());
  for (auto& c : children) nodes.push_back(std::move(c.root_));
  return UFormula(make_unode(Kind::AndN, std::move(nodes)));
}

UFormula UFormula::or_of(std::vector<UFormula> children) {
  std::vector<UNodePtr> nodes;
  nodes.reserve(children.size());
  for (auto& c : children) nodes.push_back(std::move(c.root_));
  return UFormula(make_unode(Kind::OrN, std::move(nodes)));
}

std::vector<UFormula> UFormula::children() const {
  std::vector<UFormula> out;
  for (const auto& c : root_->children) out.push_back(UFormula(c));
  return out;
}

bool UFormula::eval(std::uint64_t input) const {
  return eval_unode(*root_, [input](int v) { return ((input >> (v - 1)) & 1u) != 0; });
}

bool UFormula::eval(const std::vector<bool>& input) const {
  return eval_unode(*root_, [&input](int v) { return static_cast<bool>(input.at(static_cast<std::size_t>(v - 1))); });
}

TruthTable tt_from_formula(const UFormula& phi, int arity) {
  auto rec = [&](auto&& self, const UNodePtr& n) -> TruthTable {
    switch (n->kind) {
      case UFormula::Kind::Leaf: return TruthTable::literal(arity, n->lit.var, n->lit.negated);
      case UFormula::Kind::Const: return TruthTable::constant(arity, n->value);
      case UFormula::Kind::AndN: {
        TruthTable t(arity, true);
        for (const auto& c : n->children) t = t & self(self, c);
        return t;
      }
      case UFormula::Kind::OrN: {
        TruthTable t(arity, false);
        for (const auto& c : n->children) t = t | self(self, c);
        return t;
      }
    }
    return TruthTable(arity);
  };
  return rec(rec, phi.node());
}

std::string to_string(const UFormula& phi) {
  auto rec = [](auto&& self, const UNodePtr& n) -> std::string {
    switch (n->kind) {
      case UFormula::Kind::Leaf: return std::string(n->lit.negated ? "~" : "") + "x" + std::to_string(n->lit.var);
      case UFormula::Kind::Const: return n->value ? "1" : "0";
      default: {
        const char* op = n->kind == UFormula::Kind::AndN ? " & " : " | ";
        std::string s = "(";
        for (std::size_t i = 0; i < n->children.size(); ++i) {
          if (i) s += op;
          s += self(self, n->children[i]);
        }
        return s + ")";
      }
    }
  };
  return rec(rec, phi.node());
}

}  // namespace shrinklab
