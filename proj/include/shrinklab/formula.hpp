#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "shrinklab/projection.hpp"
#include "shrinklab/rng.hpp"
#include "shrinklab/truth_table.hpp"

namespace shrinklab {

// z^b = z XOR b: `negated` selects the complemented variable.
struct Literal {
  int var = 1;
  bool negated = false;
  friend bool operator==(const Literal&, const Literal&) = default;
};

// Which variable family a formula's leaves name when printed.
enum class VarSpace : std::uint8_t { X, Y };

struct FormulaMetrics {
  int size = 0;   // leaf literals; constants count 0
  int depth = 0;  // longest root-to-leaf path
  friend bool operator==(const FormulaMetrics&, const FormulaMetrics&) = default;
};

// Immutable bounded fan-in De Morgan formula. Subtrees are shared.
class Formula {
 public:
  enum class Kind : std::uint8_t { Leaf, Const, And, Or };

  struct Node {
    Kind kind;
    Literal lit;
    bool value = false;
    std::shared_ptr<const Node> left, right;
    int size = 0;
    int depth = 0;
    int max_var = 0;
  };
  using NodePtr = std::shared_ptr<const Node>;

  Formula() : Formula(constant(false)) {}

  static Formula leaf(int var, bool negated = false, VarSpace space = VarSpace::X);
  static Formula leaf(Literal lit, VarSpace space = VarSpace::X) { return leaf(lit.var, lit.negated, space); }
  static Formula constant(bool value, VarSpace space = VarSpace::X);
  static Formula land(const Formula& a, const Formula& b);
  static Formula lor(const Formula& a, const Formula& b);

  Kind kind() const { return root_->kind; }
  bool is_leaf() const { return kind() == Kind::Leaf; }
  bool is_const() const { return kind() == Kind::Const; }
  bool is_gate() const { return kind() == Kind::And || kind() == Kind::Or; }
  const Literal& literal() const { return root_->lit; }
  bool const_value() const { return root_->value; }
  Formula left() const { return Formula(root_->left, space_); }
  Formula right() const { return Formula(root_->right, space_); }

  int size() const { return root_->size; }
  int depth() const { return root_->depth; }
  int max_var() const { return root_->max_var; }
  VarSpace space() const { return space_; }
  Formula in_space(VarSpace s) const { return Formula(root_, s); }
  bool has_constants() const;

  bool eval(std::uint64_t input) const;

  const NodePtr& node() const { return root_; }
  Formula(NodePtr root, VarSpace space) : root_(std::move(root)), space_(space) {}

 private:
  NodePtr root_;
  VarSpace space_ = VarSpace::X;
};

FormulaMetrics formula_metrics(const Formula& phi);
TruthTable tt_from_formula(const Formula& phi, int arity);

// h_{var <- value}: every leaf on `var` becomes a constant (no simplification).
Formula substitute_var(const Formula& phi, int var, bool value);
// De Morgan dual computing the complement; same size and depth.
Formula negate(const Formula& phi);

// Constant absorption plus the one-variable rules
//   y^s | h -> y^s | h[y <- s],  y^s & h -> y^s & h[y <- ~s]
// applied to a fixpoint. Never increases size; preserves the function.
Formula simplify(const Formula& phi);

// Leaves x_i replaced by pi(x_i); the result is over y_1..y_m.
Formula apply_projection_formula(const Formula& phi, const Projection& pi, bool simplify_result);

// Parity on 2^t variables from the gadget (a & ~b) | (~a & b); size 4^t,
// depth 2t.
Formula parity_formula(int t);

// Depth bound guaranteed by balance(): depth <= kBalanceConstant*log2(s+1).
inline constexpr double kBalanceConstant = 4.0;
Formula balance(const Formula& phi);

// Uniformly shaped random formula with `leaves` literal leaves over
// x_1..x_n; gate types and literal signs are fair coins.
Formula random_formula(Rng& rng, int leaves, int n);

// Fully parenthesised infix: `((x1 & ~x2) | x3)`, constants `0`/`1`.
std::string to_string(const Formula& phi);
Formula parse_formula(std::string_view text);

// Unbounded fan-in formula.
class UFormula {
 public:
  enum class Kind : std::uint8_t { Leaf, Const, AndN, OrN };

  struct Node {
    Kind kind;
    Literal lit;
    bool value = false;
    std::vector<std::shared_ptr<const Node>> children;
    long long size = 0;
    int depth = 0;
  };
  using NodePtr = std::shared_ptr<const Node>;

  static UFormula leaf(int var, bool negated = false);
  static UFormula constant(bool value);
  static UFormula and_of(std::vector<UFormula> children);
  static UFormula or_of(std::vector<UFormula> children);

  Kind kind() const { return root_->kind; }
  long long size() const { return root_->size; }
  int depth() const { return root_->depth; }
  const NodePtr& node() const { return root_; }
  std::vector<UFormula> children() const;

  bool eval(std::uint64_t input) const;
  // Input given as one bit per variable, for arities beyond 64.
  bool eval(const std::vector<bool>& input) const;

 private:
  explicit UFormula(NodePtr root) : root_(std::move(root)) {}
  NodePtr root_;
};

TruthTable tt_from_formula(const UFormula& phi, int arity);
std::string to_string(const UFormula& phi);

}  // namespace shrinklab
