#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shrinklab/truth_table.hpp"

namespace shrinklab {

// Image of one source variable: a constant, y_j, or the negation of y_j.
class Image {
 public:
  enum class Kind : std::uint8_t { Zero, One, Pos, Neg };

  constexpr Image() = default;
  static constexpr Image constant(bool v) { return Image(v ? Kind::One : Kind::Zero, 0); }
  static constexpr Image pos(int var) { return Image(Kind::Pos, var); }
  static constexpr Image neg(int var) { return Image(Kind::Neg, var); }
  static constexpr Image literal(int var, bool negated) {
    return negated ? neg(var) : pos(var);
  }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_constant() const { return kind_ == Kind::Zero || kind_ == Kind::One; }
  constexpr bool is_literal() const { return !is_constant(); }
  constexpr bool constant_value() const { return kind_ == Kind::One; }
  constexpr bool negated() const { return kind_ == Kind::Neg; }
  // 1-based target variable; 0 for constants.
  constexpr int var() const { return var_; }

  // Value of the image when its variable (if any) equals `y`.
  constexpr bool value_at(bool y) const {
    switch (kind_) {
      case Kind::Zero: return false;
      case Kind::One: return true;
      case Kind::Pos: return y;
      case Kind::Neg: return !y;
    }
    return false;
  }

  friend constexpr bool operator==(const Image&, const Image&) = default;
  friend constexpr auto operator<=>(const Image&, const Image&) = default;

 private:
  constexpr Image(Kind k, int var) : kind_(k), var_(static_cast<std::uint16_t>(var)) {}
  Kind kind_ = Kind::Zero;
  std::uint16_t var_ = 0;
};

// Map from x_1..x_n to {0, 1, y_1, ~y_1, ..., y_m, ~y_m}.
class Projection {
 public:
  Projection() = default;
  Projection(int target_arity, std::vector<Image> images);

  int source_arity() const { return static_cast<int>(images_.size()); }
  int target_arity() const { return m_; }
  const Image& operator()(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<Image>& images() const { return images_; }

  bool all_constant() const;
  // Bit i-1 holds the image of x_i; requires all_constant().
  std::uint64_t as_input() const;
  // Target variables that occur in some image, ascending.
  std::vector<int> used_variables() const;
  bool mentions(int var) const;

  std::string to_text() const;

  friend bool operator==(const Projection&, const Projection&) = default;
  friend auto operator<=>(const Projection&, const Projection&) = default;

 private:
  int m_ = 0;
  std::vector<Image> images_;
};

// The restriction view: every variable maps to itself or to a constant.
Projection make_restriction(const std::vector<int>& values);  // -1 alive, 0/1 fixed

// pi_{y_j <- sigma}.
Projection substitute(const Projection& pi, int j, bool sigma);

// f|_pi as a table over y_1..y_m.
TruthTable restrict_tt(const TruthTable& f, const Projection& pi);

// Concatenation pi_a ⊎ pi_b: sources and targets of pi_b are shifted past
// those of pi_a.
Projection concat(const Projection& a, const Projection& b);

// Composition rho ∘ pi where rho maps y_1..y_m of pi to {0,1,z,~z}.
Projection then(const Projection& pi, const Projection& rho);

// One line per source variable: `x<i> = 0|1|y<j>|!y<j>`.
std::string format_projection(const Projection& pi);
Projection parse_projection(std::string_view text, int target_arity = -1);

}  // namespace shrinklab
