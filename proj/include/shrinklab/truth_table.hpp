#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shrinklab {

// Largest arity a TruthTable may hold (2^24 bits = 2 MiB).
inline constexpr int kMaxArity = 24;

class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Packed semantics of f: B^n -> B.
//
// Bit i of the table is f evaluated on the input in which variable x_j
// takes bit j-1 of i (little-endian). This ordering is used everywhere,
// including every file format.
class TruthTable {
 public:
  TruthTable() : TruthTable(0) {}
  explicit TruthTable(int n, bool fill = false);

  static TruthTable constant(int n, bool value) { return TruthTable(n, value); }
  // The function x_var (var is 1-based), optionally negated.
  static TruthTable literal(int n, int var, bool negated = false);
  // Table from the low 2^n bits of `bits`; n <= 6.
  static TruthTable from_bits(int n, std::uint64_t bits);
  // Text bitstring of length 2^n; character k is f at index k.
  static TruthTable from_bitstring(std::string_view bits);

  int arity() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

  bool eval(std::uint64_t x) const;
  bool operator[](std::uint64_t x) const { return test(x); }
  void set(std::uint64_t x, bool value);

  // Low 64 bits of the table (the whole table when n <= 6).
  std::uint64_t low_word() const { return words_[0]; }
  std::span<const std::uint64_t> words() const { return words_; }

  bool is_constant() const;
  bool constant_value() const { return test(0); }
  std::uint64_t count_ones() const;

  // True iff f depends on x_var.
  bool depends_on(int var) const;
  // 1-based indices of the variables f depends on, ascending.
  std::vector<int> essential_variables() const;
  // f viewed as a function of `vars` only (new x_k is old vars[k-1]).
  // Requires f to be independent of every variable not in `vars`.
  TruthTable compress(std::span<const int> vars) const;

  TruthTable operator~() const;
  TruthTable operator&(const TruthTable& other) const;
  TruthTable operator|(const TruthTable& other) const;
  TruthTable operator^(const TruthTable& other) const;

  // h(x) = f(x with x_var set to value), still over n variables.
  TruthTable fix(int var, bool value) const;

  std::string to_bitstring() const;
  // "tt <n> <bitstring>"
  std::string to_text() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;
  friend auto operator<=>(const TruthTable& a, const TruthTable& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

 private:
  bool test(std::uint64_t x) const {
    return (words_[x >> 6] >> (x & 63)) & 1u;
  }
  void mask_tail();

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// tt_eval: bounds-checked evaluation.
bool tt_eval(const TruthTable& f, std::uint64_t x);

// g(x) = f(x XOR mask); bit j-1 of mask flips x_j.
TruthTable negate_inputs(const TruthTable& f, std::uint64_t mask);

// Block composition (f◇g)(x_1..x_m) = f(g(x_1),...,g(x_m)), where block i
// holds variables x_{(i-1)n+1} .. x_{in}.
TruthTable compose(const TruthTable& f, const TruthTable& g);

// Parses `tt <n> <bits>` or a named form: parity:n, and:n, or:n, maj:n,
// surj:s, random:n:seed.
TruthTable parse_truth_table(std::string_view text);

}  // namespace shrinklab
