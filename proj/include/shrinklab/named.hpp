#pragma once

#include <cstdint>
#include <string_view>

#include "shrinklab/truth_table.hpp"

namespace shrinklab {

enum class NamedFunction { Parity, And, Or, Majority, Surj, Random };

// Canonical table for a named family. `param` is the variable count, except
// for Surj where it is s. `seed` is used by Random only.
TruthTable build_named(NamedFunction name, int param, std::uint64_t seed = 0);

TruthTable parity_tt(int n);
TruthTable and_tt(int n);
TruthTable or_tt(int n);
TruthTable majority_tt(int n);
TruthTable random_tt(int n, std::uint64_t seed);

// Geometry of the surjectivity function over the alphabet [2s+1] with 3s+1
// positions; each symbol is stored as value-1 in `bits_per_symbol` bits.
struct SurjShape {
  int s = 1;
  int alphabet = 3;
  int positions = 4;
  int bits_per_symbol = 2;
  int arity() const { return positions * bits_per_symbol; }
};

SurjShape surj_shape(int s);

// 1 iff every symbol of the alphabet occurs among the decoded positions.
// Any position holding an invalid codeword makes the value 0.
TruthTable surj_tt(int s);

// Decodes symbol (0-based) at `position` of a binary input, or -1 when the
// codeword is not a valid symbol.
int surj_symbol(const SurjShape& shape, std::uint64_t input, int position);

}  // namespace shrinklab
