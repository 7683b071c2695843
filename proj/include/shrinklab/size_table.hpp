#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shrinklab/formula.hpp"
#include "shrinklab/truth_table.hpp"

namespace shrinklab {

// How an entry's minimum-size formula is assembled.
enum class WitnessOp : std::uint8_t { And = 0, Or = 1, Leaf = 2, Const = 3 };

struct SizeEntry {
  int size = 0;
  int depth = 0;
  WitnessOp op = WitnessOp::Const;
  // And/Or: child table indices with left <= right. Leaf: variable and
  // negation flag. Const: unused.
  std::uint32_t left = 0;
  std::uint32_t right = 0;
};

// Exact L and D for every function of a fixed arity, indexed by the table
// value (bit i of the index is f at input i).
class SizeTable {
 public:
  SizeTable() = default;

  int arity() const { return m_; }
  std::uint64_t function_count() const { return std::uint64_t{1} << (1u << m_); }

  int size(std::uint64_t index) const { return size_.at(index); }
  int depth(std::uint64_t index) const { return depth_.at(index); }
  SizeEntry entry(std::uint64_t index) const;

  // Minimum-size formula for the function with the given index.
  Formula witness(std::uint64_t index) const;

  // Flat little-endian format: magic, arity, then one record per function
  // (u16 size, u16 depth, u8 op, u32 left, u32 right).
  void save(const std::string& path) const;
  static SizeTable load(const std::string& path);

  friend bool operator==(const SizeTable&, const SizeTable&) = default;

 private:
  friend class SizeTableBuilder;
  int m_ = 0;
  std::vector<std::uint8_t> size_;
  std::vector<std::uint8_t> depth_;
  std::vector<std::uint8_t> op_;
  std::vector<std::uint32_t> left_;
  std::vector<std::uint32_t> right_;
};

struct SizeTableOptions {
  bool parallel = true;
  // Arity 5 needs tens of gigabytes and hours; refused unless set.
  bool allow_arity5 = false;
};

// Bytes of working memory needed to build the table for arity m.
std::uint64_t size_table_memory_estimate(int m);

SizeTable build_size_table(int m, const SizeTableOptions& options = {});

// Process-wide tables for arities 0..4, each built on first use.
const SizeTable& cached_size_table(int m);

// Exact size and depth of any table whose essential variables number at
// most 4; throws CapExceeded otherwise.
int L_exact(const TruthTable& f);
int D_exact(const TruthTable& f);
// Formula of size exactly L_exact(f), over f's own variables.
Formula witness_formula(const TruthTable& f);

// A function of arity k with maximum L; ties go to the smallest table.
std::pair<TruthTable, int> max_L_function(int k);

}  // namespace shrinklab
