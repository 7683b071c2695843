#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "shrinklab/rational.hpp"
#include "shrinklab/truth_table.hpp"

namespace shrinklab {

// A word over the alphabet {0, ..., sigma-1}; entry k is coordinate k+1.
using Word = std::vector<std::uint8_t>;

Word word_from_index(std::uint64_t x, int n);
std::uint64_t index_from_word(const Word& w);
int hamming_distance(const Word& a, const Word& b);

struct WeightedPair {
  Word a;  // a one-input
  Word b;  // a zero-input
  Rational weight;
};

// Rationally weighted distribution over pairs (a, b) of words of equal
// length. Duplicate pairs are merged; pairs are kept in lexicographic order.
class PairDistribution {
 public:
  PairDistribution(int sigma, int length, std::vector<WeightedPair> pairs);

  int sigma() const { return sigma_; }
  int length() const { return r_; }
  bool binary() const { return sigma_ == 2; }
  const std::vector<WeightedPair>& pairs() const { return pairs_; }

  // Every pair differs in exactly one coordinate.
  bool is_khrapchenko() const;

  // Throws unless every a has value 1 and every b value 0.
  void check_consistent(const std::function<bool(const Word&)>& f) const;
  void check_consistent(const TruthTable& f) const;

 private:
  int sigma_;
  int r_;
  std::vector<WeightedPair> pairs_;
};

PairDistribution uniform_pair_distribution(int sigma, int length,
                                           const std::vector<std::pair<Word, Word>>& support);

// R ⊆ f^{-1}(1) × f^{-1}(0) over binary inputs, stored as table indices.
class Relation {
 public:
  Relation(int n, std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs);

  int arity() const { return n_; }
  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs() const { return pairs_; }
  void check_consistent(const TruthTable& f) const;

 private:
  int n_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs_;
};

// Weights for the weighted adversary bound. `w` is keyed by pair; the
// primed weights are keyed by (pair, coordinate) for each orientation:
// `w_one_side` holds w'(a,b,i) and `w_zero_side` holds w'(b,a,i).
struct WeightScheme {
  using PairKey = std::pair<std::uint64_t, std::uint64_t>;
  using CoordKey = std::tuple<std::uint64_t, std::uint64_t, int>;
  std::map<PairKey, Rational> w;
  std::map<CoordKey, Rational> w_one_side;
  std::map<CoordKey, Rational> w_zero_side;
};

// Text formats: `pairs <sigma> <r>` then `<a> <b> <num>/<den>` lines, words
// written as 0-based symbol digits (sigma <= 10). Relations use the same
// header with sigma 2 and omit the weight.
std::string format_pair_distribution(const PairDistribution& d);
PairDistribution parse_pair_distribution(const std::string& text);
std::string format_relation(const Relation& r);
Relation parse_relation(const std::string& text);

}  // namespace shrinklab
