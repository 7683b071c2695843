#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "shrinklab/formula.hpp"
#include "shrinklab/named.hpp"
#include "shrinklab/pair_distribution.hpp"
#include "shrinklab/proj_distribution.hpp"
#include "shrinklab/truth_table.hpp"

namespace shrinklab {

// Variable (1-based) holding bit `bit` of position `position` (both
// 0-based) in the surjectivity input layout.
int surj_variable(const SurjShape& shape, int position, int bit);

// AND over symbols of OR over positions of "position holds the symbol",
// each test an AND of bits_per_symbol literals.
UFormula surj_uformula(int s);

// Distribution over (a, b) with b missing one symbol, s+1 symbols doubled
// and s-1 symbols once; a replaces one doubled occurrence by the missing
// symbol. Enumerated exactly for s <= 2.
inline constexpr int kSurjPairMaxS = 2;
PairDistribution surj_pair_distribution(int s);

// Largest k >= 1 with 2^k (k+1) <= n.
int params_from_n(long long n);
// Largest s >= 1 with (3s+1) ceil(log2(2s+1)) <= n.
int surj_params_from_n(long long n);

// F(f, x_1..x_k) = f(surj(x_1), ..., surj(x_k)). The first 2^k variables
// are f's table (entry z at variable z+1), then k blocks of surj inputs.
struct AndreevShape {
  int k = 1;
  SurjShape surj;
  int arity() const { return (1 << k) + k * surj.arity(); }
  int block_variable(int block, int local) const { return (1 << k) + block * surj.arity() + local; }
};
AndreevShape andreev_shape(int k, int s);

// Depth4 splits each negated surj test into one term per missing symbol
// so it merges with the term's AND; the term count is (|alphabet|+1)^k.
// Compact keeps one term per y and places the dual test under the AND,
// which gives depth 5.
enum class AndreevLayout { Depth4, Compact };

inline constexpr int kAndreevMaxK = 12;
// Formula objects above this many top-level terms are refused.
inline constexpr long long kAndreevMaxTerms = 1LL << 16;

mpz_class andreev_term_count(int k, int s, AndreevLayout layout);
mpz_class andreev_size_closed_form(int k, int s, AndreevLayout layout);
int andreev_depth(AndreevLayout layout);
UFormula andreev_formula(int k, int s, AndreevLayout layout = AndreevLayout::Depth4);

// Direct semantics with the reference surj table; input has
// andreev_shape(k, s).arity() entries.
bool andreev_eval(const AndreevShape& shape, const std::vector<bool>& input);

struct AndreevRatioRow {
  int s = 0;
  int k = 0;
  int arity = 0;
  mpz_class size;
  double ratio = 0;  // size / (N^3 / log2(N)^3)
};
// For each s, k is the largest value with 2^k <= surj arity, so blocks
// have Theta(2^k) bits as in the padded construction.
std::vector<AndreevRatioRow> andreev_ratio_table(const std::vector<int>& s_values, AndreevLayout layout);
std::string format_andreev_ratio_csv(const std::vector<AndreevRatioRow>& rows);

struct CompositionWitness {
  Projection pi;
  TruthTable restricted;
  int restricted_size = 0;
};

struct CompositionVerdict {
  bool holds = true;
  std::uint64_t points_checked = 0;
  int f_size = 0;
  std::optional<CompositionWitness> witness;
};

// For every point of the m-fold product of d (m = arity of f), checks
// that (f◇g) restricted to it equals f up to input negations and keeps
// L(f). d must map g's inputs onto one variable.
CompositionVerdict composition_identity_check(const TruthTable& f, const TruthTable& g,
                                              const ProjDistribution& d);

enum class Speaker { Alice, Bob };

// Karchmer-Wigderson protocol mirroring a De Morgan formula. Alice holds a
// one-input and speaks at OR gates, Bob holds a zero-input and speaks at
// AND gates.
class ProtocolTree {
 public:
  struct Node {
    bool is_leaf = false;
    int output = 0;  // coordinate, 1-based, at leaves
    Speaker speaker = Speaker::Alice;
    // Child taken (0 left, 1 right) given the speaker's input.
    std::function<int(std::uint64_t)> decide;
    int child[2] = {-1, -1};
  };

  explicit ProtocolTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}

  const std::vector<Node>& nodes() const { return nodes_; }
  int leaf_count() const;
  // Index of the leaf reached on (a, b).
  int run(std::uint64_t a, std::uint64_t b) const;
  int output(std::uint64_t a, std::uint64_t b) const { return nodes_[static_cast<std::size_t>(run(a, b))].output; }

 private:
  std::vector<Node> nodes_;
};

// Throws invalid_argument when phi does not compute f, f is constant, or
// phi has constant leaves.
ProtocolTree kw_protocol(const Formula& phi, const TruthTable& f);

struct KwVerdict {
  bool holds = true;
  std::uint64_t pairs_checked = 0;
  std::uint64_t a = 0;  // failing pair when !holds
  std::uint64_t b = 0;
  int output = 0;
};
KwVerdict kw_verify(const ProtocolTree& p, const TruthTable& f);

}  // namespace shrinklab
