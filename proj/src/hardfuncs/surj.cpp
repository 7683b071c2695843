#include <algorithm>
#include <bit>
#include <stdexcept>

#include "shrinklab/hardfuncs.hpp"

namespace shrinklab {

int surj_variable(const SurjShape& shape, int position, int bit) {
  return position * shape.bits_per_symbol + bit + 1;
}

namespace {

// AND of literals matching the code of `symbol` at `position`.
UFormula symbol_test(const SurjShape& shape, int position, int symbol) {
  std::vector<UFormula> lits;
  for (int b = 0; b < shape.bits_per_symbol; ++b) {
    lits.push_back(UFormula::leaf(surj_variable(shape, position, b), ((symbol >> b) & 1) == 0));
  }
  return UFormula::and_of(std::move(lits));
}

}  // namespace

UFormula surj_uformula(int s) {
  const SurjShape shape = surj_shape(s);
  std::vector<UFormula> per_symbol;
  for (int g = 0; g < shape.alphabet; ++g) {
    std::vector<UFormula> somewhere;
    for (int j = 0; j < shape.positions; ++j) somewhere.push_back(symbol_test(shape, j, g));
    per_symbol.push_back(UFormula::or_of(std::move(somewhere)));
  }
  return UFormula::and_of(std::move(per_symbol));
}

PairDistribution surj_pair_distribution(int s) {
  const SurjShape shape = surj_shape(s);
  if (s > kSurjPairMaxS) {
    throw CapExceeded("surj_pair_distribution enumerates only s <= " + std::to_string(kSurjPairMaxS));
  }
  const int sigma = shape.alphabet;
  const int r = shape.positions;
  std::vector<std::pair<Word, Word>> support;
  Word b(static_cast<std::size_t>(r), 0);
  // Odometer over all words of length r.
  while (true) {
    std::vector<int> count(static_cast<std::size_t>(sigma), 0);
    for (auto v : b) ++count[v];
    const auto twice = std::count(count.begin(), count.end(), 2);
    const auto once = std::count(count.begin(), count.end(), 1);
    const auto absent = std::find(count.begin(), count.end(), 0);
    if (twice == s + 1 && once == s - 1) {
      const auto missing = static_cast<std::uint8_t>(absent - count.begin());
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (count[b[i]] != 2) continue;
        Word a = b;
        a[i] = missing;
        support.emplace_back(std::move(a), b);
      }
    }
    std::size_t pos = 0;
    while (pos < b.size() && ++b[pos] == sigma) b[pos++] = 0;
    if (pos == b.size()) break;
  }
  return uniform_pair_distribution(sigma, r, support);
}

int params_from_n(long long n) {
  if (n < 4) throw std::invalid_argument("n = " + std::to_string(n) + " is below 2^1*2 = 4");
  int k = 1;
  while (k < 40 && (1LL << (k + 1)) * (k + 2) <= n) ++k;
  return k;
}

int surj_params_from_n(long long n) {
  auto need = [](long long s) {
    return (3 * s + 1) * static_cast<long long>(std::bit_width(static_cast<unsigned long long>(2 * s)));
  };
  if (n < need(1)) throw std::invalid_argument("n = " + std::to_string(n) + " admits no s >= 1");
  long long s = 1;
  while (need(s + 1) <= n) ++s;
  return static_cast<int>(s);
}

}  // namespace shrinklab
