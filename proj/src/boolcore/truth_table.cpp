#include "shrinklab/truth_table.hpp"

#include <bit>
#include <sstream>

namespace shrinklab {

namespace {

std::size_t word_count(int n) {
  return n <= 6 ? 1 : (std::size_t{1} << (n - 6));
}

void check_arity(int n) {
  if (n < 0 || n > kMaxArity) {
    throw CapExceeded("truth table arity " + std::to_string(n) +
                      " outside [0, " + std::to_string(kMaxArity) + "]");
  }
}

}  // namespace

TruthTable::TruthTable(int n, bool fill) : n_(n) {
  check_arity(n);
  words_.assign(word_count(n), fill ? ~std::uint64_t{0} : 0);
  mask_tail();
}

void TruthTable::mask_tail() {
  if (n_ < 6) words_[0] &= (std::uint64_t{1} << (std::uint64_t{1} << n_)) - 1;
}

TruthTable TruthTable::literal(int n, int var, bool negated) {
  if (var < 1 || var > n) {
    throw std::out_of_range("literal variable x" + std::to_string(var) +
                            " outside arity " + std::to_string(n));
  }
  TruthTable t(n);
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    t.set(x, (((x >> (var - 1)) & 1u) != 0) != negated);
  }
  return t;
}

TruthTable TruthTable::from_bits(int n, std::uint64_t bits) {
  if (n > 6) throw std::invalid_argument("from_bits requires n <= 6");
  TruthTable t(n);
  t.words_[0] = bits;
  t.mask_tail();
  return t;
}

TruthTable TruthTable::from_bitstring(std::string_view bits) {
  const auto len = bits.size();
  if (len == 0 || !std::has_single_bit(len)) {
    throw std::invalid_argument("bitstring length must be a power of two");
  }
  const int n = std::countr_zero(len);
  TruthTable t(n);
  for (std::size_t i = 0; i < len; ++i) {
    if (bits[i] != '0' && bits[i] != '1') {
      throw std::invalid_argument("bitstring contains a non-binary character");
    }
    t.set(i, bits[i] == '1');
  }
  return t;
}

bool TruthTable::eval(std::uint64_t x) const {
  if (x >= size()) {
    throw std::out_of_range("input index " + std::to_string(x) +
                            " out of range for arity " + std::to_string(n_));
  }
  return test(x);
}

void TruthTable::set(std::uint64_t x, bool value) {
  auto& w = words_[x >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (x & 63);
  w = value ? (w | bit) : (w & ~bit);
}

bool TruthTable::is_constant() const {
  const TruthTable zero(n_, false), one(n_, true);
  return *this == zero || *this == one;
}

std::uint64_t TruthTable::count_ones() const {
  std::uint64_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool TruthTable::depends_on(int var) const {
  if (var < 1 || var > n_) return false;
  const std::uint64_t stride = std::uint64_t{1} << (var - 1);
  for (std::uint64_t x = 0; x < size(); ++x) {
    if ((x & stride) == 0 && test(x) != test(x | stride)) return true;
  }
  return false;
}

std::vector<int> TruthTable::essential_variables() const {
  std::vector<int> vars;
  for (int v = 1; v <= n_; ++v) {
    if (depends_on(v)) vars.push_back(v);
  }
  return vars;
}

TruthTable TruthTable::compress(std::span<const int> vars) const {
  TruthTable out(static_cast<int>(vars.size()));
  for (std::uint64_t y = 0; y < out.size(); ++y) {
    std::uint64_t x = 0;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if ((y >> k) & 1u) x |= std::uint64_t{1} << (vars[k] - 1);
    }
    out.set(y, test(x));
  }
  return out;
}

TruthTable TruthTable::operator~() const {
  TruthTable t = *this;
  for (auto& w : t.words_) w = ~w;
  t.mask_tail();
  return t;
}

TruthTable TruthTable::operator&(const TruthTable& other) const {
  if (other.n_ != n_) throw std::invalid_argument("arity mismatch in AND");
  TruthTable t = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) t.words_[i] &= other.words_[i];
  return t;
}

TruthTable TruthTable::operator|(const TruthTable& other) const {
  if (other.n_ != n_) throw std::invalid_argument("arity mismatch in OR");
  TruthTable t = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) t.words_[i] |= other.words_[i];
  return t;
}

TruthTable TruthTable::operator^(const TruthTable& other) const {
  if (other.n_ != n_) throw std::invalid_argument("arity mismatch in XOR");
  TruthTable t = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) t.words_[i] ^= other.words_[i];
  return t;
}

TruthTable TruthTable::fix(int var, bool value) const {
  if (var < 1 || var > n_) throw std::out_of_range("fix: variable out of range");
  const std::uint64_t stride = std::uint64_t{1} << (var - 1);
  TruthTable t(n_);
  for (std::uint64_t x = 0; x < size(); ++x) {
    t.set(x, test(value ? (x | stride) : (x & ~stride)));
  }
  return t;
}

std::string TruthTable::to_bitstring() const {
  std::string s(size(), '0');
  for (std::uint64_t x = 0; x < size(); ++x) {
    if (test(x)) s[x] = '1';
  }
  return s;
}

std::string TruthTable::to_text() const {
  return "tt " + std::to_string(n_) + " " + to_bitstring();
}

bool tt_eval(const TruthTable& f, std::uint64_t x) { return f.eval(x); }

TruthTable negate_inputs(const TruthTable& f, std::uint64_t mask) {
  if (f.arity() < 64 && (mask >> f.arity()) != 0) {
    throw std::invalid_argument("negation mask wider than arity");
  }
  TruthTable g(f.arity());
  for (std::uint64_t x = 0; x < f.size(); ++x) g.set(x, f[x ^ mask]);
  return g;
}

TruthTable compose(const TruthTable& f, const TruthTable& g) {
  const int m = f.arity();
  const int n = g.arity();
  if (static_cast<long>(m) * n > kMaxArity) {
    throw CapExceeded("composition arity " + std::to_string(m * n) +
                      " exceeds table cap");
  }
  TruthTable h(m * n);
  const std::uint64_t block_mask = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t x = 0; x < h.size(); ++x) {
    std::uint64_t z = 0;
    for (int i = 0; i < m; ++i) {
      if (g[(x >> (i * n)) & block_mask]) z |= std::uint64_t{1} << i;
    }
    h.set(x, f[z]);
  }
  return h;
}

}  // namespace shrinklab
