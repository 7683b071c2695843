#include "shrinklab/pair_distribution.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace shrinklab {

Word word_from_index(std::uint64_t x, int n) {
  Word w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = (x >> i) & 1u;
  return w;
}

std::uint64_t index_from_word(const Word& w) {
  if (w.size() > 64) throw std::out_of_range("word too long for an index");
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 1) throw std::invalid_argument("index_from_word needs a binary word");
    x |= std::uint64_t{w[i]} << i;
  }
  return x;
}

int hamming_distance(const Word& a, const Word& b) {
  if (a.size() != b.size()) throw std::invalid_argument("words of different length");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

PairDistribution::PairDistribution(int sigma, int length, std::vector<WeightedPair> pairs)
    : sigma_(sigma), r_(length) {
  if (sigma < 2) throw std::invalid_argument("alphabet needs at least 2 symbols");
  if (length < 1) throw std::invalid_argument("word length must be positive");
  if (pairs.empty()) throw std::invalid_argument("pair distribution has empty support");
  std::map<std::pair<Word, Word>, Rational> merged;
  Rational total = 0;
  for (auto& p : pairs) {
    for (const Word* w : {&p.a, &p.b}) {
      if (static_cast<int>(w->size()) != length) throw std::invalid_argument("word has the wrong length");
      for (auto sym : *w) {
        if (sym >= sigma) throw std::invalid_argument("symbol outside the alphabet");
      }
    }
    p.weight.canonicalize();
    if (p.weight <= 0) throw std::invalid_argument("pair weights must be positive");
    merged[{p.a, p.b}] += p.weight;
    total += p.weight;
  }
  if (total != 1) throw std::invalid_argument("pair weights sum to " + format_rational(total) + ", not 1");
  for (auto& [key, w] : merged) pairs_.push_back({key.first, key.second, w});
}

bool PairDistribution::is_khrapchenko() const {
  return std::all_of(pairs_.begin(), pairs_.end(),
                     [](const WeightedPair& p) { return hamming_distance(p.a, p.b) == 1; });
}

namespace {

std::string word_text(const Word& w) {
  std::string s;
  for (auto sym : w) s.push_back(static_cast<char>('0' + sym));
  return s;
}

}  // namespace

void PairDistribution::check_consistent(const std::function<bool(const Word&)>& f) const {
  for (const auto& p : pairs_) {
    if (!f(p.a)) throw std::invalid_argument("pair (" + word_text(p.a) + ", " + word_text(p.b) + "): f(a) = 0");
    if (f(p.b)) throw std::invalid_argument("pair (" + word_text(p.a) + ", " + word_text(p.b) + "): f(b) = 1");
  }
}

void PairDistribution::check_consistent(const TruthTable& f) const {
  if (!binary() || r_ != f.arity()) throw std::invalid_argument("distribution does not match the table's inputs");
  check_consistent([&f](const Word& w) { return f[index_from_word(w)]; });
}

PairDistribution uniform_pair_distribution(int sigma, int length,
                                           const std::vector<std::pair<Word, Word>>& support) {
  if (support.empty()) throw std::invalid_argument("empty support");
  std::set<std::pair<Word, Word>> unique(support.begin(), support.end());
  const Rational w(1, static_cast<unsigned long>(unique.size()));
  std::vector<WeightedPair> pairs;
  for (const auto& [a, b] : unique) pairs.push_back({a, b, w});
  return PairDistribution(sigma, length, std::move(pairs));
}

Relation::Relation(int n, std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs) : n_(n) {
  if (n < 1 || n > kMaxArity) throw std::invalid_argument("relation arity out of range");
  if (pairs.empty()) throw std::invalid_argument("relation is empty");
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (const auto& [a, b] : pairs) {
    if (a >= limit || b >= limit) throw std::out_of_range("relation input outside 2^n");
  }
  std::sort(pairs.begin(), pairs.end());
  if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) {
    throw std::invalid_argument("relation has duplicate pairs");
  }
  pairs_ = std::move(pairs);
}

void Relation::check_consistent(const TruthTable& f) const {
  if (f.arity() != n_) throw std::invalid_argument("relation arity differs from the table");
  for (const auto& [a, b] : pairs_) {
    if (!f[a] || f[b]) {
      throw std::invalid_argument("pair (" + word_text(word_from_index(a, n_)) + ", " +
                                  word_text(word_from_index(b, n_)) + ") is not in f^-1(1) x f^-1(0)");
    }
  }
}

std::string format_pair_distribution(const PairDistribution& d) {
  if (d.sigma() > 10) throw std::invalid_argument("text format supports at most 10 symbols");
  std::ostringstream out;
  out << "pairs " << d.sigma() << ' ' << d.length() << '\n';
  for (const auto& p : d.pairs()) {
    out << word_text(p.a) << ' ' << word_text(p.b) << ' ' << format_fraction(p.weight) << '\n';
  }
  return out.str();
}

namespace {

Word parse_word(const std::string& s, int sigma, int length) {
  if (static_cast<int>(s.size()) != length) throw std::invalid_argument("word '" + s + "' has the wrong length");
  Word w;
  for (char c : s) {
    if (c < '0' || c - '0' >= sigma) throw std::invalid_argument("bad symbol in word '" + s + "'");
    w.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return w;
}

struct Header {
  int sigma;
  int length;
};

Header parse_header(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    Header h{};
    if (tag != "pairs" || !(ls >> h.sigma >> h.length)) {
      throw std::invalid_argument("expected header 'pairs <sigma> <r>'");
    }
    if (h.sigma < 2 || h.sigma > 10 || h.length < 1) throw std::invalid_argument("bad pairs header");
    return h;
  }
  throw std::invalid_argument("missing 'pairs' header");
}

}  // namespace

PairDistribution parse_pair_distribution(const std::string& text) {
  std::istringstream in(text);
  const Header h = parse_header(in);
  std::vector<WeightedPair> pairs;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string a, b, w, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> b >> w) || (ls >> extra)) throw std::invalid_argument("bad pair line '" + line + "'");
    pairs.push_back({parse_word(a, h.sigma, h.length), parse_word(b, h.sigma, h.length), parse_rational(w)});
  }
  return PairDistribution(h.sigma, h.length, std::move(pairs));
}

std::string format_relation(const Relation& r) {
  std::ostringstream out;
  out << "pairs 2 " << r.arity() << '\n';
  for (const auto& [a, b] : r.pairs()) {
    out << word_text(word_from_index(a, r.arity())) << ' ' << word_text(word_from_index(b, r.arity())) << '\n';
  }
  return out.str();
}

Relation parse_relation(const std::string& text) {
  std::istringstream in(text);
  const Header h = parse_header(in);
  if (h.sigma != 2) throw std::invalid_argument("relations are binary");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> b) || (ls >> extra)) throw std::invalid_argument("bad relation line '" + line + "'");
    pairs.emplace_back(index_from_word(parse_word(a, 2, h.length)), index_from_word(parse_word(b, 2, h.length)));
  }
  return Relation(h.length, std::move(pairs));
}

}  // namespace shrinklab
