#include "shrinklab/named.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "shrinklab/rng.hpp"

namespace shrinklab {

TruthTable parity_tt(int n) {
  TruthTable t(n);
  for (std::uint64_t x = 0; x < t.size(); ++x) t.set(x, std::popcount(x) & 1);
  return t;
}

TruthTable and_tt(int n) {
  TruthTable t(n);
  t.set(t.size() - 1, true);
  return t;
}

TruthTable or_tt(int n) {
  TruthTable t(n, true);
  t.set(0, false);
  return t;
}

TruthTable majority_tt(int n) {
  if (n < 1 || n % 2 == 0) {
    throw std::invalid_argument("majority requires an odd number of variables");
  }
  TruthTable t(n);
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    t.set(x, std::popcount(x) > n / 2);
  }
  return t;
}

TruthTable random_tt(int n, std::uint64_t seed) {
  TruthTable t(n);
  Rng rng(mix64(seed));
  for (std::uint64_t x = 0; x < t.size(); ++x) t.set(x, coin(rng));
  return t;
}

SurjShape surj_shape(int s) {
  if (s < 1) throw std::invalid_argument("surj requires s >= 1");
  SurjShape shape;
  shape.s = s;
  shape.alphabet = 2 * s + 1;
  shape.positions = 3 * s + 1;
  shape.bits_per_symbol = std::bit_width(static_cast<unsigned>(shape.alphabet - 1));
  return shape;
}

int surj_symbol(const SurjShape& shape, std::uint64_t input, int position) {
  const int c = shape.bits_per_symbol;
  const auto code = static_cast<int>((input >> (position * c)) & ((1u << c) - 1));
  return code < shape.alphabet ? code : -1;
}

TruthTable surj_tt(int s) {
  const SurjShape shape = surj_shape(s);
  if (shape.arity() > kMaxArity) {
    throw CapExceeded("surj:" + std::to_string(s) + " needs " +
                      std::to_string(shape.arity()) + " variables");
  }
  TruthTable t(shape.arity());
  const std::uint64_t all = (std::uint64_t{1} << shape.alphabet) - 1;
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    std::uint64_t seen = 0;
    bool valid = true;
    for (int j = 0; j < shape.positions && valid; ++j) {
      const int sym = surj_symbol(shape, x, j);
      if (sym < 0) {
        valid = false;
      } else {
        seen |= std::uint64_t{1} << sym;
      }
    }
    t.set(x, valid && seen == all);
  }
  return t;
}

TruthTable build_named(NamedFunction name, int param, std::uint64_t seed) {
  if (param < 0) throw std::invalid_argument("negative parameter");
  switch (name) {
    case NamedFunction::Parity: return parity_tt(param);
    case NamedFunction::And: return and_tt(param);
    case NamedFunction::Or: return or_tt(param);
    case NamedFunction::Majority: return majority_tt(param);
    case NamedFunction::Surj: return surj_tt(param);
    case NamedFunction::Random: return random_tt(param, seed);
  }
  throw std::invalid_argument("unknown named function");
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::uint64_t parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("expected an unsigned integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

TruthTable parse_truth_table(std::string_view text) {
  text = trim(text);
  if (text.starts_with("tt ")) {
    auto rest = trim(text.substr(3));
    const auto sp = rest.find(' ');
    if (sp == std::string_view::npos) throw std::invalid_argument("tt form needs '<n> <bits>'");
    const auto n = parse_uint(rest.substr(0, sp));
    auto bits = trim(rest.substr(sp + 1));
    TruthTable t = TruthTable::from_bitstring(bits);
    if (static_cast<std::uint64_t>(t.arity()) != n) {
      throw std::invalid_argument("bitstring length does not match 2^n");
    }
    return t;
  }
  const auto parts = split(text, ':');
  if (parts.size() < 2) throw std::invalid_argument("unrecognised truth table '" + std::string(text) + "'");
  const auto name = parts[0];
  const int param = static_cast<int>(parse_uint(parts[1]));
  if (name == "random") {
    if (parts.size() != 3) throw std::invalid_argument("random form is random:n:seed");
    return random_tt(param, parse_uint(parts[2]));
  }
  if (parts.size() != 2) throw std::invalid_argument("too many fields in '" + std::string(text) + "'");
  if (name == "parity") return parity_tt(param);
  if (name == "and") return and_tt(param);
  if (name == "or") return or_tt(param);
  if (name == "maj") return majority_tt(param);
  if (name == "surj") return surj_tt(param);
  throw std::invalid_argument("unknown function name '" + std::string(name) + "'");
}

}  // namespace shrinklab
