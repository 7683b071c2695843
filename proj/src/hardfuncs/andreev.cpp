#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "shrinklab/hardfuncs.hpp"

namespace shrinklab {

namespace {

void check_k(int k) {
  if (k < 1 || k > kAndreevMaxK) {
    throw std::invalid_argument("k must lie in 1.." + std::to_string(kAndreevMaxK));
  }
}

mpz_class binomial(int n, int r) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

mpz_class power(long base, int e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return out;
}

// Building blocks over one surj block, with variables offset to the block.
struct BlockParts {
  // OR over positions of the symbol test, one per symbol.
  std::vector<UFormula> present;
  // Per missing symbol, the OR-of-bits "position differs" tests.
  std::vector<std::vector<UFormula>> differs;
  // OR over missing symbols of AND over positions of differs.
  UFormula absent_any = UFormula::constant(false);
};

BlockParts block_parts(const AndreevShape& shape, int block) {
  const SurjShape& sh = shape.surj;
  auto var = [&](int j, int b) { return shape.block_variable(block, surj_variable(sh, j, b)); };
  BlockParts parts;
  std::vector<UFormula> absent;
  for (int g = 0; g < sh.alphabet; ++g) {
    std::vector<UFormula> tests;
    std::vector<UFormula> diffs;
    for (int j = 0; j < sh.positions; ++j) {
      std::vector<UFormula> eq;
      std::vector<UFormula> ne;
      for (int b = 0; b < sh.bits_per_symbol; ++b) {
        const bool one = (g >> b) & 1;
        eq.push_back(UFormula::leaf(var(j, b), !one));
        ne.push_back(UFormula::leaf(var(j, b), one));
      }
      tests.push_back(UFormula::and_of(std::move(eq)));
      diffs.push_back(UFormula::or_of(std::move(ne)));
    }
    parts.present.push_back(UFormula::or_of(std::move(tests)));
    absent.push_back(UFormula::and_of(diffs));
    parts.differs.push_back(std::move(diffs));
  }
  parts.absent_any = UFormula::or_of(std::move(absent));
  return parts;
}

}  // namespace

AndreevShape andreev_shape(int k, int s) {
  check_k(k);
  AndreevShape shape;
  shape.k = k;
  shape.surj = surj_shape(s);
  return shape;
}

int andreev_depth(AndreevLayout layout) { return layout == AndreevLayout::Depth4 ? 4 : 5; }

mpz_class andreev_term_count(int k, int s, AndreevLayout layout) {
  const AndreevShape shape = andreev_shape(k, s);
  if (layout == AndreevLayout::Compact) return power(2, k);
  return power(shape.surj.alphabet + 1, k);
}

mpz_class andreev_size_closed_form(int k, int s, AndreevLayout layout) {
  const AndreevShape shape = andreev_shape(k, s);
  const long a = shape.surj.alphabet;
  const long rc = shape.surj.arity();
  if (layout == AndreevLayout::Compact) return power(2, k) * (1 + mpz_class(k) * a * rc);
  // z blocks must be 0; each picks a missing symbol.
  mpz_class total = 0;
  for (int z = 0; z <= k; ++z) {
    const mpz_class per_term = 1 + mpz_class(k - z) * a * rc + mpz_class(z) * rc;
    total += binomial(k, z) * power(a, z) * per_term;
  }
  return total;
}

UFormula andreev_formula(int k, int s, AndreevLayout layout) {
  const AndreevShape shape = andreev_shape(k, s);
  const mpz_class terms = andreev_term_count(k, s, layout);
  if (terms > static_cast<long>(kAndreevMaxTerms)) {
    throw CapExceeded("andreev formula with " + terms.get_str() + " terms exceeds the cap of " +
                      std::to_string(kAndreevMaxTerms));
  }
  std::vector<BlockParts> blocks;
  for (int i = 0; i < k; ++i) blocks.push_back(block_parts(shape, i));

  std::vector<UFormula> top;
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << k); ++y) {
    std::vector<UFormula> base{UFormula::leaf(static_cast<int>(y) + 1)};
    std::vector<int> zeros;
    for (int i = 0; i < k; ++i) {
      if ((y >> i) & 1) {
        const auto& p = blocks[static_cast<std::size_t>(i)].present;
        base.insert(base.end(), p.begin(), p.end());
      } else if (layout == AndreevLayout::Compact) {
        base.push_back(blocks[static_cast<std::size_t>(i)].absent_any);
      } else {
        zeros.push_back(i);
      }
    }
    if (zeros.empty()) {
      top.push_back(UFormula::and_of(std::move(base)));
      continue;
    }
    // Odometer over the missing symbol chosen for each zero block.
    std::vector<int> pick(zeros.size(), 0);
    while (true) {
      std::vector<UFormula> term = base;
      for (std::size_t t = 0; t < zeros.size(); ++t) {
        const auto& d = blocks[static_cast<std::size_t>(zeros[t])].differs[static_cast<std::size_t>(pick[t])];
        term.insert(term.end(), d.begin(), d.end());
      }
      top.push_back(UFormula::and_of(std::move(term)));
      std::size_t t = 0;
      while (t < pick.size() && ++pick[t] == shape.surj.alphabet) pick[t++] = 0;
      if (t == pick.size()) break;
    }
  }
  return UFormula::or_of(std::move(top));
}

bool andreev_eval(const AndreevShape& shape, const std::vector<bool>& input) {
  if (static_cast<int>(input.size()) != shape.arity()) {
    throw std::invalid_argument("andreev input has " + std::to_string(input.size()) + " bits, expected " +
                                std::to_string(shape.arity()));
  }
  const SurjShape& sh = shape.surj;
  const std::uint64_t all = (std::uint64_t{1} << sh.alphabet) - 1;
  std::uint64_t y = 0;
  for (int i = 0; i < shape.k; ++i) {
    std::uint64_t seen = 0;
    bool valid = true;
    for (int j = 0; j < sh.positions && valid; ++j) {
      int code = 0;
      for (int b = 0; b < sh.bits_per_symbol; ++b) {
        if (input[static_cast<std::size_t>(shape.block_variable(i, surj_variable(sh, j, b)) - 1)]) code |= 1 << b;
      }
      if (code >= sh.alphabet) {
        valid = false;
      } else {
        seen |= std::uint64_t{1} << code;
      }
    }
    if (valid && seen == all) y |= std::uint64_t{1} << i;
  }
  return input[static_cast<std::size_t>(y)];
}

std::vector<AndreevRatioRow> andreev_ratio_table(const std::vector<int>& s_values, AndreevLayout layout) {
  std::vector<AndreevRatioRow> rows;
  for (int s : s_values) {
    const SurjShape sh = surj_shape(s);
    int k = 1;
    while ((2 << k) <= sh.arity()) ++k;
    AndreevRatioRow row;
    row.s = s;
    row.k = k;
    row.arity = andreev_shape(k, s).arity();
    row.size = andreev_size_closed_form(k, s, layout);
    const double n = row.arity;
    const double lg = std::log2(n);
    row.ratio = row.size.get_d() / (n * n * n / (lg * lg * lg));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_andreev_ratio_csv(const std::vector<AndreevRatioRow>& rows) {
  std::ostringstream out;
  out << "s,k,N,size,ratio\n";
  for (const auto& r : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", r.ratio);
    out << r.s << ',' << r.k << ',' << r.arity << ',' << r.size.get_str() << ',' << buf << '\n';
  }
  return out.str();
}

}  // namespace shrinklab
