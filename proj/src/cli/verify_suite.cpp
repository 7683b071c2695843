#include "shrinklab/verify_suite.hpp"

#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "pair_gen.hpp"
#include "proj_gen.hpp"
#include "shrinklab/entropy.hpp"
#include "shrinklab/hardfuncs.hpp"
#include "shrinklab/measures.hpp"
#include "shrinklab/named.hpp"
#include "shrinklab/shrink.hpp"
#include "shrinklab/size_table.hpp"

namespace shrinklab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Rational q(long a, long b) { return make_rational(a, b); }

TruthTable table_from_index(int m, std::uint64_t index) {
  TruthTable f(m);
  for (std::uint64_t x = 0; x < f.size(); ++x) f.set(x, (index >> x) & 1u);
  return f;
}

// Counts checks and keeps the first failure.
class Tally {
 public:
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (!ok && failure_.empty()) failure_ = what();
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  bool ok() const { return failure_.empty(); }
  std::string detail() const {
    if (!ok()) return failure_;
    return std::to_string(checks_) + " checks" + (notes_.empty() ? "" : "; " + notes_);
  }

 private:
  long checks_ = 0;
  std::string failure_;
  std::string notes_;
};

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(3);
  out << s << "s";
  return out.str();
}

void oracle_suite(Tally& t, std::uint64_t) {
  auto t0 = Clock::now();
  build_size_table(3);
  const double s3 = seconds_since(t0);
  t.expect(s3 < 5.0, [&] { return "arity-3 table took " + fmt_seconds(s3); });
  t0 = Clock::now();
  build_size_table(4);
  const double s4 = seconds_since(t0);
  t.expect(s4 < 1800.0, [&] { return "arity-4 table took " + fmt_seconds(s4); });

  t.expect(L_exact(TruthTable::constant(2, true)) == 0, [] { return "L(1) != 0"; });
  t.expect(L_exact(TruthTable::constant(3, false)) == 0, [] { return "L(0) != 0"; });
  t.expect(L_exact(TruthTable::literal(3, 2, true)) == 1, [] { return "L(~x2) != 1"; });
  t.expect(L_exact(parity_tt(2)) == 4, [] { return "L(parity_2) != 4"; });

  const SizeTable& table = cached_size_table(3);
  for (std::uint64_t i = 0; i < 256; ++i) {
    const TruthTable f = table_from_index(3, i);
    const int lf = table.size(i);
    t.expect(L_exact(~f) == lf, [&] { return "complement changes L for " + f.to_text(); });
    for (std::uint64_t mask = 1; mask < 8; ++mask) {
      t.expect(L_exact(negate_inputs(f, mask)) == lf, [&] { return "input negation changes L for " + f.to_text(); });
    }
    for (int code = 0; code < 27; ++code) {
      std::vector<int> values;
      for (int c = code, v = 0; v < 3; ++v, c /= 3) values.push_back(c % 3 - 1);
      const Projection rho = make_restriction(values);
      t.expect(L_exact(restrict_tt(f, rho)) <= lf,
               [&] { return "restriction " + rho.to_text() + " grows L of " + f.to_text(); });
    }
  }
}

void measures_suite(Tally& t, std::uint64_t) {
  const auto t0 = Clock::now();
  for (std::uint64_t i = 0; i < 256; ++i) {
    const TruthTable f = table_from_index(3, i);
    const Rational k = khrapchenko_K(f);
    const KminResult km = khrapchenko_Kmin_argmax(f);
    t.expect(k / 4 <= km.value && km.value <= k, [&] {
      return "K/4 <= Kmin <= K fails for " + f.to_text() + " (K=" + format_rational(k) +
             ", Kmin=" + std::to_string(km.value) + ")";
    });
    if (km.value > 0) {
      const Relation r = relation_from_sets(f, km.cut.ones, km.cut.zeros);
      const Rational amb = amb_relation_value(f, r);
      t.expect(amb >= km.value, [&] { return "Amb of the Kmin cut below Kmin for " + f.to_text(); });
    }
  }
  const TruthTable p3 = parity_tt(3);
  t.expect(khrapchenko_K(p3) == 9, [] { return "K(parity_3) != 9"; });
  t.expect(khrapchenko_Kmin(p3) == 9, [] { return "Kmin(parity_3) != 9"; });
  const double secs = seconds_since(t0);
  t.expect(secs < 60.0, [&] { return "measures suite took " + fmt_seconds(secs); });
}

void lower_bound_suite(Tally& t, std::uint64_t seed) {
  for (int m = 0; m <= 4; ++m) {
    const SizeTable& table = cached_size_table(m);
    for (std::uint64_t i = 0; i < table.function_count(); ++i) {
      const TruthTable f = table_from_index(m, i);
      t.expect(table.size(i) >= khrapchenko_Kmin(f), [&] { return "L < Kmin for " + f.to_text(); });
    }
  }
  Rng rng(derive_seed(seed, 3));
  long sampled = 0;
  for (std::uint64_t i = 1; i < 255; ++i) {
    const TruthTable f = table_from_index(3, i);
    for (int k = 0; k < 1000; ++k) {
      const auto d = testgen::random_pairs(rng, f);
      const Rational am = am_cert_value(*d);
      ++sampled;
      t.expect(am <= 9, [&] { return "am certificate " + format_rational(am) + " > 9 for " + f.to_text(); });
    }
  }
  t.note(std::to_string(sampled) + " sampled distributions");
}

void fixing_hiding_suite(Tally& t, std::uint64_t) {
  for (auto p : {q(1, 5), q(1, 3), q(1, 2)}) {
    const Rational expect = 2 * p / (1 - p);
    for (int n = 1; n <= 3; ++n) {
      const TightParams tp = tightest_fixing(p_random_restriction(n, p));
      t.expect(tp.bounded && tp.q0 == expect && tp.q1 == expect, [&] {
        return "restriction n=" + std::to_string(n) + " p=" + format_rational(p) + ": got (" +
               format_rational(tp.q0) + ", " + format_rational(tp.q1) + ")";
      });
    }
  }
  auto hiding_is = [&](const ProjDistribution& d, const Rational& expect, const std::string& name) {
    const TightParams tp = tightest_hiding(d);
    t.expect(tp.bounded && tp.q0 == expect && tp.q1 == expect, [&] {
      return name + ": got (" + format_rational(tp.q0) + ", " + format_rational(tp.q1) + ")";
    });
  };
  for (int n = 1; n <= 4; ++n) hiding_is(random_edge(n), q(1, n), "random_edge(" + std::to_string(n) + ")");
  hiding_is(random_m_alive(3, 1), q(1, 3), "random_m_alive(3,1)");
  hiding_is(random_m_alive(4, 2), q(1, 3), "random_m_alive(4,2)");
  hiding_is(majority_block(3, 1), q(1, 2), "majority_block(3,1)");
}

void single_literal_suite(Tally& t, std::uint64_t) {
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::pair<std::string, ProjDistribution>> families;
    for (auto p : {q(1, 5), q(1, 3), q(1, 2)}) {
      families.emplace_back("restriction p=" + format_rational(p), p_random_restriction(n, p));
    }
    if (n >= 2) families.emplace_back("converted random_edge", hiding_to_fixing(random_edge(n)).result);
    for (const auto& [name, d] : families) {
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << (1u << n)); ++i) {
        const TruthTable f = table_from_index(n, i);
        const SqrtBoundCheck c = single_literal_check(f, d);
        t.expect(c.holds, [&] {
          return name + " n=" + std::to_string(n) + " f=" + f.to_text() + ": Pr=" + format_rational(c.lhs) +
                 ", q^2 L=" + format_rational(c.bound_squared);
        });
      }
    }
  }
}

void reduction_suite(Tally& t, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 6));
  for (int k = 0; k < 10000; ++k) {
    const int leaves = 1 + static_cast<int>(uniform_below(rng, 8));
    const Formula phi = random_formula(rng, leaves, 3);
    const int m = 1 + static_cast<int>(uniform_below(rng, 2));
    const Projection pi = testgen::random_projection(rng, 3, m);
    const ReductionCheck r = reduction_bound_check(phi, pi);
    t.expect(r.holds, [&] {
      return to_string(phi) + " under " + pi.to_text() + ": L=" + std::to_string(r.lhs) +
             " > " + std::to_string(r.rhs);
    });
  }
}

PairDistribution parity2_unit_edges() {
  std::vector<std::pair<Word, Word>> support;
  for (Word a : {Word{0, 1}, Word{1, 0}}) {
    for (Word b : {Word{0, 0}, Word{1, 1}}) support.emplace_back(a, b);
  }
  return uniform_pair_distribution(2, 2, support);
}

void conversion_suite(Tally& t, std::uint64_t seed) {
  const std::vector<std::pair<std::string, ProjDistribution>> inputs = {
      {"random_edge(3)", random_edge(3)},
      {"parity_2 adversary", adversary_to_hiding(parity2_unit_edges())}};
  for (const auto& [name, d] : inputs) {
    const TightParams h = tightest_hiding(d);
    const HidingToFixing conv = hiding_to_fixing(d);
    const long m = d.target_arity();
    const ProjVerdict v = is_fixing(conv.result, 4 * m * m * h.q0, 4 * m * m * h.q1);
    t.expect(h.bounded && v.holds, [&] {
      return name + ": converted distribution not (4m^2 q0, 4m^2 q1)-fixing" +
             (v.violation ? ": " + format_violation(*v.violation) : std::string());
    });
    t.expect(conv.unchanged_probability >= q(1, 2),
             [&] { return name + ": Pr[p' = p] = " + format_rational(conv.unchanged_probability); });
  }
  Rng rng(derive_seed(seed, 7));
  auto draw = [&] {
    const int n = 1 + static_cast<int>(uniform_below(rng, 2));
    const int m = 1 + static_cast<int>(uniform_below(rng, 2));
    const int points = 1 + static_cast<int>(uniform_below(rng, 4));
    return testgen::random_proj_distribution(rng, n, m, points);
  };
  for (int k = 0; k < 100; ++k) {
    const ProjDistribution a = draw();
    const ProjDistribution b = draw();
    const ProjDistribution joined = join(a, b);
    const ProjDistribution folded = m_fold(a, 2);
    const TightParams ha = tightest_hiding(a), hb = tightest_hiding(b);
    if (ha.bounded && hb.bounded) {
      t.expect(is_hiding(joined, std::max(ha.q0, hb.q0), std::max(ha.q1, hb.q1)).holds,
               [&] { return "join loses hiding parameters:\n" + format_proj_distribution(a) + format_proj_distribution(b); });
    }
    if (ha.bounded) {
      t.expect(is_hiding(folded, ha.q0, ha.q1).holds,
               [&] { return "2-fold loses hiding parameters:\n" + format_proj_distribution(a); });
    }
    const TightParams fa = tightest_fixing(a), fb = tightest_fixing(b);
    if (fa.bounded && fb.bounded) {
      t.expect(is_fixing(joined, std::max(fa.q0, fb.q0), std::max(fa.q1, fb.q1)).holds,
               [&] { return "join loses fixing parameters:\n" + format_proj_distribution(a) + format_proj_distribution(b); });
    }
    if (fa.bounded) {
      t.expect(is_fixing(folded, fa.q0, fa.q1).holds,
               [&] { return "2-fold loses fixing parameters:\n" + format_proj_distribution(a); });
    }
  }
}

void composition_suite(Tally& t, std::uint64_t) {
  const ProjDistribution par = adversary_to_hiding(parity2_unit_edges());
  struct Case {
    std::string name;
    TruthTable f, g;
    ProjDistribution d;
  };
  const std::vector<Case> cases = {{"AND_2 o parity_2", and_tt(2), parity_tt(2), par},
                                   {"parity_2 o parity_2", parity_tt(2), parity_tt(2), par},
                                   {"parity_2 o MAJ_3", parity_tt(2), majority_tt(3), majority_block(3, 1)}};
  for (const auto& c : cases) {
    const CompositionVerdict v = composition_identity_check(c.f, c.g, c.d);
    t.expect(v.holds, [&] {
      return c.name + ": restriction " + v.witness->pi.to_text() + " gives " + v.witness->restricted.to_text();
    });
    t.note(c.name + " " + std::to_string(v.points_checked) + " points, L=" + std::to_string(v.f_size));
  }
}

void surj_suite(Tally& t, std::uint64_t seed) {
  const UFormula phi = surj_uformula(1);
  t.expect(phi.size() == 24 && phi.depth() == 3, [&] {
    return "surj formula size " + std::to_string(phi.size()) + " depth " + std::to_string(phi.depth());
  });
  const SurjShape sh = surj_shape(1);
  const TruthTable ref = surj_tt(1);
  int valid = 0;
  for (std::uint64_t x = 0; x < ref.size(); ++x) {
    bool ok = true;
    for (int j = 0; j < sh.positions; ++j) ok = ok && surj_symbol(sh, x, j) >= 0;
    if (!ok) continue;
    ++valid;
    t.expect(phi.eval(x) == ref[x], [&] { return "surj formula disagrees at input " + std::to_string(x); });
  }
  t.expect(valid == 81, [&] { return std::to_string(valid) + " valid encodings, expected 81"; });
  const Rational c1 = khrapchenko_cert_value(surj_pair_distribution(1));
  const Rational c2 = khrapchenko_cert_value(surj_pair_distribution(2));
  t.expect(c1 == 8, [&] { return "cert(s=1) = " + format_rational(c1); });
  t.expect(c2 >= 18, [&] { return "cert(s=2) = " + format_rational(c2); });

  const AndreevShape shape = andreev_shape(2, 1);
  const UFormula big = andreev_formula(2, 1);
  t.expect(big.depth() == 4, [&] { return "andreev depth " + std::to_string(big.depth()); });
  Rng rng(derive_seed(seed, 9));
  for (int k = 0; k < 1000; ++k) {
    std::vector<bool> in(static_cast<std::size_t>(shape.arity()));
    for (int z = 0; z < 4; ++z) in[static_cast<std::size_t>(z)] = coin(rng);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < sh.positions; ++j) {
        const auto sym = uniform_below(rng, static_cast<std::uint64_t>(sh.alphabet));
        for (int b = 0; b < sh.bits_per_symbol; ++b) {
          in[static_cast<std::size_t>(shape.block_variable(i, surj_variable(sh, j, b)) - 1)] = (sym >> b) & 1;
        }
      }
    }
    t.expect(big.eval(in) == andreev_eval(shape, in), [&] { return "andreev formula disagrees on sample " + std::to_string(k); });
  }
  t.note("cert(1)=" + format_rational(c1) + ", cert(2)=" + format_rational(c2) + ", F size " + std::to_string(big.size()));
}

void shrinkage_suite(Tally& t, std::uint64_t seed) {
  const Rational e1 = expected_L_exact(parity_tt(2), p_random_restriction(2, q(1, 2)));
  t.expect(e1 == q(3, 2), [&] { return "E[L(parity_2|p)] at p=1/2 is " + format_rational(e1); });
  const Rational e2 = expected_L_exact(parity_tt(6), random_m_alive(6, 2));
  t.expect(e2 == 4, [&] { return "E[L] for parity_6 under 2 alive variables is " + format_rational(e2); });

  CurveSpec exact;
  exact.parity_t = 2;
  exact.p_grid = {q(1, 4), q(1, 8)};
  // Eight variables leave too many alive for the exact oracle, so t = 3
  // runs in Monte Carlo mode.
  CurveSpec mc = exact;
  mc.parity_t = 3;
  mc.mode = CurveMode::MonteCarlo;
  mc.trials = 4000;
  mc.seed = derive_seed(seed, 10);
  std::vector<CurveRow> rows = shrinkage_curve(exact);
  const std::vector<CurveRow> mc_rows = shrinkage_curve(mc);
  rows.insert(rows.end(), mc_rows.begin(), mc_rows.end());
  for (const auto& r : rows) {
    t.expect(r.ratio <= kShrinkageRatioThreshold, [&] {
      return "ratio " + std::to_string(r.ratio) + " at n=" + std::to_string(r.n) + " p=" + r.param;
    });
  }
  const std::string again = format_curve_csv(shrinkage_curve(mc));
  t.expect(again == format_curve_csv(mc_rows), [] { return "Monte Carlo curve not reproducible"; });
  const Formula phi = parity_formula(3);
  const ProjDistribution d = p_random_restriction(8, q(1, 4));
  const McEstimate serial = expected_L_mc(phi, d, 2000, mc.seed, false);
  const McEstimate parallel = expected_L_mc(phi, d, 2000, mc.seed, true);
  t.expect(serial.mean == parallel.mean && serial.stderr_of_mean == parallel.stderr_of_mean,
           [] { return "serial and parallel Monte Carlo differ"; });
  std::string ratios;
  for (const auto& r : rows) ratios += (ratios.empty() ? "" : " ") + std::to_string(r.ratio).substr(0, 5);
  t.note("ratios " + ratios);
}

// Uniform over all unit-distance pairs of f^-1(1) x f^-1(0).
PairDistribution uniform_khrapchenko(const TruthTable& f) {
  std::vector<std::pair<Word, Word>> support;
  for (std::uint64_t a = 0; a < f.size(); ++a) {
    if (!f[a]) continue;
    for (int i = 0; i < f.arity(); ++i) {
      const std::uint64_t b = a ^ (std::uint64_t{1} << i);
      if (!f[b]) support.emplace_back(word_from_index(a, f.arity()), word_from_index(b, f.arity()));
    }
  }
  return uniform_pair_distribution(2, f.arity(), support);
}

void kw_suite(Tally& t, std::uint64_t seed) {
  std::vector<TruthTable> fs;
  for (std::uint64_t i = 1; i < 15; ++i) fs.push_back(table_from_index(2, i));
  for (std::uint64_t i = 0; fs.size() < 64; ++i) {
    const TruthTable f = random_tt(3, derive_seed(seed, 1000 + i));
    if (!f.is_constant()) fs.push_back(f);
  }
  for (const auto& f : fs) {
    const Formula phi = witness_formula(f);
    const ProtocolTree p = kw_protocol(phi, f);
    t.expect(p.leaf_count() == phi.size() && phi.size() == L_exact(f),
             [&] { return "leaf count " + std::to_string(p.leaf_count()) + " for " + f.to_text(); });
    const KwVerdict v = kw_verify(p, f);
    t.expect(v.holds, [&] {
      return "protocol for " + f.to_text() + " outputs " + std::to_string(v.output) + " on a=" +
             std::to_string(v.a) + " b=" + std::to_string(v.b);
    });
    const InfoCheck info = info_inequality_check(
        [&](const Word& a, const Word& b) { return p.run(index_from_word(a), index_from_word(b)); },
        uniform_khrapchenko(f));
    t.expect(info.holds, [&] {
      return "information inequality fails for " + f.to_text() + ": " + std::to_string(info.lhs) + " vs " +
             std::to_string(info.rhs);
    });
  }
  t.note(std::to_string(fs.size()) + " functions");
}

struct Entry {
  const char* suite;
  const char* statement;
  void (*run)(Tally&, std::uint64_t);
};

const Entry kEntries[] = {
    {"oracle", "exact size tables; L(f|rho) <= L(f); L invariant under negations", oracle_suite},
    {"measures", "K/4 <= Kmin <= K; Kmin(parity_3) = 9; Amb(Kmin cut) >= Kmin", measures_suite},
    {"lower-bounds", "L(f) >= Kmin(f) on <= 4 variables; Am certificate <= n^2", lower_bound_suite},
    {"fixing-hiding", "tightest fixing/hiding parameters of the named families", fixing_hiding_suite},
    {"single-literal", "Pr[L(f|p) = 1]^2 <= q^2 L(f) for fixing p", single_literal_suite},
    {"reduction", "L(phi|pi) <= sum over reducible gates of (depth + 2), +1 if literal", reduction_suite},
    {"conversion", "hiding to fixing at 4m^2 q with Pr[p' = p] >= 1/2; join and m-fold keep parameters",
     conversion_suite},
    {"composition", "(f o g)|_{p^m} = f up to negations, same L", composition_suite},
    {"surj", "surjectivity formula, certificate (s+1)(2s+2), depth-4 Andreev function", surj_suite},
    {"shrinkage", "E[L(phi|p)] values and ratio to q^2 d^2 s + q sqrt(s)", shrinkage_suite},
    {"kw", "KW protocol leaves = formula size; I(a,b;l) vs internal information", kw_suite},
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : kEntries) out.emplace_back(e.suite);
    return out;
  }();
  return names;
}

CheckResult run_criterion(int criterion, std::uint64_t seed) {
  const int count = static_cast<int>(std::size(kEntries));
  if (criterion < 1 || criterion > count) {
    throw std::out_of_range("criterion must lie in 1.." + std::to_string(count));
  }
  const Entry& e = kEntries[criterion - 1];
  CheckResult r;
  r.criterion = criterion;
  r.suite = e.suite;
  r.statement = e.statement;
  const auto t0 = Clock::now();
  Tally t;
  try {
    e.run(t, seed);
    r.pass = t.ok();
    r.detail = t.detail();
  } catch (const std::exception& ex) {
    r.pass = false;
    r.detail = std::string("exception: ") + ex.what();
  }
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
  const auto& names = suite_names();
  std::vector<CheckResult> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (suite == "all" || suite == names[i]) out.push_back(run_criterion(static_cast<int>(i) + 1, seed));
  }
  if (out.empty()) throw std::invalid_argument("unknown suite '" + suite + "'");
  return out;
}

}  // namespace shrinklab
