#include <gtest/gtest.h>

#include "proj_gen.hpp"
#include "shrinklab/named.hpp"
#include "shrinklab/proj_distribution.hpp"

namespace shrinklab {
namespace {

Rational q(long a, long b) { return make_rational(a, b); }

Word w(const std::string& bits) {
  Word out;
  for (char c : bits) out.push_back(static_cast<std::uint8_t>(c - '0'));
  return out;
}

ProjDistribution point_mass(const Projection& p) {
  return ProjDistribution::exact(p.source_arity(), p.target_arity(), {{p, Rational(1)}});
}

ProjDistribution parity2_hiding() {
  return adversary_to_hiding(uniform_pair_distribution(
      2, 2, {{w("10"), w("00")}, {w("10"), w("11")}, {w("01"), w("00")}, {w("01"), w("11")}}));
}

// Every projection from n to m variables.
std::vector<Projection> all_projections(int n, int m) {
  std::vector<Projection> out;
  const std::uint64_t per = 2 + 2 * static_cast<std::uint64_t>(m);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= per;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<Image> images;
    std::uint64_t c = code;
    for (int i = 0; i < n; ++i, c /= per) {
      const auto v = c % per;
      images.push_back(v < 2 ? Image::constant(v == 1)
                             : Image::literal(static_cast<int>((v - 2) / 2) + 1, (v - 2) % 2 == 1));
    }
    out.emplace_back(m, std::move(images));
  }
  return out;
}

// Direct reading of the two definitions over the whole projection space.
struct BruteTight {
  bool bounded = true;
  Rational q0 = 0;
  Rational q1 = 0;
};

BruteTight brute_fixing(const ProjDistribution& d) {
  BruteTight t;
  for (const auto& pi : all_projections(d.source_arity(), d.target_arity())) {
    const Rational pr = d.probability(pi);
    for (bool sigma : {false, true}) {
      for (int i = 1; i <= d.source_arity(); ++i) {
        Rational lhs = 0;
        for (const auto& [p, wt] : d.support()) {
          if (p(i).is_literal() && substitute(p, p(i).var(), sigma) == pi) lhs += wt;
        }
        if (lhs == 0) continue;
        if (pr == 0) {
          t.bounded = false;
          continue;
        }
        auto& slot = sigma ? t.q1 : t.q0;
        slot = std::max(slot, Rational(lhs / pr));
      }
    }
  }
  return t;
}

BruteTight brute_hiding(const ProjDistribution& d) {
  BruteTight t;
  for (const auto& pi : all_projections(d.source_arity(), d.target_arity())) {
    for (bool sigma : {false, true}) {
      for (int j = 1; j <= d.target_arity(); ++j) {
        Rational cond = 0;
        for (const auto& [p, wt] : d.support()) {
          if (substitute(p, j, sigma) == pi) cond += wt;
        }
        if (cond == 0) continue;
        for (int i = 1; i <= d.source_arity(); ++i) {
          Rational joint = 0;
          for (const auto& [p, wt] : d.support()) {
            if (substitute(p, j, sigma) == pi && p(i).is_literal() && p(i).var() == j) joint += wt;
          }
          auto& slot = sigma ? t.q1 : t.q0;
          slot = std::max(slot, Rational(joint / cond));
        }
      }
    }
  }
  return t;
}

TEST(Projections, RestrictionFamilyPoints) {
  const auto d = p_random_restriction(1, q(1, 2));
  ASSERT_EQ(d.support().size(), 3u);
  EXPECT_EQ(d.probability(make_restriction({-1})), q(1, 2));
  EXPECT_EQ(d.probability(make_restriction({0})), q(1, 4));
  EXPECT_EQ(d.probability(make_restriction({1})), q(1, 4));
  EXPECT_EQ(p_random_restriction(4, q(1, 3)).support().size(), 81u);
}

TEST(Projections, RandomEdgeAndAliveSupports) {
  const auto e = random_edge(2);
  ASSERT_EQ(e.support().size(), 8u);
  for (const auto& [p, wt] : e.support()) EXPECT_EQ(wt, q(1, 8));
  EXPECT_EQ(random_edge(3).support().size(), 24u);
  // n!/(n-m)! * 2^m * 2^(n-m)
  EXPECT_EQ(random_m_alive(4, 2).support().size(), 12u * 16u);
  EXPECT_EQ(random_m_alive(3, 3).support().size(), 6u * 8u);
  EXPECT_THROW(random_m_alive(2, 3), std::invalid_argument);
}

TEST(Projections, MajorityBlockSimplifiesToTheLiteral) {
  const auto d = majority_block(3, 1);
  ASSERT_EQ(d.support().size(), 6u);
  TruthTable y(1);
  y.set(1, true);
  for (const auto& [p, wt] : d.support()) {
    EXPECT_EQ(wt, q(1, 6));
    EXPECT_EQ(restrict_tt(majority_tt(3), p), y);
  }
  EXPECT_EQ(majority_block(3, 2).support().size(), 36u);
  EXPECT_EQ(majority_block(5, 1).support().size(), 5u * 6u);
  EXPECT_THROW(majority_block(4, 1), std::invalid_argument);
}

TEST(Projections, FixingExamples) {
  const auto d = p_random_restriction(2, q(1, 5));
  EXPECT_TRUE(is_fixing(d, q(1, 2), q(1, 2)).holds);
  const auto bad = is_fixing(d, q(1, 3), q(1, 3));
  ASSERT_FALSE(bad.holds);
  ASSERT_TRUE(bad.violation);
  EXPECT_GT(bad.violation->lhs, bad.violation->rhs);
  EXPECT_FALSE(format_violation(*bad.violation).empty());

  const auto constants = point_mass(Projection(1, {Image::constant(true), Image::constant(false)}));
  EXPECT_TRUE(is_fixing(constants, 0, 0).holds);
  EXPECT_TRUE(is_hiding(constants, 0, 0).holds);
}

TEST(Projections, TightestFixingOfRestrictionsIsTwoPOverOneMinusP) {
  for (auto p : {q(1, 5), q(1, 3), q(1, 2), q(2, 3)}) {
    for (int n = 1; n <= 3; ++n) {
      const auto t = tightest_fixing(p_random_restriction(n, p));
      ASSERT_TRUE(t.bounded);
      const Rational expect = 2 * p / (1 - p);
      EXPECT_EQ(t.q0, expect);
      EXPECT_EQ(t.q1, expect);
    }
  }
  const auto t = tightest_fixing(p_random_restriction(3, q(1, 3)));
  EXPECT_EQ(t.q0, 1);
  EXPECT_EQ(t.q1, 1);
}

TEST(Projections, HidingExamples) {
  EXPECT_TRUE(is_hiding(random_edge(3), q(1, 3), q(1, 3)).holds);
  EXPECT_FALSE(is_hiding(random_edge(3), q(1, 4), q(1, 4)).holds);
  EXPECT_TRUE(is_hiding(random_m_alive(4, 2), q(1, 3), q(1, 3)).holds);
  for (int n = 2; n <= 4; ++n) {
    const auto t = tightest_hiding(random_edge(n));
    EXPECT_EQ(t.q0, q(1, n));
    EXPECT_EQ(t.q1, q(1, n));
  }
  for (int n = 2; n <= 4; ++n) {
    for (int m = 1; m <= n; ++m) {
      const auto t = tightest_hiding(random_m_alive(n, m));
      EXPECT_EQ(t.q0, q(1, n - m + 1)) << n << " " << m;
      EXPECT_EQ(t.q1, q(1, n - m + 1)) << n << " " << m;
    }
  }
}

TEST(Projections, NamedFamiliesThatOnlyHide) {
  // Substituting the single live variable yields a constant string the
  // distribution never outputs, so these are not fixing for any q.
  for (const auto& d : {random_edge(2), random_m_alive(3, 2), majority_block(3, 1)}) {
    const auto t = tightest_fixing(d);
    EXPECT_FALSE(t.bounded);
    ASSERT_TRUE(t.witness0);
    EXPECT_EQ(t.witness0->rhs, 0);
  }
  const auto maj = tightest_hiding(majority_block(3, 1));
  EXPECT_EQ(maj.q0, q(1, 2));
  EXPECT_EQ(maj.q1, q(1, 2));
  EXPECT_EQ(tightest_hiding(majority_block(5, 1)).q1, q(1, 3));
}

TEST(Projections, CheckersMatchBruteForceOnRandomDistributions) {
  Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 3));
    const int m = 1 + static_cast<int>(uniform_below(rng, 2));
    const auto d = testgen::random_proj_distribution(rng, n, m, 1 + static_cast<int>(uniform_below(rng, 6)));
    const auto fix = tightest_fixing(d);
    const auto fix_brute = brute_fixing(d);
    ASSERT_EQ(fix.bounded, fix_brute.bounded);
    if (fix.bounded) {
      EXPECT_EQ(fix.q0, fix_brute.q0);
      EXPECT_EQ(fix.q1, fix_brute.q1);
      EXPECT_TRUE(is_fixing(d, fix.q0, fix.q1).holds);
      if (fix.q0 > 0) {
        EXPECT_FALSE(is_fixing(d, fix.q0 / 2, fix.q1).holds);
      }
    }
    const auto hid = tightest_hiding(d);
    const auto hid_brute = brute_hiding(d);
    EXPECT_EQ(hid.q0, hid_brute.q0);
    EXPECT_EQ(hid.q1, hid_brute.q1);
    EXPECT_TRUE(is_hiding(d, hid.q0, hid.q1).holds);
    if (hid.q1 > 0) {
      EXPECT_FALSE(is_hiding(d, hid.q0, hid.q1 / 2).holds);
    }
  }
}

TEST(Projections, FirstViolationIsDeterministic) {
  const auto d = random_edge(3);
  const auto a = is_hiding(d, q(1, 5), q(1, 5));
  const auto b = is_hiding(d, q(1, 5), q(1, 5));
  ASSERT_TRUE(a.violation && b.violation);
  EXPECT_EQ(format_violation(*a.violation), format_violation(*b.violation));
}

TEST(Projections, JoinExamples) {
  const Projection a(1, {Image::pos(1), Image::constant(false)});
  const Projection b(1, {Image::neg(1)});
  const auto j = join(point_mass(a), point_mass(b));
  ASSERT_EQ(j.support().size(), 1u);
  EXPECT_EQ(j.support()[0].first, concat(a, b));

  const auto ee = join(random_edge(2), random_edge(2));
  EXPECT_EQ(ee.support().size(), 64u);
  EXPECT_EQ(ee.target_arity(), 2);
  EXPECT_TRUE(is_hiding(ee, q(1, 2), q(1, 2)).holds);

  const auto rr = join(p_random_restriction(1, q(1, 5)), p_random_restriction(2, q(1, 5)));
  EXPECT_TRUE(is_fixing(rr, q(1, 2), q(1, 2)).holds);
}

TEST(Projections, JoinPreservesCertifiedParameters) {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d1 = testgen::random_proj_distribution(rng, 2, 1, 1 + static_cast<int>(uniform_below(rng, 4)));
    const auto d2 = testgen::random_proj_distribution(rng, 1 + static_cast<int>(uniform_below(rng, 2)), 1,
                                                      1 + static_cast<int>(uniform_below(rng, 4)));
    const auto joined = join(d1, d2);
    const auto h1 = tightest_hiding(d1);
    const auto h2 = tightest_hiding(d2);
    EXPECT_TRUE(is_hiding(joined, std::max(h1.q0, h2.q0), std::max(h1.q1, h2.q1)).holds);
    const auto f1 = tightest_fixing(d1);
    const auto f2 = tightest_fixing(d2);
    if (f1.bounded && f2.bounded) {
      EXPECT_TRUE(is_fixing(joined, std::max(f1.q0, f2.q0), std::max(f1.q1, f2.q1)).holds);
    }
  }
}

TEST(Projections, MFold) {
  const auto d = random_edge(2);
  EXPECT_EQ(m_fold(d, 1).support(), d.support());
  const auto pm = point_mass(Projection(1, {Image::pos(1)}));
  EXPECT_EQ(m_fold(pm, 2).support().size(), 1u);
  const auto h = m_fold(parity2_hiding(), 2);
  EXPECT_EQ(h.support().size(), 16u);
  EXPECT_TRUE(is_hiding(h, q(1, 2), q(1, 2)).holds);
  EXPECT_THROW(m_fold(d, 0), std::invalid_argument);
  // 8^9 points exceed the cap, so the result only samples.
  const auto big = m_fold(d, 9);
  EXPECT_FALSE(big.is_exact());
  EXPECT_THROW(tightest_hiding(big), std::invalid_argument);
  EXPECT_EQ(big.sample(3, 17), big.sample(3, 17));
  EXPECT_EQ(big.sample(3, 17).source_arity(), 18);
}

TEST(Projections, HidingToFixingExamples) {
  const auto single = hiding_to_fixing(point_mass(Projection(1, {Image::pos(1)})));
  EXPECT_EQ(single.unchanged_probability, q(1, 2));
  EXPECT_EQ(single.identity_probability, q(1, 2));
  EXPECT_EQ(single.result.support().size(), 3u);

  const auto edge = hiding_to_fixing(random_edge(3));
  EXPECT_TRUE(is_fixing(edge.result, q(4, 3), q(4, 3)).holds);

  const auto constants = point_mass(Projection(2, {Image::constant(true), Image::constant(false)}));
  EXPECT_EQ(hiding_to_fixing(constants).result.support(), constants.support());
  EXPECT_EQ(hiding_to_fixing(constants).unchanged_probability, 1);
}

TEST(Projections, HidingToFixingBoundsOnRandomInputs) {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + static_cast<int>(uniform_below(rng, 3));
    const auto d = testgen::random_proj_distribution(rng, 1 + static_cast<int>(uniform_below(rng, 3)), m,
                                                     1 + static_cast<int>(uniform_below(rng, 5)));
    const auto h = tightest_hiding(d);
    const auto r = hiding_to_fixing(d);
    const Rational scale = 4 * m * m;
    EXPECT_TRUE(is_fixing(r.result, scale * h.q0, scale * h.q1).holds);
    const auto k = max_targets_per_position(d);
    EXPECT_LE(k, m);
    EXPECT_GE(r.unchanged_probability, q(1, 2));
    EXPECT_GE(r.identity_probability, q(1, 2));
    Rational pow = 1;
    for (int j = 0; j < m; ++j) pow *= q(2 * m - 1, 2 * m);
    EXPECT_EQ(r.identity_probability, pow);
    for (const auto& pt : r.per_point) {
      // The identity event has the same probability whatever p is.
      EXPECT_EQ(pt.identity_given_p, r.identity_probability);
      EXPECT_GE(pt.unchanged_given_p, pt.identity_given_p);
    }
  }
}

TEST(Projections, AdversaryToHiding) {
  const auto d = parity2_hiding();
  EXPECT_EQ(d.support().size(), 4u);
  const auto t = tightest_hiding(d);
  EXPECT_EQ(t.q0, q(1, 2));
  EXPECT_EQ(t.q1, q(1, 2));

  const auto single = adversary_to_hiding(uniform_pair_distribution(2, 2, {{w("11"), w("01")}}));
  ASSERT_EQ(single.support().size(), 1u);
  EXPECT_EQ(single.support()[0].first, Projection(1, {Image::pos(1), Image::constant(true)}));

  EXPECT_THROW(adversary_to_hiding(uniform_pair_distribution(3, 1, {{{2}, {0}}})), std::invalid_argument);
}

TEST(Projections, AdversaryProjectionsNeverCollapse) {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(uniform_below(rng, 3));
    const TruthTable f = random_tt(n, rng());
    std::vector<std::pair<Word, Word>> support;
    std::vector<Word> ones, zeros;
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      Word word;
      for (int i = 0; i < n; ++i) word.push_back(static_cast<std::uint8_t>((x >> i) & 1));
      (f[x] ? ones : zeros).push_back(word);
    }
    if (ones.empty() || zeros.empty()) continue;
    for (int k = 0; k < 4; ++k) {
      support.emplace_back(ones[uniform_below(rng, ones.size())], zeros[uniform_below(rng, zeros.size())]);
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const auto mu = uniform_pair_distribution(2, n, support);
    const auto d = adversary_to_hiding(mu);
    TruthTable y(1), ny(1);
    y.set(1, true);
    ny.set(0, true);
    for (const auto& [p, wt] : d.support()) {
      const auto r = restrict_tt(f, p);
      EXPECT_TRUE(r == y || r == ny);
    }
    // Tight parameters: max over b (resp. a) and i of Pr[a_i != b_i | b].
    Rational expect[2] = {0, 0};
    for (int side = 0; side < 2; ++side) {
      for (const auto& anchor : side ? ones : zeros) {
        Rational mass = 0;
        std::vector<Rational> differ(static_cast<std::size_t>(n), Rational(0));
        for (const auto& pr : mu.pairs()) {
          if ((side ? pr.a : pr.b) != anchor) continue;
          mass += pr.weight;
          for (int i = 0; i < n; ++i) {
            if (pr.a[static_cast<std::size_t>(i)] != pr.b[static_cast<std::size_t>(i)]) {
              differ[static_cast<std::size_t>(i)] += pr.weight;
            }
          }
        }
        if (mass == 0) continue;
        for (const auto& v : differ) expect[side] = std::max(expect[side], Rational(v / mass));
      }
    }
    const auto t = tightest_hiding(d);
    EXPECT_EQ(t.q0, expect[0]);
    EXPECT_EQ(t.q1, expect[1]);
  }
}

TEST(Projections, FilterConditioning) {
  const auto d = p_random_restriction(2, q(1, 2));
  const FilterPredicate all{"true", [](const Projection&) { return true; }};
  EXPECT_EQ(condition_on_filter(d, all).support(), d.support());

  const FilterPredicate x1_fixed{"x1 fixed", [](const Projection& p) { return p(1).is_constant(); }};
  EXPECT_FALSE(check_filter_closure(d, x1_fixed));
  const auto c = condition_on_filter(d, x1_fixed);
  EXPECT_EQ(c.support().size(), 6u);
  EXPECT_TRUE(is_fixing(c, 2, 2).holds);
  EXPECT_EQ(tightest_fixing(c).q0, 2);

  const FilterPredicate not_one{"x1 != 1", [](const Projection& p) { return p(1) != Image::constant(true); }};
  const auto witness = check_filter_closure(d, not_one);
  ASSERT_TRUE(witness);
  EXPECT_TRUE(not_one.accepts(witness->pi));
  EXPECT_FALSE(not_one.accepts(substitute(witness->pi, witness->y, witness->sigma)));
  EXPECT_THROW(condition_on_filter(d, not_one), std::invalid_argument);

  const FilterPredicate none{"false", [](const Projection&) { return false; }};
  EXPECT_THROW(condition_on_filter(d, none), std::invalid_argument);
}

TEST(Projections, ConditioningPreservesFixingOnRandomFilters) {
  Rng rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(uniform_below(rng, 2));
    const auto d = p_random_restriction(n, q(1 + static_cast<long>(uniform_below(rng, 3)), 5));
    const auto t = tightest_fixing(d);
    // Upward-closed in the set of fixed positions, hence closed.
    const std::uint64_t mask = 1 + uniform_below(rng, (std::uint64_t{1} << n) - 1);
    const std::uint64_t bits = uniform_below(rng, std::uint64_t{1} << n);
    const FilterPredicate f{"fixed pattern", [=](const Projection& p) {
                              for (int i = 0; i < n; ++i) {
                                if (!((mask >> i) & 1)) continue;
                                if (p(i + 1) != Image::constant((bits >> i) & 1)) return false;
                              }
                              return true;
                            }};
    ASSERT_FALSE(check_filter_closure(d, f));
    EXPECT_TRUE(is_fixing(condition_on_filter(d, f), t.q0, t.q1).holds);
  }
}

TEST(Projections, GeneralizedHiding) {
  Rng rng(31);
  for (const auto& d : {random_edge(3), random_m_alive(3, 2), majority_block(3, 1), parity2_hiding()}) {
    const auto t = tightest_hiding(d);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<RandomEvent> events;
      long total = 0;
      std::vector<long> raw;
      for (int k = 0; k < 3; ++k) {
        raw.push_back(1 + static_cast<long>(uniform_below(rng, 3)));
        total += raw.back();
      }
      for (int k = 0; k < 3; ++k) {
        const std::uint64_t salt = rng();
        events.push_back({[salt](const Projection& p) {
                            return (std::hash<std::string>{}(p.to_text()) ^ salt) % 3 != 0;
                          },
                          make_rational(raw[static_cast<std::size_t>(k)], total)});
      }
      const auto [g0, g1] = generalized_hiding_bound(d, events);
      EXPECT_LE(g0, t.q0);
      EXPECT_LE(g1, t.q1);
    }
  }
}

TEST(Projections, DistributionValidation) {
  const Projection a(1, {Image::pos(1)});
  const Projection b(1, {Image::neg(1)});
  EXPECT_THROW(ProjDistribution::exact(1, 1, {{a, q(1, 2)}}), std::invalid_argument);
  EXPECT_THROW(ProjDistribution::exact(1, 1, {{a, q(3, 2)}, {b, q(-1, 2)}}), std::invalid_argument);
  EXPECT_THROW(ProjDistribution::exact(2, 1, {{a, Rational(1)}}), std::invalid_argument);
  const auto merged = ProjDistribution::exact(1, 1, {{a, q(1, 4)}, {b, q(1, 2)}, {a, q(1, 4)}});
  EXPECT_EQ(merged.support().size(), 2u);
  EXPECT_EQ(merged.probability(a), q(1, 2));
  EXPECT_THROW(p_random_restriction(2, 0), std::invalid_argument);
  EXPECT_THROW(p_random_restriction(2, 1), std::invalid_argument);
}

TEST(Projections, SamplerFormsAreReproducible) {
  const auto big = p_random_restriction(16, q(1, 4));
  EXPECT_FALSE(big.is_exact());
  EXPECT_THROW(is_fixing(big, 1, 1), std::invalid_argument);
  EXPECT_EQ(big.sample(42, 7), big.sample(42, 7));
  EXPECT_NE(big.sample(42, 7), big.sample(42, 8));
  EXPECT_FALSE(random_edge(24).is_exact());

  // Exact sampling hits support points with roughly their weights.
  const auto d = p_random_restriction(1, q(1, 2));
  int live = 0;
  for (std::uint64_t k = 0; k < 4000; ++k) live += d.sample(9, k)(1).is_literal();
  EXPECT_NEAR(live / 4000.0, 0.5, 0.05);
}

TEST(Projections, FileRoundTrip) {
  for (const auto& d : {random_edge(2), p_random_restriction(2, q(1, 3)), parity2_hiding()}) {
    const auto text = format_proj_distribution(d);
    const auto back = parse_proj_distribution(text);
    EXPECT_EQ(back.support(), d.support());
    EXPECT_EQ(back.target_arity(), d.target_arity());
  }
  EXPECT_THROW(parse_proj_distribution("projdist 1 1\nx1 = y1\n"), std::invalid_argument);
  EXPECT_THROW(parse_proj_distribution("projdist 2 1\nw 1/1\nx1 = y1\n"), std::invalid_argument);
  EXPECT_THROW(parse_proj_distribution("projdist 1 1\nw 1/1\nx1 = y2\n"), std::out_of_range);
  EXPECT_THROW(parse_proj_distribution("nonsense"), std::invalid_argument);
}

}  // namespace
}  // namespace shrinklab
