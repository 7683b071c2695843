#include <gtest/gtest.h>

#include <bit>

#include "shrinklab/formula.hpp"
#include "shrinklab/named.hpp"
#include "shrinklab/projection.hpp"
#include "shrinklab/truth_table.hpp"
#include "test_gen.hpp"

namespace shrinklab {
namespace {

TEST(TruthTable, EvalBasics) {
  const TruthTable and2 = and_tt(2);
  EXPECT_TRUE(tt_eval(and2, 3));
  EXPECT_FALSE(tt_eval(and2, 1));
  EXPECT_FALSE(tt_eval(TruthTable::constant(3, false), 5));
  EXPECT_THROW(tt_eval(and2, 4), std::out_of_range);
}

TEST(TruthTable, ZeroArityConstant) {
  TruthTable one = TruthTable::constant(0, true);
  EXPECT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0]);
  EXPECT_TRUE(one.is_constant());
}

TEST(TruthTable, TextRoundTrip) {
  const TruthTable f = random_tt(5, 11);
  EXPECT_EQ(parse_truth_table(f.to_text()), f);
  EXPECT_EQ(parse_truth_table("tt 2 0110"), parity_tt(2));
  EXPECT_EQ(parse_truth_table("maj:3"), majority_tt(3));
  EXPECT_EQ(parse_truth_table("random:4:9"), random_tt(4, 9));
  EXPECT_THROW(parse_truth_table("tt 3 0110"), std::invalid_argument);
  EXPECT_THROW(parse_truth_table("maj:4"), std::invalid_argument);
  EXPECT_THROW(parse_truth_table("bogus:2"), std::invalid_argument);
}

TEST(TruthTable, EssentialVariablesAndCompress) {
  // x2 XOR x4 inside 5 variables.
  const TruthTable f = TruthTable::literal(5, 2) ^ TruthTable::literal(5, 4);
  const auto vars = f.essential_variables();
  ASSERT_EQ(vars, (std::vector<int>{2, 4}));
  EXPECT_EQ(f.compress(vars), parity_tt(2));
}

TEST(TruthTable, LargeArityWordOps) {
  const TruthTable a = random_tt(10, 1);
  const TruthTable b = random_tt(10, 2);
  const TruthTable c = a & b;
  for (std::uint64_t x = 0; x < a.size(); ++x) EXPECT_EQ(c[x], a[x] && b[x]);
  EXPECT_EQ(~~a, a);
  EXPECT_EQ((a ^ a).count_ones(), 0u);
}

TEST(TruthTable, Fix) {
  const TruthTable f = majority_tt(3);
  const TruthTable g = f.fix(1, true);
  EXPECT_FALSE(g.depends_on(1));
  EXPECT_EQ(g, TruthTable::literal(3, 2) | TruthTable::literal(3, 3));
}

TEST(Compose, Examples) {
  const TruthTable id1 = TruthTable::literal(1, 1);
  const TruthTable g = random_tt(3, 5);
  EXPECT_EQ(compose(id1, g), g);

  const TruthTable expected = (TruthTable::literal(4, 1) | TruthTable::literal(4, 2)) &
                              (TruthTable::literal(4, 3) | TruthTable::literal(4, 4));
  EXPECT_EQ(compose(and_tt(2), or_tt(2)), expected);
  EXPECT_EQ(compose(parity_tt(2), parity_tt(2)), parity_tt(4));
  EXPECT_THROW(compose(parity_tt(5), parity_tt(5)), CapExceeded);
}

TEST(NegateInputs, Examples) {
  const TruthTable f = random_tt(4, 3);
  EXPECT_EQ(negate_inputs(f, 0), f);
  EXPECT_EQ(negate_inputs(and_tt(2), 0b10), TruthTable::literal(2, 1) & ~TruthTable::literal(2, 2));
  EXPECT_EQ(negate_inputs(parity_tt(2), 0b01), ~parity_tt(2));
}

TEST(Named, SurjS1MatchesDefinition) {
  const TruthTable t = surj_tt(1);
  ASSERT_EQ(t.arity(), 8);
  for (std::uint64_t x = 0; x < 256; ++x) {
    bool valid = true;
    unsigned seen = 0;
    for (int j = 0; j < 4; ++j) {
      const unsigned code = (x >> (2 * j)) & 3u;
      if (code == 3) valid = false;
      seen |= 1u << code;
    }
    EXPECT_EQ(t[x], valid && (seen & 7u) == 7u) << x;
  }
  // (1,2,3,1) encoded as codes (0,1,2,0).
  EXPECT_TRUE(t[0b00'10'01'00]);
  // (1,1,2,2) misses 3.
  EXPECT_FALSE(t[0b01'01'00'00]);
}

TEST(Named, SurjArity) {
  EXPECT_EQ(surj_shape(2).arity(), 21);
  EXPECT_EQ(surj_tt(2).arity(), 21);
  EXPECT_THROW(surj_tt(3), CapExceeded);
}

TEST(Projection, RestrictExamples) {
  const Projection p1(1, {Image::constant(false), Image::pos(1), Image::neg(1)});
  EXPECT_EQ(restrict_tt(parity_tt(3), p1), TruthTable::constant(1, true));
  const Projection p2(1, {Image::pos(1), Image::constant(true)});
  EXPECT_EQ(restrict_tt(and_tt(2), p2), TruthTable::literal(1, 1));
  const Projection p3(1, {Image::pos(1), Image::constant(false), Image::constant(true)});
  EXPECT_EQ(restrict_tt(majority_tt(3), p3), TruthTable::literal(1, 1));
  EXPECT_THROW(restrict_tt(and_tt(3), p2), std::invalid_argument);
}

TEST(Projection, TextRoundTrip) {
  const Projection p(2, {Image::pos(2), Image::constant(true), Image::neg(1)});
  EXPECT_EQ(parse_projection(format_projection(p), 2), p);
  EXPECT_THROW(parse_projection("x2 = y1\n"), std::invalid_argument);
}

TEST(Projection, Substitute) {
  const Projection p(1, {Image::pos(1), Image::neg(1)});
  EXPECT_EQ(substitute(p, 1, true), Projection(1, {Image::constant(true), Image::constant(false)}));
  const Projection q(2, {Image::pos(1), Image::pos(2)});
  EXPECT_EQ(substitute(q, 2, false), Projection(2, {Image::pos(1), Image::constant(false)}));
  const Projection r(2, {Image::pos(1)});
  EXPECT_EQ(substitute(r, 2, true), r);
  EXPECT_THROW(substitute(r, 3, true), std::out_of_range);
}

TEST(Formula, MetricsAndTables) {
  const Formula x1 = Formula::leaf(1);
  EXPECT_EQ(formula_metrics(x1), (FormulaMetrics{1, 0}));
  const Formula xor2 = parse_formula("((x1 & ~x2) | (~x1 & x2))");
  EXPECT_EQ(formula_metrics(xor2), (FormulaMetrics{4, 2}));
  EXPECT_EQ(tt_from_formula(xor2, 2), parity_tt(2));
  EXPECT_EQ(tt_from_formula(parse_formula("(x1 & x2)"), 2), and_tt(2));
  EXPECT_EQ(formula_metrics(Formula::constant(false)), (FormulaMetrics{0, 0}));
  EXPECT_EQ(tt_from_formula(Formula::constant(true), 2), TruthTable::constant(2, true));
  EXPECT_THROW(tt_from_formula(xor2, 1), std::out_of_range);
}

TEST(Formula, ParseRoundTrip) {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const Formula phi = random_formula(rng, 1 + i % 9, 4);
    const Formula back = parse_formula(to_string(phi));
    EXPECT_EQ(tt_from_formula(back, 4), tt_from_formula(phi, 4));
    EXPECT_EQ(to_string(back), to_string(phi));
  }
  EXPECT_THROW(parse_formula("(x1 & y2)"), std::invalid_argument);
  EXPECT_THROW(parse_formula("(x1 &"), std::invalid_argument);
}

TEST(Formula, ApplyProjectionExamples) {
  const Formula or12 = parse_formula("(x1 | x2)");
  const Formula a = apply_projection_formula(or12, Projection(1, {Image::constant(true), Image::pos(1)}), true);
  EXPECT_TRUE(a.is_const());
  EXPECT_TRUE(a.const_value());

  const Formula b = apply_projection_formula(or12, Projection(1, {Image::pos(1), Image::pos(1)}), true);
  EXPECT_TRUE(b.is_leaf());
  EXPECT_EQ(to_string(b), "y1");

  const Formula phi = parse_formula("(x1 | (x2 & x3))");
  const Projection pi(2, {Image::pos(1), Image::neg(1), Image::pos(2)});
  const Formula c = apply_projection_formula(phi, pi, true);
  EXPECT_EQ(c.size(), 2);
  EXPECT_EQ(tt_from_formula(c, 2), restrict_tt(tt_from_formula(phi, 3), pi));
  EXPECT_EQ(tt_from_formula(c, 2), TruthTable::literal(2, 1) | TruthTable::literal(2, 2));
}

TEST(Formula, ProjectionCommutesWithSemantics) {
  Rng rng(21);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 4));
    const int m = static_cast<int>(uniform_below(rng, 4));
    const Formula phi = random_formula(rng, 1 + static_cast<int>(uniform_below(rng, 10)), n);
    const Projection pi = testgen::random_projection(rng, n, m);
    const TruthTable expected = restrict_tt(tt_from_formula(phi, n), pi);
    for (bool simp : {false, true}) {
      const Formula r = apply_projection_formula(phi, pi, simp);
      ASSERT_EQ(tt_from_formula(r, m), expected) << to_string(phi) << "\n" << format_projection(pi);
      if (simp) {
        ASSERT_LE(r.size(), phi.size());
      }
    }
  }
}

TEST(Formula, SimplifyPreservesFunctionAndNeverGrows) {
  Rng rng(8);
  for (int trial = 0; trial < 2000; ++trial) {
    const Formula phi = testgen::random_formula_with_constants(rng, 1 + static_cast<int>(uniform_below(rng, 12)), 4);
    const Formula s = simplify(phi);
    ASSERT_EQ(tt_from_formula(s, 4), tt_from_formula(phi, 4)) << to_string(phi);
    ASSERT_LE(s.size(), phi.size());
    ASSERT_TRUE(s.is_const() || !s.has_constants()) << to_string(s);
  }
}

TEST(Formula, SubstitutionSizeBound) {
  // Leaf substitution of a formula for g into one for f gives f◇g with
  // size s(f)*s(g).
  const Formula f = parse_formula("(x1 & x2)");
  const Formula g = parse_formula("((x1 & ~x2) | (~x1 & x2))");
  auto shift = [](const Formula& phi, int offset) {
    std::vector<Image> images;
    for (int i = 1; i <= phi.max_var(); ++i) images.push_back(Image::pos(i + offset));
    return apply_projection_formula(phi, Projection(offset + phi.max_var(), images), false).in_space(VarSpace::X);
  };
  auto plug = [&](auto&& self, const Formula& outer) -> Formula {
    if (outer.is_leaf()) {
      const Formula inner = shift(g, 2 * (outer.literal().var - 1));
      return outer.literal().negated ? negate(inner) : inner;
    }
    if (outer.is_const()) return outer;
    const Formula l = self(self, outer.left());
    const Formula r = self(self, outer.right());
    return outer.kind() == Formula::Kind::And ? Formula::land(l, r) : Formula::lor(l, r);
  };
  const Formula fg = plug(plug, f);
  EXPECT_LE(fg.size(), f.size() * g.size());
  EXPECT_EQ(tt_from_formula(fg, 4), compose(and_tt(2), parity_tt(2)));
}

TEST(Formula, ParityFormula) {
  for (int t = 1; t <= 3; ++t) {
    const Formula phi = parity_formula(t);
    EXPECT_EQ(phi.size(), 1 << (2 * t));
    EXPECT_EQ(phi.depth(), 2 * t);
    EXPECT_EQ(tt_from_formula(phi, 1 << t), parity_tt(1 << t));
  }
  EXPECT_THROW(parity_formula(0), std::invalid_argument);
}

TEST(Formula, BalanceExamples) {
  const Formula x = Formula::leaf(3);
  EXPECT_EQ(to_string(balance(x)), "x3");

  Formula chain = Formula::leaf(1);
  for (int i = 2; i <= 8; ++i) chain = Formula::land(chain, Formula::leaf(i, i % 2 == 0));
  EXPECT_EQ(chain.depth(), 7);
  const Formula b = balance(chain);
  EXPECT_EQ(tt_from_formula(b, 8), tt_from_formula(chain, 8));
  EXPECT_LE(b.depth(), kBalanceConstant * 3);

  const Formula p3 = parity_formula(3);
  const Formula bp = balance(p3);
  EXPECT_EQ(tt_from_formula(bp, 8), parity_tt(8));
  EXPECT_LE(bp.depth(), kBalanceConstant * std::log2(p3.size() + 1.0));
}

TEST(Formula, BalanceDepthBoundOnDeepFormulas) {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int leaves = 2 + static_cast<int>(uniform_below(rng, 60));
    // Caterpillar: each gate has a leaf on one side.
    Formula phi = Formula::leaf(1 + static_cast<int>(uniform_below(rng, 6)), coin(rng));
    for (int i = 1; i < leaves; ++i) {
      const Formula leaf = Formula::leaf(1 + static_cast<int>(uniform_below(rng, 6)), coin(rng));
      const bool left = coin(rng);
      phi = coin(rng) ? Formula::land(left ? leaf : phi, left ? phi : leaf)
                      : Formula::lor(left ? leaf : phi, left ? phi : leaf);
    }
    const Formula b = balance(phi);
    ASSERT_EQ(tt_from_formula(b, 6), tt_from_formula(phi, 6));
    ASSERT_LE(b.depth(), kBalanceConstant * std::log2(phi.size() + 1.0));
  }
}

TEST(UFormula, Basics) {
  const UFormula f = UFormula::or_of({UFormula::and_of({UFormula::leaf(1), UFormula::leaf(2, true)}),
                                      UFormula::leaf(3)});
  EXPECT_EQ(f.size(), 3);
  EXPECT_EQ(f.depth(), 2);
  EXPECT_EQ(tt_from_formula(f, 3),
            (TruthTable::literal(3, 1) & ~TruthTable::literal(3, 2)) | TruthTable::literal(3, 3));
  EXPECT_TRUE(f.eval(std::vector<bool>{true, false, false}));
  EXPECT_THROW(UFormula::and_of({}), std::invalid_argument);
}

}  // namespace
}  // namespace shrinklab
