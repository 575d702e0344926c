#include "rta/json_io.hpp"
#include "rta/quartic.hpp"

#include <gtest/gtest.h>

using rta::BigInt;
using rta::QuarticTuple;
using rta::Witness;

namespace {

QuarticTuple tup(long r, long s, long u, long v) { return {BigInt(r), BigInt(s), BigInt(u), BigInt(v)}; }

}  // namespace

TEST(Quartic, TableRows) {
  struct Row { int d; long l, r, c; rta::FormKind kind; };
  const Row rows[] = {{2, 2, 1, 1, rta::FormKind::Pure},    {3, 3, 1, 2, rta::FormKind::Pure},
                      {7, 7, 9, -2, rta::FormKind::Pure},   {11, 11, 1, 2, rta::FormKind::Norm},
                      {19, 171, 169, 2, rta::FormKind::Norm}, {43, 43, 1, 2, rta::FormKind::Norm}};
  for (const auto& row : rows) {
    const auto& s = rta::quartic_spec(row.d);
    EXPECT_EQ(s.left_coeff, row.l);
    EXPECT_EQ(s.right_coeff, row.r);
    EXPECT_EQ(s.constant, row.c);
    EXPECT_EQ(s.left_form.kind, row.kind);
    EXPECT_EQ(s.right_form.kind, row.kind);
    if (row.d != 2) {
      const auto& hp = rta::params(row.d);
      EXPECT_EQ(s.unfolded_left(), row.d * hp.bin_a * hp.bin_a);
      EXPECT_EQ(s.unfolded_right(), hp.bin_b * hp.bin_b);
      EXPECT_EQ(s.unfolded_left() - s.unfolded_right(), row.c);
    }
  }
  EXPECT_THROW(rta::quartic_spec(67), rta::domain_error);
}

TEST(Quartic, EvaluateExamples) {
  EXPECT_EQ(rta::evaluate(rta::quartic_spec(2), tup(1, 0, 1, 0)), 1);
  EXPECT_EQ(rta::evaluate(rta::quartic_spec(19), tup(1, 0, 1, 0)), 2);
  EXPECT_EQ(rta::evaluate(rta::quartic_spec(7), tup(1, 0, 1, 0)), -2);
  EXPECT_FALSE(rta::is_solution(rta::quartic_spec(2), tup(1, 1, 1, 1)));
  EXPECT_TRUE(rta::is_solution(rta::quartic_spec(43), tup(3, 0, 3, 2)));
  EXPECT_FALSE(rta::is_nontrivial(tup(1, 0, 1, 0)));
  EXPECT_FALSE(rta::is_nontrivial(tup(-1, 0, 1, 0)));
  EXPECT_TRUE(rta::is_nontrivial(tup(1, 1, 1, 0)));
}

TEST(Quartic, EvaluateMatchesHandExpansion) {
  // d = 19 with cross terms written out.
  for (long r = -4; r <= 4; ++r) {
    for (long s = -4; s <= 4; ++s) {
      const long u = r + 2, v = s - 1;
      const long f1 = r * r + r * s + 5 * s * s;
      const long f2 = u * u + u * v + 5 * v * v;
      EXPECT_EQ(rta::evaluate(rta::quartic_spec(19), tup(r, s, u, v)), 171 * f1 * f1 - 169 * f2 * f2);
    }
  }
}

TEST(Quartic, BundledSolutions) {
  const auto sols = rta::bundled_solutions();
  ASSERT_EQ(sols.size(), 3u);
  for (const auto& s : sols) {
    EXPECT_EQ(s.d, 2);
    EXPECT_TRUE(rta::is_solution(rta::quartic_spec(2), s.tuple));
    EXPECT_TRUE(rta::is_nontrivial(s.tuple));
    const auto sys = rta::pell_from_solution(rta::quartic_spec(2), s.tuple);
    EXPECT_TRUE(sys.companion);
    EXPECT_EQ(2 * sys.X * sys.X - sys.Y * sys.Y, 1);
    EXPECT_TRUE(rta::npell_index_of(sys.X, sys.Y).has_value());
  }
}

TEST(Quartic, BaseConstructions) {
  EXPECT_EQ(rta::solution_from_pell(19, 0, {BigInt(1), BigInt(0)}, {BigInt(1), BigInt(0)}), tup(1, 0, 1, 0));
  EXPECT_EQ(rta::solution_from_pell(43, 0, {BigInt(3), BigInt(0)}, {BigInt(3), BigInt(2)}), tup(3, 0, 3, 2));
  // Unfolded witnesses are composed with the fold witnesses.
  const auto t43 = rta::solution_from_pell(43, 0, {BigInt(1), BigInt(0)}, {BigInt(1), BigInt(0)});
  EXPECT_TRUE(rta::is_solution(rta::quartic_spec(43), t43));
  const auto t11 = rta::solution_from_pell(11, 0, {BigInt(1), BigInt(0)}, {BigInt(0), BigInt(1)});
  EXPECT_EQ(rta::right_inner(rta::quartic_spec(11), t11), 3);
  EXPECT_EQ(rta::evaluate(rta::quartic_spec(11), t11), 2);
  EXPECT_THROW(rta::solution_from_pell(19, 0, {BigInt(1), BigInt(1)}, {BigInt(1), BigInt(0)}),
               rta::verification_error);
  EXPECT_THROW(rta::solution_from_pell(2, 0, {BigInt(1), BigInt(0)}, {BigInt(1), BigInt(0)}),
               rta::domain_error);
}

TEST(Quartic, Inversion) {
  const auto a = rta::pell_from_solution(rta::quartic_spec(19), tup(1, 0, 1, 0));
  EXPECT_EQ(a.X, 1);
  EXPECT_EQ(a.Y, 0);
  const auto b = rta::pell_from_solution(rta::quartic_spec(43), tup(3, 0, 3, 2));
  EXPECT_EQ(b.X, 1);
  EXPECT_EQ(b.Y, 0);
  EXPECT_THROW(rta::pell_from_solution(rta::quartic_spec(19), tup(1, 1, 1, 0)), rta::verification_error);
}

TEST(Quartic, IdentityAndRoundTripAlongThePellSequence) {
  for (int d : {3, 7, 11, 19, 43}) {
    const auto& spec = rta::quartic_spec(d);
    const auto& hp = rta::params(d);
    for (std::uint64_t ell = 0; ell <= 50; ++ell) {
      const auto p = rta::pell_nth(d, ell);
      ASSERT_EQ(p.y % hp.y1, 0);
      const BigInt X = p.x, Y = p.y / hp.y1;
      const BigInt f1 = X + hp.bin_b * hp.bin_b * Y;
      const BigInt f2 = X + d * hp.bin_a * hp.bin_a * Y;
      ASSERT_EQ(spec.unfolded_left() * f1 * f1 - spec.unfolded_right() * f2 * f2, spec.constant);
      ASSERT_EQ(hp.y1 * f1 * f2, rta::pell_nth(d, 2 * ell + 1).y);
    }
  }
  // Round trip through every small index where both forms have witnesses.
  int round_trips = 0;
  for (int d : {3, 7, 11, 19, 43}) {
    const auto& spec = rta::quartic_spec(d);
    const auto& hp = rta::params(d);
    for (std::uint64_t ell = 0; ell <= 12; ++ell) {
      const auto p = rta::pell_nth(d, ell);
      const BigInt X = p.x, Y = p.y / hp.y1;
      const auto budget = rta::Budget::trial_only(10'000);
      const auto v1 = rta::representable(spec.left_form, X + hp.bin_b * hp.bin_b * Y, budget);
      const auto v2 = rta::representable(spec.right_form, X + d * hp.bin_a * hp.bin_a * Y, budget);
      if (!v1.representable() || !v2.representable()) continue;
      const auto t = rta::solution_from_pell(d, ell, v1.witness(), v2.witness());
      const auto back = rta::pell_from_solution(spec, t);
      EXPECT_EQ(back.X, X);
      EXPECT_EQ(back.Y, Y);
      ++round_trips;
    }
  }
  EXPECT_GE(round_trips, 5);
}

TEST(Quartic, IndexLookup) {
  EXPECT_EQ(rta::npell_index_of(BigInt(5), BigInt(7)), 1u);
  EXPECT_FALSE(rta::npell_index_of(BigInt(6), BigInt(8)).has_value());
  EXPECT_EQ(rta::pell_index_of(19, BigInt(57799), BigInt(13260)), 2u);
  EXPECT_EQ(rta::pell_index_of(19, BigInt(1), BigInt(0)), 0u);
  EXPECT_FALSE(rta::pell_index_of(19, BigInt(57799), BigInt(13261)).has_value());
}

TEST(Quartic, NPellConstruction) {
  // A_0 = B_0 = 1.
  EXPECT_EQ(rta::solution_from_npell(0, {BigInt(1), BigInt(0)}, {BigInt(1), BigInt(0)}), tup(1, 0, 1, 0));
  EXPECT_THROW(rta::solution_from_npell(1, {BigInt(1), BigInt(0)}, {BigInt(1), BigInt(0)}),
               rta::verification_error);
}

TEST(Quartic, NonTrivialSolutionsFromThePellSequence) {
  // 3*2131^2 - 3691^2 = 2, with 2131 = 16^2 + 3*25^2 and 3691 = 4^2 + 3*35^2.
  const auto t3 = tup(16, 25, 4, 35);
  EXPECT_EQ(3 * 2131L * 2131L - 3691L * 3691L, 2);
  EXPECT_TRUE(rta::is_solution(rta::quartic_spec(3), t3));
  EXPECT_TRUE(rta::is_nontrivial(t3));
  const auto sys = rta::pell_from_solution(rta::quartic_spec(3), t3);
  EXPECT_EQ(rta::pell_index_of(3, sys.X, sys.Y), 6u);

  const auto t11 = tup(8, 9, 30, 7);
  EXPECT_TRUE(rta::is_solution(rta::quartic_spec(11), t11));
  const auto sys11 = rta::pell_from_solution(rta::quartic_spec(11), t11);
  EXPECT_EQ(rta::pell_index_of(11, sys11.X, sys11.Y * 3), 2u);
  EXPECT_TRUE(sys11.positive);
}
