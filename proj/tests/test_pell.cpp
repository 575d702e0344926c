#include "rta/pell.hpp"

#include <gtest/gtest.h>

#include <vector>

using rta::BigInt;

namespace {

// Independent recurrence oracle: x_{k+1} = x1 x_k + d y1 y_k, y_{k+1} = y1 x_k + x1 y_k.
std::vector<std::pair<BigInt, BigInt>> by_multiplication(int d, BigInt x1, BigInt y1, std::size_t kmax) {
  std::vector<std::pair<BigInt, BigInt>> out{{BigInt(1), BigInt(0)}};
  for (std::size_t k = 1; k <= kmax; ++k) {
    const auto& [x, y] = out.back();
    out.push_back({x1 * x + d * y1 * y, y1 * x + x1 * y});
  }
  return out;
}

}  // namespace

TEST(Pell, FundamentalSolutions) {
  EXPECT_EQ(rta::params(2).x1, 3);
  EXPECT_EQ(rta::params(2).y1, 2);
  EXPECT_EQ(rta::params(163).x1, 64080026);
  EXPECT_EQ(rta::params(163).y1, 5019135);
  for (int d : rta::kHeegnerNumbers) {
    const auto& p = rta::params(d);
    EXPECT_EQ(p.x1 * p.x1 - d * p.y1 * p.y1, 1) << d;
  }
}

TEST(Pell, RejectsNonHeegner) {
  EXPECT_THROW(rta::params(5), rta::domain_error);
  EXPECT_THROW(rta::pell_nth(1, 3), rta::domain_error);
  EXPECT_FALSE(rta::is_heegner(23));
}

TEST(Pell, NthMatchesMultiplicationOracle) {
  for (int d : rta::kHeegnerNumbers) {
    const auto& hp = rta::params(d);
    const auto oracle = by_multiplication(d, hp.x1, hp.y1, 200);
    for (std::uint64_t k = 0; k <= 200; ++k) {
      const auto p = rta::pell_nth(d, k);
      ASSERT_EQ(p.x, oracle[k].first) << d << " " << k;
      ASSERT_EQ(p.y, oracle[k].second) << d << " " << k;
      ASSERT_TRUE(p.satisfies_equation());
    }
  }
}

TEST(Pell, FrozenValues) {
  const auto p = rta::pell_nth(19, 2);
  EXPECT_EQ(p.x, 57799);
  EXPECT_EQ(p.y, 13260);
  const auto q = rta::pell_nth(2, 4);
  EXPECT_EQ(q.x, 577);
  EXPECT_EQ(q.y, 408);
}

TEST(Pell, SequenceAndNextAgree) {
  const auto seq = rta::pell_sequence(43, 30);
  ASSERT_EQ(seq.size(), 31u);
  for (std::uint64_t k = 0; k <= 30; ++k) EXPECT_EQ(seq[k], rta::pell_nth(43, k));
  EXPECT_THROW(rta::pell_next(seq[5], seq[3]), rta::domain_error);
  EXPECT_THROW(rta::pell_next(seq[5], rta::pell_nth(19, 4)), rta::domain_error);
}

TEST(Pell, DoubleAndCompose) {
  for (int d : {2, 7, 163}) {
    const auto a = rta::pell_nth(d, 13);
    const auto b = rta::pell_nth(d, 29);
    EXPECT_EQ(rta::pell_double(a), rta::pell_nth(d, 26));
    EXPECT_EQ(rta::pell_compose(a, b), rta::pell_nth(d, 42));
  }
}

TEST(Pell, OddIndexSplit) {
  for (int d : rta::kHeegnerNumbers) {
    const auto& hp = rta::params(d);
    // l = 0: y_1 = prefactor * a * b.
    EXPECT_EQ(hp.prefactor * hp.bin_a * hp.bin_b, hp.y1) << d;
    for (std::uint64_t ell = 0; ell <= 40; ++ell) {
      const auto s = rta::odd_index_split(d, ell);
      EXPECT_EQ(s.y_next, rta::pell_nth(d, 2 * ell + 1).y);
      EXPECT_EQ(rta::gcd(s.v, s.w), 1);
    }
  }
}

TEST(Pell, PowerOfTwoIndex) {
  for (int d : {2, 3, 19}) {
    for (unsigned m = 1; m <= 8; ++m) {
      for (std::uint64_t h : {1, 3, 7}) {
        EXPECT_EQ(rta::power_of_two_index(d, m, h), rta::pell_nth(d, (std::uint64_t{1} << m) * h).y);
      }
    }
  }
  EXPECT_THROW(rta::power_of_two_index(2, 0, 1), rta::domain_error);
  EXPECT_THROW(rta::power_of_two_index(2, 2, 4), rta::domain_error);
  EXPECT_THROW(rta::power_of_two_index(2, 21, 1), rta::domain_error);
}

TEST(Pell, TwoAdicValuationOfPowerOfTwoIndex) {
  for (int d : {2, 19}) {
    for (unsigned m = 1; m <= 12; ++m) {
      EXPECT_EQ(rta::valuation2(rta::pell_nth(d, std::uint64_t{1} << m).y), m + 1) << d << " " << m;
    }
  }
}

TEST(Pell, CompanionSequence) {
  const auto seq = rta::npell_iter(120);
  for (const auto& p : seq) {
    ASSERT_TRUE(p.satisfies_equation());
    ASSERT_EQ(p, rta::npell_nth(p.n));
  }
  EXPECT_EQ(seq[4].A, 985);
  EXPECT_EQ(seq[4].B, 1393);
  EXPECT_EQ(seq[1].A, 5);
  EXPECT_EQ(seq[1].B, 7);
}
