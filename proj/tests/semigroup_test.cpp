#include "cuspk/semigroup.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace cuspk;

namespace {

// Independent oracle: enumerate all positive (i, j) with ai + bj = m.
Int ell_brute(const Params& p, Int m) {
  Int count = 0;
  for (Int i = 1; p.a() * i < m; ++i)
    if ((m - p.a() * i) % p.b() == 0) ++count;
  return count;
}

bool member_brute(const Params& p, Int m) {
  for (Int i = 0; p.a() * i <= m; ++i)
    if ((m - p.a() * i) % p.b() == 0) return true;
  return false;
}

std::vector<Params> small_pairs() {
  std::vector<Params> out;
  for (Int b = 3; b <= 10; ++b)
    for (Int a = 2; a < b; ++a)
      if (gcd(a, b) == 1) out.emplace_back(a, b);
  return out;
}

}  // namespace

TEST(Params, RejectsInvalid) {
  EXPECT_THROW(Params(3, 2), PreconditionViolation);
  EXPECT_THROW(Params(1, 3), PreconditionViolation);
  EXPECT_THROW(Params(2, 4), PreconditionViolation);
  EXPECT_NO_THROW(Params(2, 3));
}

TEST(Ell, Examples) {
  Params p(2, 3);
  EXPECT_EQ(ell(p, 5), 1);
  EXPECT_EQ(ell(p, 6), 0);
  EXPECT_EQ(ell(p, 11), 2);
  EXPECT_EQ(ell_brute(p, 11), 2);
}

TEST(Ell, IntervalCountMatchesBruteForce) {
  for (const auto& p : small_pairs())
    for (Int m = 1; m <= 5 * p.ab(); ++m) ASSERT_EQ(ell(p, m), ell_brute(p, m)) << p.a() << p.b() << m;
}

TEST(Membership, Examples) {
  Params p(2, 3);
  EXPECT_TRUE(is_member(p, 0));
  EXPECT_FALSE(is_member(p, 1));
  for (Int m = 2; m < 50; ++m) EXPECT_TRUE(is_member(p, m));
}

TEST(Membership, TableAgreesWithBruteForce) {
  for (const auto& p : small_pairs()) {
    MembershipTable table(p);
    for (Int m = 0; m <= 6 * p.ab(); ++m) ASSERT_EQ(table(m), member_brute(p, m));
  }
}

TEST(Conductor, SylvesterFormula) {
  EXPECT_EQ(conductor(Params(2, 3)), 2);
  EXPECT_EQ(conductor(Params(3, 5)), 8);
  EXPECT_FALSE(is_member(Params(3, 5), 7));
  for (Int b : {3, 5, 7}) EXPECT_EQ(conductor(Params(2, b)), b - 1);
  for (const auto& p : small_pairs()) {
    Int v = conductor(p);
    EXPECT_FALSE(member_brute(p, v - 1));
    for (Int m = v; m < v + p.ab(); ++m) EXPECT_TRUE(member_brute(p, m));
  }
}

TEST(TruncationS, Examples) {
  Params p(2, 3);
  EXPECT_EQ(truncation_S(p, 0).elements(), (std::vector<Int>{1, 2, 3, 4, 6}));
  EXPECT_EQ(truncation_S(p, 1).elements(), (std::vector<Int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12}));
  for (const auto& q : small_pairs()) EXPECT_TRUE(truncation_S(q, 0).contains(q.ab()));
}

TEST(TruncationS, RejectsNonDivisorClosed) {
  EXPECT_THROW(TruncationSet({1, 6}), PreconditionViolation);
  EXPECT_NO_THROW(TruncationSet({1, 2, 3, 6}));
}

TEST(DivideSet, Examples) {
  TruncationSet s = truncation_S(Params(2, 3), 0);
  EXPECT_EQ(s.divide(2).elements(), (std::vector<Int>{1, 2, 3}));
  EXPECT_TRUE(s.divide(5).empty());
  EXPECT_EQ(s.divide(1), s);
  EXPECT_THROW(s.divide(0), PreconditionViolation);
  TruncationSet big = truncation_S(Params(2, 5), 3);
  for (Int n = 1; n <= 6; ++n)
    for (Int k = 1; k <= 6; ++k) EXPECT_EQ(big.divide(n).divide(k), big.divide(n * k));
}

TEST(Bezout, Canonical) {
  EXPECT_EQ(bezout(Params(2, 3)), (BezoutPair{1, 2}));
  EXPECT_EQ(bezout(Params(3, 5)), (BezoutPair{1, 2}));
  EXPECT_EQ(bezout(Params(2, 5)), (BezoutPair{1, 3}));
  for (const auto& p : small_pairs()) {
    auto bp = bezout(p);
    EXPECT_EQ(p.a() * bp.d - p.b() * bp.c, 1);
    EXPECT_GE(bp.c, 1);
    EXPECT_LT(bp.c, p.a());
  }
}

TEST(Weights, Examples) {
  Params p(2, 3);
  auto w5 = weights(p, 5);
  EXPECT_EQ(w5.open_weights, (std::vector<Int>{3}));
  EXPECT_EQ(w5.closed_weights, (std::vector<Int>{3}));
  const auto& n3 = w5.at(3);
  EXPECT_EQ(n3.q, 1);
  EXPECT_EQ(n3.m1, 5);
  EXPECT_EQ(n3.n1, 3);
  EXPECT_EQ(n3.l, 2);
  EXPECT_EQ(n3.r, 0);
  EXPECT_EQ(n3.s, 1);

  auto w6 = weights(p, 6);
  EXPECT_TRUE(w6.open_weights.empty());
  EXPECT_EQ(w6.closed_weights, (std::vector<Int>{3, 4}));

  auto alt = weights(p, 5, BezoutPair{3, 5});
  EXPECT_EQ(alt.open_weights, (std::vector<Int>{8}));
  EXPECT_EQ(alt.open_residues(), w5.open_residues());
  EXPECT_THROW(weights(p, 5, BezoutPair{1, 1}), PreconditionViolation);
}

TEST(Weights, Invariants) {
  for (const auto& p : small_pairs()) {
    const auto bp = bezout(p);
    for (Int m = 1; m <= 3 * p.ab(); ++m) {
      auto wd = weights(p, m);
      ASSERT_EQ(static_cast<Int>(wd.open_weights.size()), ell(p, m));
      // dim P(a,b,m) = 2 |J| = 2 ell(a,b,m+a+b)
      ASSERT_EQ(static_cast<Int>(wd.closed_weights.size()), ell(p, m + p.a() + p.b()));
      std::set<Int> closed(wd.closed_weights.begin(), wd.closed_weights.end());
      for (Int n : wd.open_weights) ASSERT_TRUE(closed.count(n));
      ASSERT_EQ(m % p.a() == 0, closed.count(bp.c * m / p.a()) == 1 && (bp.c * m) % p.a() == 0);
      ASSERT_EQ(m % p.b() == 0, (bp.d * m) % p.b() == 0 && closed.count(bp.d * m / p.b()) == 1);
      for (const auto& w : wd.info) {
        ASSERT_EQ(p.a() * w.i + p.b() * w.j, m);
        ASSERT_EQ(bp.c * w.i + bp.d * w.j, w.n);
        ASSERT_EQ(gcd(m, w.n), gcd(w.i, w.j));
        ASSERT_EQ(mod_floor(w.l * w.n1, w.m1), mod_floor(1, w.m1));
        if (w.i > 0 && w.j > 0) {
          ASSERT_GE(w.s, 1);
          ASSERT_LE(w.s, w.i1);
          ASSERT_GE(-w.r, 0);
          ASSERT_LE(-w.r, w.j1 - 1);
          ASSERT_GE(w.l, p.a());
          ASSERT_LE(w.l, w.m1 - p.b());
        }
      }
      // Shifting (c,d) by (ka, kb) moves every weight by km.
      for (Int k : {-2, 1, 3}) {
        auto alt = weights(p, m, BezoutPair{bp.c + k * p.a(), bp.d + k * p.b()});
        ASSERT_EQ(alt.open_residues(), wd.open_residues());
      }
    }
  }
}

TEST(EllProperties, ShiftBandLevelsDivisors) {
  for (const auto& p : small_pairs()) {
    const Int ab = p.ab();
    for (Int m = 1; m <= 5 * ab; ++m) ASSERT_EQ(ell(p, m + ab), ell(p, m) + 1);
    for (Int r = 0; r <= 4; ++r)
      for (Int m = r * ab + 1; m <= (r + 1) * ab; ++m) {
        Int v = ell(p, m);
        ASSERT_TRUE(v == r || v == r + 1);
        if (m % p.a() == 0 || m % p.b() == 0) {
          ASSERT_EQ(v, r);
        }
      }
    std::vector<Int> count(7, 0);
    for (Int m = 1; m <= 7 * ab; ++m) {
      Int v = ell(p, m);
      if (v < 7) ++count[static_cast<std::size_t>(v)];
    }
    ASSERT_EQ(2 * count[0], (p.a() + 1) * (p.b() + 1) - 2);
    for (Int r = 1; r <= 4; ++r) ASSERT_EQ(count[static_cast<std::size_t>(r)], ab);
    for (Int m = 1; m <= 5 * ab; ++m)
      for (Int s = 1; s <= m; ++s)
        if (m % s == 0) {
          ASSERT_LE(ell(p, s), ell(p, m));
        }
  }
}

TEST(TruncationCardinalities, QuotientSizes) {
  for (const auto& p : small_pairs())
    for (Int r = 0; r <= 4; ++r) {
      auto s = truncation_S(p, r);
      EXPECT_EQ(2 * static_cast<Int>(s.size()), (p.a() + 1) * (p.b() + 1) - 2 + 2 * r * p.ab());
      EXPECT_EQ(static_cast<Int>(s.divide(p.a()).size()), (r + 1) * p.b());
      EXPECT_EQ(static_cast<Int>(s.divide(p.b()).size()), (r + 1) * p.a());
      EXPECT_EQ(static_cast<Int>(s.divide(p.ab()).size()), r + 1);
    }
}
