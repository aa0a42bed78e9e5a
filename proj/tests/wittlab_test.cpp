#include "cuspk/wittlab.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace cuspk;

namespace {

AbelianGroup cyclic_sum(std::vector<long> orders) {
  IntMatrix diag(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) diag(i, i) = orders[i];
  return cokernel(diag);
}

GhostWitt random_witt(const TruncationSet& s, std::mt19937& rng) {
  std::uniform_int_distribution<int> coord(-9, 9);
  std::vector<BigInt> c;
  for (std::size_t k = 0; k < s.size(); ++k) c.emplace_back(coord(rng));
  return GhostWitt(s, c);
}

const std::vector<Params>& suite_pairs() {
  static const std::vector<Params> pairs{Params(2, 3), Params(2, 5), Params(3, 4), Params(3, 5)};
  return pairs;
}

}  // namespace

TEST(Profile, Examples) {
  const TruncationSet s = truncation_S(Params(2, 3), 0);
  EXPECT_EQ(profile(s, 2).orbits(), (std::vector<Orbit>{{1, 3}, {3, 2}}));
  EXPECT_EQ(profile(s, 5).orbits(), (std::vector<Orbit>{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {6, 1}}));
  EXPECT_TRUE(profile(TruncationSet{}, 3).orbits().empty());
  EXPECT_THROW(profile(s, 4), PreconditionViolation);
}

TEST(Profile, OrbitsPartitionS) {
  for (const auto& pr : suite_pairs())
    for (Int r = 0; r <= 3; ++r)
      for (Int p : {2, 3, 5, 7}) {
        const TruncationSet s = truncation_S(pr, r);
        std::set<Int> seen;
        const PTypicalProfile prof(s, p);
        for (const auto& o : prof.orbits()) {
          Int x = o.e;
          for (Int i = 0; i < o.length; ++i, x *= p) EXPECT_TRUE(seen.insert(x).second);
        }
        EXPECT_EQ(seen, std::set<Int>(s.elements().begin(), s.elements().end()));
      }
}

TEST(Operators, VerschiebungExamples) {
  const TruncationSet s = truncation_S(Params(2, 3), 0);
  AbelianMap v2 = verschiebung(s, 2, 2);
  EXPECT_EQ(v2.domain.orders, (std::vector<BigInt>{4, 2}));
  EXPECT_EQ(v2.codomain.orders, (std::vector<BigInt>{8, 4}));
  EXPECT_EQ(v2.matrix, IntMatrix::from_rows({{2, 0}, {0, 2}}));

  AbelianMap v3 = verschiebung(s, 3, 2);
  EXPECT_EQ(v3.domain.orders, (std::vector<BigInt>{4}));
  EXPECT_EQ(v3.matrix, IntMatrix::from_rows({{0}, {3}}));

  const PTypicalProfile pr(s, 2);
  EXPECT_EQ(verschiebung(s, 1, 2), scalar_map(pr, 1));
  EXPECT_EQ(frobenius(s, 1, 2), scalar_map(pr, 1));
  EXPECT_THROW(verschiebung(s, 0, 2), PreconditionViolation);
}

TEST(Operators, MatrixIdentities) {
  for (const auto& pr : suite_pairs())
    for (Int r = 0; r <= 2; ++r)
      for (Int p : {2, 3, 5}) {
        const TruncationSet s = truncation_S(pr, r);
        for (Int n = 1; n <= 8; ++n) {
          const TruncationSet sn = s.divide(n);
          AbelianMap v = verschiebung(s, n, p), f = frobenius(s, n, p);
          EXPECT_TRUE(v.well_defined());
          EXPECT_TRUE(f.well_defined());
          EXPECT_EQ(compose(f, v), scalar_map(PTypicalProfile(sn, p), n));
          for (Int k = 1; k <= 4; ++k) {
            EXPECT_EQ(compose(verschiebung(s, n, p), verschiebung(sn, k, p)), verschiebung(s, n * k, p));
            EXPECT_EQ(compose(frobenius(sn, k, p), frobenius(s, n, p)), frobenius(s, n * k, p));
          }
        }
        EXPECT_TRUE(restriction(s, s.divide(1), p) == scalar_map(PTypicalProfile(s, p), 1));
      }
}

TEST(KGroup, Examples) {
  Params p(2, 3);
  auto k5 = relative_k_group(p, 5, 0);
  EXPECT_EQ(k5.group, cyclic_sum({5}));
  EXPECT_EQ(k5.length, 1);
  EXPECT_EQ(relative_k_group(p, 2, 0).group, cyclic_sum({2}));
  auto k52 = relative_k_group(p, 5, 2);
  EXPECT_EQ(k52.group, cyclic_sum({25, 5}));
  EXPECT_EQ(k52.restricted, cyclic_sum({25, 5}));
  EXPECT_TRUE(relative_k_group(p, 5, 1).group.trivial());
  EXPECT_TRUE(relative_k_group(p, 5, -2).group.trivial());
  EXPECT_TRUE(relative_k_group(p, 2, 0).perfect_field_only);
  EXPECT_FALSE(k5.perfect_field_only);
}

TEST(KGroup, LengthAndRestriction) {
  for (const auto& pr : suite_pairs())
    for (Int p : {2, 3, 5, 7})
      for (Int r = 0; r <= 3; ++r) {
        auto res = relative_k_group(pr, p, 2 * r);
        EXPECT_EQ(2 * res.length, (2 * r + 1) * (pr.a() - 1) * (pr.b() - 1));
        EXPECT_EQ(res.group, res.restricted);
        EXPECT_TRUE(res.restriction_iso);
      }
}

TEST(GhostWitt, Examples) {
  const TruncationSet s({1, 2});
  GhostWitt two = teichmuller(s, 2), three = teichmuller(s, 3);
  EXPECT_EQ(witt_add(two, three).coords(), (std::vector<BigInt>{5, -6}));
  EXPECT_EQ(witt_mul(two, three).coords(), (std::vector<BigInt>{6, 0}));
  EXPECT_EQ(witt_mul(two, three), teichmuller(s, 6));
  const TruncationSet one({1});
  GhostWitt x(one, {BigInt(7)});
  EXPECT_EQ(witt_F(witt_V(s, x, 2), 2), witt_scale(x, 2));
  EXPECT_THROW(unghost(s, {BigInt(0), BigInt(1)}), IntegralityViolation);
}

TEST(GhostWitt, AdditionMatchesWittPolynomials) {
  // On S = {1, 2}: (x1, x2) + (y1, y2) = (x1 + y1, x2 + y2 - x1 y1).
  const TruncationSet s({1, 2});
  std::mt19937 rng(2);
  for (int k = 0; k < 200; ++k) {
    GhostWitt x = random_witt(s, rng), y = random_witt(s, rng);
    GhostWitt sum = witt_add(x, y);
    EXPECT_EQ(sum[1], x[1] + y[1]);
    EXPECT_EQ(sum[2], x[2] + y[2] - x[1] * y[1]);
  }
}

TEST(GhostWitt, OperatorRelationsRandomized) {
  const TruncationSet s = TruncationSet::divisors_of(24);
  const std::vector<Int> divs = s.elements();
  std::mt19937 rng(24);
  std::uniform_int_distribution<std::size_t> pick(0, divs.size() - 1);
  int cases = 0;
  while (cases < 1000) {
    const Int n = divs[pick(rng)], m = divs[pick(rng)];
    const GhostWitt x = random_witt(s, rng);
    const GhostWitt y = random_witt(s.divide(n), rng);
    // F_m F_n = F_{mn}
    EXPECT_EQ(witt_F(witt_F(x, n), m), witt_F(x, m * n));
    // V_n V_m = V_{nm} on W_{S/nm}
    const GhostWitt z = random_witt(s.divide(n * m), rng);
    EXPECT_EQ(witt_V(s, witt_V(s.divide(n), z, m), n), witt_V(s, z, n * m));
    // F_n V_n = n
    EXPECT_EQ(witt_F(witt_V(s, y, n), n), witt_scale(y, n));
    // F_m V_n = V_n F_m for coprime m, n
    if (gcd(m, n) == 1) {
      EXPECT_EQ(witt_F(witt_V(s, y, n), m), witt_V(s.divide(m), witt_F(y, m), n));
    }
    // x V_n(y) = V_n(F_n(x) y)
    EXPECT_EQ(witt_mul(x, witt_V(s, y, n)), witt_V(s, witt_mul(witt_F(x, n), y), n));
    // ghost is injective on the round trip
    EXPECT_EQ(unghost(s, ghost(x)), x);
    ++cases;
  }
}
