#include "cuspk/cyclicbar.hpp"

#include <gtest/gtest.h>

using namespace cuspk;

namespace {

const std::vector<Params>& suite_pairs() {
  static const std::vector<Params> pairs{Params(2, 3), Params(2, 5), Params(3, 4), Params(3, 5)};
  return pairs;
}

AbelianGroup Z() { return AbelianGroup{1, {}}; }
AbelianGroup Zmod(long n) { return AbelianGroup{0, {BigInt(n)}}; }

// Every boundary is sent to a boundary and every cycle to a cycle.
void expect_descends(const HomologyComputer& hc, int q, const SparseIntMatrix& op) {
  const ChainComplex& c = hc.complex();
  const SparseIntMatrix bd = c.boundary(q + 1);
  for (std::size_t col = 0; col < bd.cols(); ++col) {
    const SparseVec img = op.apply(bd.column(col));
    ASSERT_TRUE(c.boundary(q + 1).apply(img).empty());
    EXPECT_TRUE(hc.classify(q + 1, img).is_zero());
  }
  auto it = hc.summary().groups.find(q);
  if (it == hc.summary().groups.end()) return;
  for (const auto& g : it->second.free_generators) EXPECT_TRUE(c.boundary(q + 1).apply(op.apply(g)).empty());
  for (const auto& g : it->second.torsion_generators) EXPECT_TRUE(c.boundary(q + 1).apply(op.apply(g)).empty());
}

}  // namespace

TEST(BarComplex, WeightTwo) {
  BarModel bar(Params(2, 3), 2);
  EXPECT_EQ(bar.basis(0).size(), 0u);
  EXPECT_EQ(bar.basis(1), (std::vector<BarTuple>{{1, 1}}));
  EXPECT_EQ(bar.basis(2), (std::vector<BarTuple>{{0, 1, 1}}));
  EXPECT_EQ(bar.complex().boundary(2).get(0, 0), 2);
  auto h = homology(bar.complex());
  EXPECT_EQ(h.groups.size(), 1u);
  EXPECT_EQ(h.at(1), Zmod(2));
}

TEST(BarComplex, ExamplesFromTheCases) {
  Params p(2, 3);
  auto h5 = homology(relative_bar_complex(p, 5));
  EXPECT_EQ(h5.groups.size(), 2u);
  EXPECT_EQ(h5.at(2), Z());
  EXPECT_EQ(h5.at(3), Z());
  EXPECT_TRUE(homology(relative_bar_complex(p, 6)).groups.empty());
  EXPECT_THROW(relative_bar_complex(p, 0), PreconditionViolation);
}

TEST(BarComplex, SizeAndEulerCharacteristic) {
  for (const auto& p : suite_pairs())
    for (Int m = 1; m <= 12; ++m) {
      ChainComplex c = relative_bar_complex(p, m);
      EXPECT_LE(c.total_dim(), std::size_t{1} << m);
      EXPECT_EQ(c.euler_characteristic(), 0);
    }
}

TEST(Connes, Examples) {
  Params p(2, 3);
  SparseIntMatrix d = connes_on_bar(p, 1, 0);
  BarModel bar(p, 1);
  EXPECT_EQ(bar.basis(1), (std::vector<BarTuple>{{0, 1}}));
  EXPECT_EQ(d.get(0, 0), 1);
  EXPECT_EQ(abs(*analyze_weight(p, 5).connes_bar), 5);
  EXPECT_EQ(abs(*analyze_weight(p, 7).connes_bar), 7);
}

TEST(Connes, DescendsToHomology) {
  for (const auto& p : suite_pairs())
    for (Int m = 1; m <= 9; ++m) {
      BarModel bar(p, m);
      HomologyComputer hc(bar.complex());
      for (int q = 0; q < static_cast<int>(m); ++q) expect_descends(hc, q, bar.connes(q));
    }
}

TEST(SmallComplex, BasisExample) {
  SmallModelA A(Params(2, 3), 5);
  using K = SmallBasisElement;
  EXPECT_EQ(A.basis(0), (std::vector<K>{{K::One, 1, 1, 0}}));
  EXPECT_EQ(A.basis(1), (std::vector<K>{{K::Dx, 0, 1, 0}, {K::Dy, 1, 0, 0}}));
  EXPECT_EQ(A.basis(2), (std::vector<K>{{K::DxDy, 0, 0, 0}}));
  EXPECT_TRUE(A.complex().boundary(1).is_zero());
  EXPECT_TRUE(A.complex().boundary(2).is_zero());

  SparseIntMatrix d = A.d_R(0);
  EXPECT_EQ(d.get(0, 0), 1);
  EXPECT_EQ(d.get(1, 0), 1);
}

TEST(SmallComplex, WeightFour) {
  auto h = homology(small_complex_A(Params(2, 3), 4));
  EXPECT_EQ(h.groups.size(), 2u);
  EXPECT_EQ(h.at(0), Z());
  EXPECT_EQ(h.at(1), Z());
}

TEST(SmallComplex, DegreeZeroAndB) {
  for (const auto& p : suite_pairs()) {
    MembershipTable member(p);
    for (Int m = 1; m <= 24; ++m) {
      auto h = homology(small_complex_A(p, m));
      EXPECT_EQ(h.at(0), member(m) ? Z() : AbelianGroup{});
      auto hb = homology(small_complex_B(p, m));
      EXPECT_EQ(hb.at(0), Z());
      EXPECT_EQ(hb.at(1), Z());
    }
  }
}

TEST(SmallComplex, DRVanishesOnPureDividedPowers) {
  Params p(2, 3);
  SmallModelA A(p, 12);
  using K = SmallBasisElement;
  for (int q : {0, 2, 4}) {
    auto pos = A.find(K{K::One, 0, 0, q / 2});
    if (q == 4) {
      ASSERT_TRUE(pos.has_value());
    }
    if (!pos) continue;
    SparseIntMatrix d = A.d_R(q);
    for (std::size_t row = 0; row < d.rows(); ++row) EXPECT_EQ(d.get(row, *pos), 0);
  }
}

TEST(SmallComplex, DRDescendsToHomology) {
  for (const auto& p : suite_pairs())
    for (Int m = 1; m <= 30; ++m) {
      SmallModelA A(p, m);
      HomologyComputer hc(A.complex());
      for (int q = 0; q <= A.complex().max_degree(); ++q) expect_descends(hc, q, A.d_R(q));
    }
}

TEST(FR, ActsOnHomologyByAandB) {
  Params p(2, 3);
  SmallModelA A(p, 5);
  ChainComplex B = small_complex_B(p, 5);
  ChainMap f = f_R_map(A);
  verify_chain_map(A.complex(), B, f);
  SparseIntMatrix f1 = f.component(A.complex(), B, 1);
  EXPECT_EQ(f1.get(0, 0), 2);
  EXPECT_EQ(f1.get(0, 1), 3);
  auto h5 = homology(f_R_cone(p, 5));
  EXPECT_EQ(h5.groups.size(), 2u);
  EXPECT_EQ(h5.at(2), Z());
  EXPECT_EQ(h5.at(3), Z());
  EXPECT_TRUE(homology(f_R_cone(p, 6)).groups.empty());
}

TEST(FR, ConnesFactorOnCone) {
  EXPECT_EQ(abs(*analyze_weight(Params(2, 3), 5).connes_cone), 5);
}

TEST(ExpectedTY, Examples) {
  Params p(2, 3);
  auto h4 = expected_ty_homology(p, 4);
  EXPECT_EQ(h4.groups.size(), 1u);
  EXPECT_EQ(h4.at(1), Zmod(2));
  auto h9 = expected_ty_homology(p, 9);
  EXPECT_EQ(h9.groups.size(), 1u);
  EXPECT_EQ(h9.at(3), Zmod(3));
  EXPECT_TRUE(expected_ty_homology(p, 6).groups.empty());
}

TEST(ExpectedTY, CellularModelMatchesClosedForm) {
  for (Int b = 3; b <= 9; ++b)
    for (Int a = 2; a < b; ++a) {
      if (gcd(a, b) != 1) continue;
      Params p(a, b);
      for (Int m = 1; m <= 3 * p.ab(); ++m) EXPECT_NO_THROW(expected_ty_homology(p, m));
    }
}

TEST(TripleAgreement, Suite) {
  for (const auto& p : suite_pairs())
    for (Int m = 1; m <= 12; ++m) {
      WeightReport r = analyze_weight(p, m);
      EXPECT_TRUE(r.bar.same_groups(r.expected)) << p.a() << "," << p.b() << "," << m << ": " << r.bar.to_string();
      EXPECT_TRUE(r.cone.same_groups(r.expected)) << p.a() << "," << p.b() << "," << m << ": " << r.cone.to_string();
      const bool generic = m % p.a() != 0 && m % p.b() != 0;
      EXPECT_EQ(r.connes_bar.has_value(), generic);
      EXPECT_EQ(r.connes_cone.has_value(), generic);
      if (generic) {
        EXPECT_EQ(abs(*r.connes_bar), m);
        EXPECT_EQ(abs(*r.connes_cone), m);
      }
      EXPECT_TRUE(r.pipelines_agree);
    }
}
