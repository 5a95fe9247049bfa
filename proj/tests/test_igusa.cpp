#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "weyl/closure.hpp"
#include "weyl/igusa.hpp"

using namespace weyl;

namespace {

WeylPoly w(int al, int be, Gaussian c = Rational(1)) { return WeylPoly::term({al, be}, c); }

const SkewPoly kE1 = gp(3) + gm(3);
const SkewPoly kE2 = gp(4) + gm(3, 1);

}  // namespace

TEST(Delta, Examples) {
  EXPECT_EQ(delta(w(0, 3), w(1, 3)), Gaussian(Rational(-3)));
  WeylPoly x = w(0, 4, Gaussian(2, 1)) + w(1, 3, Rational(5));
  EXPECT_TRUE(delta(x, x).is_zero());
  EXPECT_THROW(delta(WeylPoly{}, x), std::invalid_argument);
}

TEST(Delta, LeadingCoefficientOfCommutator) {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int t = 0; t < 200 && checked < 60; ++t) {
    WeylPoly x = testing_support::random_weyl(rng, 6, 5), y = testing_support::random_weyl(rng, 6, 5);
    const int dx = x.degree(), dy = y.degree();
    if (dx < 1 || dy < 1) continue;
    x.add({0, dx}, Gaussian(Rational(1), Rational(t % 3)));
    y.add({1, dy - 1}, Gaussian(Rational(t % 4), Rational(1)));
    const Gaussian lead = commutator(x, y).coeff({0, dx + dy - 2});
    EXPECT_EQ(lead, delta(x, y) * Gaussian(Rational(-1)));
    EXPECT_EQ(delta(x, y), delta(y, x) * Gaussian(Rational(-1)));
    ++checked;
  }
  EXPECT_GE(checked, 40);
}

TEST(IdentityCheck, Examples) {
  EXPECT_EQ(identity_check(gm(3), gp(3)).verdict, IgusaVerdict::Inconclusive);
  EXPECT_EQ(identity_check(kE1, kE2).verdict, IgusaVerdict::Infinite);
  auto only_c1 = identity_check(gp(2, 1), gp(3));
  EXPECT_EQ(only_c1.verdict, IgusaVerdict::Inconclusive);
  EXPECT_FALSE(only_c1.conditions[0]);
  EXPECT_THROW(identity_check(gp(2), gp(3)), std::invalid_argument);
}

TEST(IdentityCheck, InfiniteVerdictHasChain) {
  auto c = find_chain({kE1, kE2});
  ASSERT_TRUE(c);
  EXPECT_TRUE(verify_chain(*c, 3));
}

TEST(SymplecticSearch, IdentityCertificate) {
  auto cert = symplectic_search(kE1, kE2, 16, 7);
  ASSERT_TRUE(cert);
  EXPECT_TRUE(cert->identity);
  EXPECT_EQ(cert->verdict, IgusaVerdict::Infinite);
  EXPECT_TRUE(recheck(*cert, kE1, kE2));
}

TEST(SymplecticSearch, MixingFramesCertifiesNegativeExample) {
  auto cert = symplectic_search(gm(3), gp(3), 256, 7);
  ASSERT_TRUE(cert);
  EXPECT_FALSE(cert->identity);
  EXPECT_DOUBLE_EQ(cert->params.s, 0.5);
  EXPECT_DOUBLE_EQ(cert->params.phi, 0.0);
  EXPECT_DOUBLE_EQ(cert->params.theta, 0.0);
  EXPECT_TRUE(recheck(*cert, gm(3), gp(3)));
  auto chain = find_chain({gm(3), gp(3)});
  ASSERT_TRUE(chain);
  EXPECT_TRUE(verify_chain(*chain, 3));
}

TEST(SymplecticSearch, EmptySearchFindsNothing) {
  EXPECT_FALSE(symplectic_search(gm(3), gp(3), 0, 7).has_value());
}

TEST(SymplecticSearch, Deterministic) {
  auto a = symplectic_search(gm(3), gp(3), 64, 11);
  auto b = symplectic_search(gm(3), gp(3), 64, 11);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->params.s, b->params.s);
  EXPECT_EQ(a->a0b0, b->a0b0);
}

TEST(Recheck, RejectsTamperedCertificate) {
  auto cert = *symplectic_search(gm(3), gp(3), 16, 7);
  auto bad = cert;
  bad.delta *= 2.0;
  EXPECT_FALSE(recheck(bad, gm(3), gp(3)));
  bad = cert;
  bad.params.s = 0;
  EXPECT_FALSE(recheck(bad, gm(3), gp(3)));
}

TEST(Symplectic, ExactRationalMapPreservesBrackets) {
  const Sigma<Gaussian> m{Rational(2), Rational(1), Rational(1), Rational(1)};
  ASSERT_EQ(m.det(), Gaussian(Rational(1)));
  const Sigma<Gaussian> m2{Gaussian(1, 1), Rational(1), Gaussian::I(), Rational(1)};
  ASSERT_EQ(m2.det(), Gaussian(Rational(1)));
  std::mt19937_64 rng(41);
  for (int t = 0; t < 30; ++t) {
    WeylPoly p = testing_support::random_weyl(rng, 4), q = testing_support::random_weyl(rng, 4);
    for (const auto& s : {m, m2})
      EXPECT_EQ(apply_symplectic(commutator(p, q), s), commutator(apply_symplectic(p, s), apply_symplectic(q, s)));
  }
}

TEST(Symplectic, SampledFamilyHasUnitDeterminantAndKeepsSkewness) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ds(-1.5, 1.5), da(0, 6.28);
  for (int t = 0; t < 50; ++t) {
    SymplecticParams sp{ds(rng), da(rng), da(rng)};
    EXPECT_LT(std::abs(sp.matrix().det() - cplx(1, 0)), 1e-12);
    CWeylPoly x = apply_symplectic(to_weyl(gp(3) + gm(2, 1, Rational(1, 2))), sp.matrix());
    for (const auto& [k, c] : x) {
      auto it = x.find(k.dagger());
      const cplx mirror = it == x.end() ? cplx{} : it->second;
      EXPECT_LT(std::abs(std::conj(c) + mirror), 1e-9);
    }
  }
}
