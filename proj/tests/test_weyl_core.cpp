#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "weyl/json_io.hpp"
#include "weyl/skew_poly.hpp"
#include "weyl/weyl_poly.hpp"

using namespace weyl;
using testing_support::random_skew;
using testing_support::random_weyl;

namespace {

WeylPoly w(int al, int be, Gaussian c = Rational(1)) { return WeylPoly::term({al, be}, c); }

}  // namespace

TEST(Rational, ParsesFractionStrings) {
  EXPECT_EQ(parse_rational("3/2"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-4/6"), Rational(-2, 3));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_EQ(to_string(parse_rational("-6/4")), "-3/2");
}

TEST(Gaussian, FieldOperations) {
  Gaussian z(Rational(1, 2), Rational(-3));
  EXPECT_EQ(z.conj().conj(), z);
  Gaussian p = z;
  p *= z.conj();
  EXPECT_EQ(p, Gaussian(Rational(37, 4)));
  Gaussian q = z;
  q /= z;
  EXPECT_EQ(q, Gaussian(Rational(1)));
}

TEST(MultiIndex, BasicMaps) {
  EXPECT_EQ(chi({3, 1}), 2);
  EXPECT_EQ(theta({1, 4}), MultiIndex(4, 1));
  EXPECT_EQ(esign({1, 4}), Sign::Minus);
  EXPECT_EQ(esign({4, 1}), Sign::Plus);
  EXPECT_EQ(chi(compose({2, 1}, {3, 0})), 6);
  EXPECT_EQ(chi(compose({3, 0}, {2, 1})), 6);
  EXPECT_TRUE(MultiIndex(2, 0) > MultiIndex(1, 1));
  EXPECT_TRUE(MultiIndex(2, 1) > MultiIndex(2, 0));
}

TEST(Monomial, Constructors) {
  EXPECT_EQ(to_weyl(gp(1)), w(1, 0, Gaussian::I()) + w(0, 1, Gaussian::I()));
  EXPECT_TRUE(monomial(Sign::Minus, {2, 2}, 5).is_zero());
  EXPECT_TRUE(gp(3, 0, 0).is_zero());
  EXPECT_EQ(to_weyl(monomial(Sign::Plus, {0, 0}, Rational(1, 2))), WeylPoly::scalar(Gaussian::I()));
  EXPECT_THROW(monomial(Sign::Plus, {1, 2}), std::invalid_argument);
}

TEST(WeylProduct, CanonicalCommutation) {
  EXPECT_EQ(WeylPoly::a() * WeylPoly::adag(), w(1, 1) + w(0, 0));
  EXPECT_EQ(commutator(WeylPoly::adag(), WeylPoly::a()), w(0, 0, Rational(-1)));
}

TEST(WeylProduct, NumberOperatorSquare) { EXPECT_EQ(w(1, 1) * w(1, 1), w(2, 2) + w(1, 1)); }

// a a^dagger = a^dagger a + 1 in the middle gives a single lower term.
TEST(WeylProduct, MixedExample) {
  const WeylPoly p = w(2, 1) * w(1, 2);
  EXPECT_EQ(p, w(3, 3) + w(2, 2));
  const int n = 8;
  Eigen::MatrixXcd direct = (testing_support::oracle_matrix(w(2, 1), n + 6) * testing_support::oracle_matrix(w(1, 2), n + 6)).topLeftCorner(n, n);
  EXPECT_LT((testing_support::oracle_matrix(p, n) - direct).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(WeylProduct, MatchesFockMatricesOnInterior) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    WeylPoly p = random_weyl(rng, 4), q = random_weyl(rng, 4);
    const int n = 10;
    Eigen::MatrixXcd lhs = testing_support::oracle_matrix(p * q, n);
    Eigen::MatrixXcd big_p = testing_support::oracle_matrix(p, n + 12), big_q = testing_support::oracle_matrix(q, n + 12);
    Eigen::MatrixXcd rhs = (big_p * big_q).topLeftCorner(n, n);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(WeylProduct, AssociativeAndDistributive) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    WeylPoly x = random_weyl(rng, 4), y = random_weyl(rng, 4), z = random_weyl(rng, 4);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_LE((x * y).degree(), x.degree() + y.degree());
  }
}

TEST(Dagger, Involution) {
  EXPECT_EQ(dagger(w(2, 1)), w(1, 2));
  EXPECT_EQ(dagger(WeylPoly::scalar(Gaussian::I())), WeylPoly::scalar(Gaussian(0, -1)));
  WeylPoly g = to_weyl(gp(2, 1));
  EXPECT_EQ(dagger(g), g * WeylPoly::scalar(Rational(-1)));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    WeylPoly p = random_weyl(rng, 3), q = random_weyl(rng, 3);
    EXPECT_EQ(dagger(dagger(p)), p);
    EXPECT_EQ(dagger(p * q), dagger(q) * dagger(p));
  }
}

TEST(SkewConversion, Examples) {
  EXPECT_EQ(to_weyl(gm(1)), w(0, 1) - w(1, 0));
  EXPECT_THROW(from_weyl(w(0, 1) + w(1, 0)), std::domain_error);
  EXPECT_EQ(from_weyl(w(2, 2, Gaussian(0, 2))), gp(2, 2));
}

TEST(SkewConversion, RoundTripAndSkewness) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    SkewPoly s = random_skew(rng, 6);
    EXPECT_EQ(from_weyl(to_weyl(s)), s);
    EXPECT_EQ(dagger(to_weyl(s)), to_weyl(s) * WeylPoly::scalar(Rational(-1)));
  }
}

TEST(Projection, Examples) {
  EXPECT_EQ(project(gp(1) + gp(2, 2), Subspace::Aeq), gp(2, 2));
  EXPECT_EQ(project(unit_i(), Subspace::A0), unit_i());
  EXPECT_EQ(project(gm(3, 1), Subspace::Aperp), gm(3, 1));
  EXPECT_EQ(project(gp(2) + number_op(), Subspace::A2), gp(2));
}

TEST(Projection, PartitionOfUnity) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    SkewPoly s = random_skew(rng, 6, 6);
    SkewPoly sum;
    for (auto k : {Subspace::A0, Subspace::A1, Subspace::A2, Subspace::Aeq, Subspace::Aperp}) sum += project(s, k);
    EXPECT_EQ(sum, s);
  }
}

TEST(Degree, Examples) {
  EXPECT_EQ(degree(SkewPoly{}), kDegreeNegInf);
  EXPECT_EQ(degree(gp(2)), 2);
  EXPECT_EQ(degree(gp(1, 1) + gm(3)), 3);
}

TEST(Json, RoundTripsBothForms) {
  SkewPoly s = gp(2, 0, Rational(3, 2)) + gm(1) + unit_i();
  EXPECT_EQ(skew_from_json(to_json(s)), s);
  EXPECT_EQ(skew_from_json(to_json(to_weyl(s))), s);
  auto j = json::parse(R"({"skew":[{"sigma":"+","alpha":2,"beta":0,"coeff":"3/2"}]})");
  EXPECT_EQ(skew_from_json(j), gp(2, 0, Rational(3, 2)));
  auto wj = json::parse(R"({"weyl":[{"alpha":1,"beta":1,"re":"0","im":"1"}]})");
  EXPECT_EQ(weyl_from_json(wj), w(1, 1, Gaussian::I()));
}

TEST(Json, ErrorsCarryPointers) {
  auto bad = json::parse(R"({"skew":[{"sigma":"+","alpha":1,"beta":2,"coeff":"1"}]})");
  try {
    skew_from_json(bad);
    FAIL();
  } catch (const JsonInputError& e) {
    EXPECT_EQ(e.pointer, "/skew/0");
  }
  auto dec = json::parse(R"({"skew":[{"sigma":"+","alpha":1,"beta":0,"coeff":"0.5"}]})");
  try {
    skew_from_json(dec);
    FAIL();
  } catch (const JsonInputError& e) {
    EXPECT_EQ(e.pointer, "/skew/0/coeff");
  }
}
