#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

#include "weyl/skew_poly.hpp"
#include "weyl/weyl_poly.hpp"

namespace testing_support {

using weyl::Gaussian;
using weyl::MultiIndex;
using weyl::Rational;
using weyl::SkewPoly;
using weyl::WeylPoly;

inline Rational small_rational(std::mt19937_64& rng, int span = 4) {
  std::uniform_int_distribution<int> num(-span, span), den(1, 3);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline WeylPoly random_weyl(std::mt19937_64& rng, int max_deg, int max_terms = 4) {
  std::uniform_int_distribution<int> nterms(1, max_terms), deg(0, max_deg);
  WeylPoly p;
  for (int t = nterms(rng); t > 0; --t) {
    int d = deg(rng);
    std::uniform_int_distribution<int> split(0, d);
    int al = split(rng);
    p.add({al, d - al}, Gaussian(small_rational(rng), small_rational(rng)));
  }
  return p;
}

inline SkewPoly random_skew(std::mt19937_64& rng, int max_deg, int max_terms = 4) {
  std::uniform_int_distribution<int> nterms(1, max_terms), deg(0, max_deg), sg(0, 1);
  SkewPoly p;
  for (int t = nterms(rng); t > 0; --t) {
    int d = deg(rng);
    std::uniform_int_distribution<int> split((d + 1) / 2, d);
    int al = split(rng);
    p += weyl::monomial(sg(rng) ? weyl::Sign::Plus : weyl::Sign::Minus, {al, d - al}, small_rational(rng));
  }
  return p;
}

// Truncated Fock matrices by explicit powers of the ladder matrices, kept
// separate from the library's builder.
inline Eigen::MatrixXcd ladder(int n) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

inline Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& m, int e) {
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  for (int k = 0; k < e; ++k) r = r * m;
  return r;
}

// Built on a padded space so that products of normal-ordered terms are exact
// on the first n rows and columns.
inline Eigen::MatrixXcd oracle_matrix(const WeylPoly& p, int n) {
  const int pad = n + std::max(0, p.degree()) + 1;
  const Eigen::MatrixXcd a = ladder(pad), ad = a.adjoint();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(pad, pad);
  for (const auto& [k, c] : p.terms())
    m += std::complex<double>(c.re.get_d(), c.im.get_d()) * matrix_power(ad, k.alpha) * matrix_power(a, k.beta);
  return m.topLeftCorner(n, n);
}

}  // namespace testing_support
