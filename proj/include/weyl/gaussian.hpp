#pragma once

#include <complex>
#include <string>

#include "weyl/rational.hpp"

namespace weyl {

// Exact a + b i over the rationals.
struct Gaussian {
  Rational re;
  Rational im;

  Gaussian() = default;
  Gaussian(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  static Gaussian I() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  Gaussian conj() const { return {re, -im}; }

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Gaussian& operator*=(const Rational& s) {
    re *= s;
    im *= s;
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) {
    Rational n = o.re * o.re + o.im * o.im;
    Gaussian t = *this;
    t *= o.conj();
    re = t.re / n;
    im = t.im / n;
    return *this;
  }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator*(Gaussian a, const Rational& s) { return a *= s; }
  friend Gaussian operator*(const Rational& s, Gaussian a) { return a *= s; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  Gaussian operator-() const { return {-re, -im}; }

  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

inline std::string to_string(const Gaussian& z) {
  return "(" + to_string(z.re) + ")+(" + to_string(z.im) + ")i";
}

}  // namespace weyl
