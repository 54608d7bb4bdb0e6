#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <numbers>

namespace carleman {

using BigFloat = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;
using BigComplex = std::complex<BigFloat>;
using cplx = std::complex<double>;

template <class Real>
using Cx = std::complex<Real>;

/// Sets the working precision of newly created BigFloat values for the
/// lifetime of the object.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(int bits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned previous_;
};

int current_precision_bits();

template <class Real>
Real pi_v() {
  if constexpr (std::is_floating_point_v<Real>) {
    return std::numbers::pi_v<Real>;
  } else {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
  }
}

inline double to_double(double x) { return x; }
inline double to_double(const BigFloat& x) { return x.convert_to<double>(); }
inline cplx to_double(const cplx& z) { return z; }
inline cplx to_double(const BigComplex& z) {
  return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
}

template <class Real>
Cx<Real> to_cx(const cplx& z) {
  return {Real(z.real()), Real(z.imag())};
}

/// z^k for integer k >= 0 by repeated squaring.
template <class C>
C ipow(C z, int k) {
  C r(1);
  while (k > 0) {
    if (k & 1) r *= z;
    z *= z;
    k >>= 1;
  }
  return r;
}

/// a/b without the overflow-safe scaling std::complex performs; the operands
/// here are well scaled and this avoids a square root per division.
template <class Real>
Cx<Real> fast_div(const Cx<Real>& a, const Cx<Real>& b) {
  const Real d = b.real() * b.real() + b.imag() * b.imag();
  return {(a.real() * b.real() + a.imag() * b.imag()) / d,
          (a.imag() * b.real() - a.real() * b.imag()) / d};
}

template <class Real>
Real abs2(const Cx<Real>& z) {
  return z.real() * z.real() + z.imag() * z.imag();
}

/// Decimal string carrying all significant digits of x.
std::string to_string_exact(const BigFloat& x);
BigFloat from_string(const std::string& s);

}  // namespace carleman
