#include "carleman/special.hpp"

#include "carleman/errors.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace carleman {

namespace {

constexpr double kPoleGuard = 1e-9;
constexpr double kIntegerTol = 1e-12;

template <class Real>
double near_integer(const Real& x, long long* k) {
  const double xd = to_double(x);
  const double r = std::round(xd);
  *k = static_cast<long long>(r);
  return std::abs(xd - r);
}

template <class Real>
bool at_pole(const Real& x) {
  long long k = 0;
  return near_integer(x, &k) < kPoleGuard && k <= 0;
}

[[noreturn]] void pole(const char* what, double x) {
  std::ostringstream os;
  os << what << ": Gamma pole at " << x;
  throw PoleError(os.str());
}

// Real-valued Gamma primitives, one overload set per scalar type.
double tgamma_raw(double x) { return std::tgamma(x); }
BigFloat tgamma_raw(const BigFloat& x) { return boost::multiprecision::tgamma(x); }

SignedLog<double> lgamma_raw(double x) {
  int sign = 1;
  const double v = ::lgamma_r(x, &sign);
  return {v, sign};
}
SignedLog<BigFloat> lgamma_raw(const BigFloat& x) {
  BigFloat r;
  int sign = 1;
  mpfr_lgamma(r.backend().data(), &sign, x.backend().data(), MPFR_RNDN);
  return {r, sign};
}

// sin(πx) with the argument reduced to [-1, 1] first; the reduction is exact.
template <class Real>
Real sin_pi(const Real& x) {
  using std::round;
  using std::sin;
  const Real r = x - Real(2) * round(x / Real(2));
  return sin(pi_v<Real>() * r);
}

template <class Real>
Real gamma_impl(const Real& x) {
  if (at_pole(x)) pole("gamma", to_double(x));
  if (x < Real(0.5)) {
    // Reflection keeps the evaluation on the well-conditioned half line.
    return pi_v<Real>() / (sin_pi(x) * tgamma_raw(Real(1) - x));
  }
  return tgamma_raw(x);
}

template <class Real>
SignedLog<Real> lgamma_impl(const Real& x) {
  if (at_pole(x)) pole("log_abs_gamma", to_double(x));
  return lgamma_raw(x);
}

// Residue of Γ at -p is (-1)^p / p!; ratios of residues resolve cancelled poles.
template <class Real>
SignedLog<Real> log_residue(long long p) {
  const auto lf = lgamma_raw(Real(p + 1));
  return {-lf.log_abs, (p % 2 == 0) ? 1 : -1};
}

template <class Real>
Real exact_integer_binomial(long long n, long long k) {
  if (k < 0 || k > n) return Real(0);
  k = std::min(k, n - k);
  if (n <= 60) {
    std::uint64_t r = 1;
    for (long long i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return Real(r);
  }
  Real r(1);
  for (long long i = 1; i <= k; ++i) r = r * Real(n - k + i) / Real(i);
  return r;
}

template <class Real>
SignedLog<Real> log_binomial_impl(const Real& a, const Real& b) {
  const Real x = a + Real(1);
  const Real y = b + Real(1);
  const Real w = a - b + Real(1);
  long long ka = 0, kb = 0, kw = 0;
  const bool int_a = near_integer(a, &ka) < kIntegerTol;
  const bool int_b = near_integer(b, &kb) < kIntegerTol;
  if (int_a && int_b && ka >= 0 && kb >= 0) {
    const Real v = exact_integer_binomial<Real>(ka, kb);
    if (v == Real(0)) return {-Real(std::numeric_limits<double>::infinity()), 0};
    using std::log;
    return {log(v), 1};
  }
  const bool px = at_pole(x), py = at_pole(y), pw = at_pole(w);
  if (!px) {
    if (py || pw) return {-Real(std::numeric_limits<double>::infinity()), 0};
    const auto gx = lgamma_raw(x), gy = lgamma_raw(y), gw = lgamma_raw(w);
    return {gx.log_abs - gy.log_abs - gw.log_abs, gx.sign * gy.sign * gw.sign};
  }
  // Numerator pole: finite only when a denominator pole cancels it, taking
  // the limit a -> a + eps with b fixed.
  near_integer(x, &ka);
  if (py) return {-Real(std::numeric_limits<double>::infinity()), 0};
  if (!pw) pole("gen_binomial", to_double(x));
  near_integer(w, &kw);
  const auto rx = log_residue<Real>(-ka);
  const auto rw = log_residue<Real>(-kw);
  const auto gy = lgamma_raw(y);
  return {rx.log_abs - rw.log_abs - gy.log_abs, rx.sign * rw.sign * gy.sign};
}

template <class Real>
Real binomial_impl(const Real& a, const Real& b) {
  long long ka = 0, kb = 0;
  if (near_integer(a, &ka) < kIntegerTol && near_integer(b, &kb) < kIntegerTol &&
      ka >= 0 && kb >= 0)
    return exact_integer_binomial<Real>(ka, kb);
  const Real x = a + Real(1), y = b + Real(1), w = a - b + Real(1);
  if (!at_pole(x) && !at_pole(y) && !at_pole(w) && to_double(x) < 150.0 &&
      to_double(y) < 150.0 && to_double(w) < 150.0 && to_double(x) > -150.0 &&
      to_double(y) > -150.0 && to_double(w) > -150.0)
    return gamma_impl(x) / (gamma_impl(y) * gamma_impl(w));
  const auto l = log_binomial_impl(a, b);
  if (l.sign == 0) return Real(0);
  using std::exp;
  return Real(l.sign) * exp(l.log_abs);
}

}  // namespace

double gamma(double x) { return gamma_impl(x); }
BigFloat gamma(const BigFloat& x) { return gamma_impl(x); }

SignedLog<double> log_abs_gamma(double x) { return lgamma_impl(x); }
SignedLog<BigFloat> log_abs_gamma(const BigFloat& x) { return lgamma_impl(x); }

double gen_binomial(double a, double b) { return binomial_impl(a, b); }
BigFloat gen_binomial(const BigFloat& a, const BigFloat& b) {
  return binomial_impl(a, b);
}

SignedLog<double> log_abs_gen_binomial(double a, double b) {
  return log_binomial_impl(a, b);
}
SignedLog<BigFloat> log_abs_gen_binomial(const BigFloat& a, const BigFloat& b) {
  return log_binomial_impl(a, b);
}

}  // namespace carleman
