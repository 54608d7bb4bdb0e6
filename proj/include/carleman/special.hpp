#pragma once

#include "carleman/numeric.hpp"

#include <utility>

namespace carleman {

/// Signed logarithm of a real value: value = sign * exp(log_abs).
template <class Real>
struct SignedLog {
  Real log_abs;
  int sign;  // +1, -1, or 0 for an exact zero (log_abs = -inf)
};

double gamma(double x);
BigFloat gamma(const BigFloat& x);

/// Γ(a+1) / (Γ(b+1) Γ(a−b+1)). Exact for non-negative integers b <= a.
double gen_binomial(double a, double b);
BigFloat gen_binomial(const BigFloat& a, const BigFloat& b);

SignedLog<double> log_abs_gen_binomial(double a, double b);
SignedLog<BigFloat> log_abs_gen_binomial(const BigFloat& a, const BigFloat& b);

/// log|Γ(x)| and the sign of Γ(x).
SignedLog<double> log_abs_gamma(double x);
SignedLog<BigFloat> log_abs_gamma(const BigFloat& x);

}  // namespace carleman
