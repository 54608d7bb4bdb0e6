#include "carleman/numeric.hpp"

#include <cmath>

namespace carleman {

namespace {
unsigned bits_to_digits10(int bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}
}  // namespace

ScopedPrecision::ScopedPrecision(int bits)
    : previous_(BigFloat::default_precision()) {
  BigFloat::default_precision(bits_to_digits10(bits));
}

ScopedPrecision::~ScopedPrecision() { BigFloat::default_precision(previous_); }

int current_precision_bits() {
  BigFloat probe;
  return static_cast<int>(mpfr_get_prec(probe.backend().data()));
}

std::string to_string_exact(const BigFloat& x) {
  const auto prec = mpfr_get_prec(x.backend().data());
  const auto digits = static_cast<std::streamsize>(prec * 0.30103) + 2;
  return x.str(digits, std::ios_base::scientific);
}

BigFloat from_string(const std::string& s) { return BigFloat(s); }

}  // namespace carleman
