#pragma once

#include "carleman/numeric.hpp"

#include <vector>

namespace carleman {

/// Polynomial with ascending coefficients; coeffs.back() is the leading one.
template <class C>
struct Poly {
  std::vector<C> coeffs;

  Poly() = default;
  explicit Poly(std::vector<C> c) : coeffs(std::move(c)) {}

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const C& leading() const { return coeffs.back(); }

  C operator()(const C& z) const {
    C acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Poly derivative() const {
    std::vector<C> d;
    for (std::size_t i = 1; i < coeffs.size(); ++i) d.push_back(coeffs[i] * C(static_cast<int>(i)));
    if (d.empty()) d.push_back(C(0));
    return Poly(std::move(d));
  }

  /// Primitive vanishing at 0.
  Poly antiderivative() const {
    std::vector<C> a(coeffs.size() + 1, C(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) a[i + 1] = coeffs[i] / C(static_cast<int>(i + 1));
    return Poly(std::move(a));
  }
};

template <class To, class From>
Poly<To> poly_cast(const Poly<From>& p) {
  std::vector<To> c;
  c.reserve(p.coeffs.size());
  for (const auto& x : p.coeffs) {
    if constexpr (std::is_same_v<To, cplx>)
      c.push_back(to_double(x));
    else
      c.push_back(To(typename To::value_type(x.real()), typename To::value_type(x.imag())));
  }
  return Poly<To>(std::move(c));
}

}  // namespace carleman
