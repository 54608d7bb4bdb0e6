#pragma once

#include "carleman/geometry.hpp"
#include "carleman/measure.hpp"
#include "carleman/poly.hpp"

#include <iosfwd>
#include <vector>

namespace carleman {

struct ZeroSet {
  std::vector<cplx> roots;
  /// |p(z)| / Σ|c_i| max(1,|z|)^i at each root.
  std::vector<double> residuals;
  int sweeps = 0;

  int degree() const { return static_cast<int>(roots.size()); }
  /// CSV with header `re,im,residual`.
  void write_csv(std::ostream& os) const;
};

/// Aberth–Ehrlich simultaneous iteration at `precision_bits`.
ZeroSet find_roots(const Poly<BigComplex>& p, int precision_bits);
ZeroSet find_roots(const Poly<cplx>& p, int precision_bits);

DiscreteMeasure counting_measure(const ZeroSet& zs);
/// max_{1<=k<=K} |∫ z^k da − ∫ z^k db|.
double moment_discrepancy(const DiscreteMeasure& a, const DiscreteMeasure& b, int K);

struct ZeroFreeRegion {
  enum class Kind { omega_rho_minus_corner_disks, compact_in_G_rho };
  Kind kind;
  double parameter;  // eps for the first kind, margin for the second

  static ZeroFreeRegion omega_rho_minus_corner_disks(double eps) { return {Kind::omega_rho_minus_corner_disks, eps}; }
  static ZeroFreeRegion compact_in_G_rho(double margin) { return {Kind::compact_in_G_rho, margin}; }
};

struct ZeroFreeReport {
  std::vector<cplx> violations;
  bool supported = true;
};

ZeroFreeReport zero_free_check(const Domain& d, const ZeroSet& zs, const ZeroFreeRegion& region);

/// φ_int′(z) Σ_k φ_int′(z_k) Â_k e^{2πiγ_k} / (φ_int(z) − φ_int(z_k))².
cplx limit_function_eval(const Domain& d, const std::vector<double>& phases, cplx z);
/// The limit function with phases γ_k = n θ_k, e^{2πiθ_k} = e^{i(Θ_k−Θ₁)}.
cplx h_n_eval(const Domain& d, int n, cplx z);
/// −P_n(z) / (√(n+1) binom(n, −λ₁−1) ω₁^{n+1+λ₁}).
cplx p_star(const Domain& d, int n, cplx pn);

}  // namespace carleman
