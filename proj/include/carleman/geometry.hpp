#pragma once

#include "carleman/errors.hpp"
#include "carleman/measure.hpp"
#include "carleman/numeric.hpp"

#include <string>
#include <vector>

namespace carleman {

enum class DomainKind { disk, lemniscate };

struct CornerDatum {
  cplx omega;     // preimage on |w| = rho
  double theta;   // arg of omega, in [0, 2pi)
  double lambda;  // the corner's exponent
  cplx A;         // leading coefficient of psi(w) - z_k ~ A (w - omega)^lambda
  cplx z;         // corner location psi(omega)
  cplx A_hat;     // A * exp(i (lambda_1 + 1)(theta - theta_1))
};

/// Immutable description of G_1: a disk |z| < R or the lemniscate interior
/// |z^s - 1| < R^s. Corner data is computed on construction.
class Domain {
 public:
  static Domain disk(double R);
  static Domain lemniscate(int s, double R);

  DomainKind kind() const { return kind_; }
  bool is_disk() const { return kind_ == DomainKind::disk; }
  /// Number of petals; 1 for the disk (its maps are the s = 1 monomials).
  int s() const { return s_; }
  double R() const { return R_; }
  double rho() const { return rho_; }
  double cap() const { return 1.0 / R_; }
  const std::vector<CornerDatum>& corners() const { return corners_; }
  std::string name() const;

  /// |z^s - 1| for the lemniscate, |z| for the disk.
  double level_modulus(cplx z) const;
  bool in_closed_G1(cplx z) const;
  /// Inside the open set bounded by L_rho (lemniscate only).
  bool in_G_rho(cplx z) const;
  /// Closure of the exterior of L_rho without the corner points.
  bool in_Omega_rho(cplx z) const;

 private:
  Domain(DomainKind kind, int s, double R);
  void fit_corners();

  DomainKind kind_;
  int s_;
  double R_;
  double rho_;
  std::vector<CornerDatum> corners_;
};

/// Unchecked closed forms for both families, generic in the real type.
namespace maps {

template <class Real>
Cx<Real> psi(const Domain& d, const Cx<Real>& w) {
  const Real R(d.R());
  if (d.is_disk()) return R * w;
  using std::exp;
  using std::log;
  const Cx<Real> rw = R * w;
  return rw * exp(log(Real(1) + Real(1) / ipow(rw, d.s())) / Real(d.s()));
}

template <class Real>
Cx<Real> psi_deriv(const Domain& d, const Cx<Real>& w) {
  const Real R(d.R());
  if (d.is_disk()) return Cx<Real>(R);
  const int s = d.s();
  const Cx<Real> rws1 = ipow(Cx<Real>(R * w), s - 1);
  const Cx<Real> rws = rws1 * R * w;
  return R * rws1 * psi(d, w) / (rws + Real(1));
}

template <class Real>
Cx<Real> phi(const Domain& d, const Cx<Real>& z) {
  const Real R(d.R());
  if (d.is_disk()) return z / R;
  using std::exp;
  using std::log;
  return z * exp(log(Real(1) - Real(1) / ipow(z, d.s())) / Real(d.s())) / R;
}

template <class Real>
Cx<Real> phi_deriv(const Domain& d, const Cx<Real>& z) {
  if (d.is_disk()) return Cx<Real>(Real(1) / Real(d.R()));
  const Cx<Real> zs1 = ipow(z, d.s() - 1);
  return zs1 * phi(d, z) / (zs1 * z - Real(1));
}

template <class Real>
Real interior_c(const Domain& d) {
  Real p(1);
  for (int i = 0; i < 2 * d.s(); ++i) p *= Real(d.R());
  return p - Real(1);
}

template <class Real>
Cx<Real> interior(const Domain& d, const Cx<Real>& z) {
  const Real R(d.R());
  if (d.is_disk()) return z / R;
  using std::exp;
  using std::log;
  const Real c = interior_c<Real>(d);
  return R * z * exp(-log(c + ipow(z, d.s())) / Real(d.s()));
}

template <class Real>
Cx<Real> interior_deriv(const Domain& d, const Cx<Real>& z) {
  const Real R(d.R());
  if (d.is_disk()) return Cx<Real>(Real(1) / R);
  using std::exp;
  using std::log;
  const Real c = interior_c<Real>(d);
  const int s = d.s();
  return R * c * exp(-Real(s + 1) * log(c + ipow(z, s)) / Real(s));
}

template <class Real>
Cx<Real> interior_inverse(const Domain& d, const Cx<Real>& w) {
  const Real R(d.R());
  if (d.is_disk()) return R * w;
  using std::exp;
  using std::log;
  const int s = d.s();
  const Real c = interior_c<Real>(d);
  Real Rs(1);
  for (int i = 0; i < s; ++i) Rs *= R;
  return w * exp(log(c / (Rs - ipow(w, s))) / Real(s));
}

template <class Real>
Cx<Real> interior_inverse_deriv(const Domain& d, const Cx<Real>& w) {
  const Real R(d.R());
  if (d.is_disk()) return Cx<Real>(R);
  using std::exp;
  using std::log;
  const int s = d.s();
  const Real c = interior_c<Real>(d);
  Real Rs(1);
  for (int i = 0; i < s; ++i) Rs *= R;
  const Cx<Real> gap = Rs - ipow(w, s);
  return exp(log(c / gap) / Real(s)) * Rs / gap;
}

}  // namespace maps

cplx exterior_map(const Domain& d, cplx w);
cplx exterior_map_deriv(const Domain& d, cplx w);
cplx exterior_inverse(const Domain& d, cplx z);
cplx exterior_inverse_deriv(const Domain& d, cplx z);
cplx interior_map(const Domain& d, cplx z);
cplx interior_map_deriv(const Domain& d, cplx z);
cplx interior_inverse(const Domain& d, cplx w);
cplx interior_inverse_deriv(const Domain& d, cplx w);

/// φ_int′(ζ) φ_int′(z) / (φ_int(ζ) − φ_int(z))².
cplx kernel_L(const Domain& d, cplx zeta, cplx z);
/// Closed form of ∂^j L / ∂ζ^j at ζ = 0 for the lemniscate, 0 <= j <= s-2.
cplx kernel_L_zeta_deriv_at_zero(const Domain& d, int j, cplx z);
/// ∂^j L / ∂ζ^j at ζ = 0 for any order, by a Cauchy integral on |ζ| = |z|/2.
cplx kernel_L_zeta_derivative(const Domain& d, int j, cplx z, int nodes = 128);
cplx bergman_kernel(const Domain& d, cplx zeta, cplx z);
cplx schwarz_reflect(const Domain& d, cplx z);

std::vector<cplx> level_curve(const Domain& d, double r, int m);
/// Equilibrium measure of L_rho as a positive quadrature rule of total mass 1.
DiscreteMeasure equilibrium_measure(const Domain& d, int m);
double equilibrium_potential(const Domain& d, cplx z);

}  // namespace carleman
