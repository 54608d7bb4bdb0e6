#pragma once

#include "carleman/geometry.hpp"
#include "carleman/ortho.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace carleman {

/// Least-squares log-rate of a deviation sequence against a predicted slope.
/// `check` names the pass rule: "slope" (the default) or a trend rule set by
/// the caller ("monotone", "stabilization", "envelope").
struct RateReport {
  std::vector<int> ns;
  std::vector<double> values;
  double fitted_slope = 0.0;
  double predicted_slope = 0.0;
  double slope_tolerance = 0.0;
  bool pass = false;
  std::string check = "slope";
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
};

RateReport rate_regression(const std::vector<int>& ns, const std::vector<double>& values,
                           double predicted_slope, double tol);

/// √(n+1) φ′(z) φ(z)^n.
cplx carleman_approx(const Domain& d, int n, cplx z);
/// sup over m points of L_r of |P_n / carleman_approx − 1|.
double h_n_deviation(const Domain& d, const OrthonormalSet& set, int n, double r, int m);

/// √(n+1) φ_int′(z) (1/2πi) ∮_{|t|=1} t^n dt / (φ_int(ψ(t)) − φ_int(z)).
cplx integral_representation(const Domain& d, int n, cplx z, int m_nodes = 256);
cplx epsilon_n(const Domain& d, const OrthonormalSet& set, int n, cplx z);

/// √(n+1) · binom(n, −λ₁−1) · ρ^{n+1+λ₁}, assembled in log space.
double corner_prefactor(const Domain& d, int n);
/// Interior corner model of P_n(z) for z inside L_rho.
cplx corner_leading_term(const Domain& d, int n, cplx z);
/// Carleman term plus the corner correction, for z between L_rho and L_1.
cplx near_boundary_approx(const Domain& d, int n, cplx z);
/// Model of P_n at the corner with index j in d.corners().
cplx corner_value_model(const Domain& d, int n, int j);

struct InteriorModel {
  cplx model;            // first-order model of P_n(z)
  cplx remainder_scale;  // predicted limit of n · R_n(z)
};

/// Interior expansion on the lemniscate lanes n = sm + l, 0 <= l <= s-2.
InteriorModel lemniscate_interior_model(const Domain& d, int n, cplx z);
/// The normalized left-hand side (−1)^m R^{n+1} Γ(n+(3s−l−1)/s) P_n / (n! √(n+1)).
cplx lemniscate_interior_lhs(const Domain& d, int n, cplx pn);
/// First-order constant the normalized left-hand side tends to on lane l.
cplx lemniscate_interior_constant(const Domain& d, int l, cplx z);
/// Second-order constant: the predicted limit of n · R_n(z) on lane l.
cplx lemniscate_interior_second_constant(const Domain& d, int l, cplx z);

/// √(n+1) cap^{n+1}.
double kappa_model(const Domain& d, int n);

/// Number of corners sharing the minimal exponent λ₁.
int minimal_corner_count(const Domain& d);

}  // namespace carleman
