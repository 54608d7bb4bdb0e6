#include "carleman/asymptotics.hpp"

#include "carleman/special.hpp"

#include <cmath>
#include <sstream>

namespace carleman {

namespace {

constexpr double kMargin = 1e-3;

void require_corners(const Domain& d, const char* op) {
  if (d.corners().empty()) throw DomainError(std::string(op) + ": domain has no corners");
}

void require_inside_L_rho(const Domain& d, cplx z, double corner_gap, const char* op) {
  if (d.level_modulus(z) > 1.0 - kMargin)
    throw DomainError(std::string(op) + ": point lies outside G_rho");
  for (const auto& c : d.corners())
    if (std::abs(z - c.z) < corner_gap) throw DomainError(std::string(op) + ": point too close to a corner");
}

int lane_of(const Domain& d, int n, int* m) {
  *m = n / d.s();
  return n % d.s();
}

}  // namespace

nlohmann::json RateReport::to_json() const {
  nlohmann::json j = {{"ns", ns},
          {"values", values},
          {"fitted_slope", fitted_slope},
          {"predicted_slope", predicted_slope},
          {"tol", slope_tolerance},
          {"pass", pass},
          {"check", check}};
  for (const auto& [key, value] : extra.items()) j[key] = value;
  return j;
}

RateReport rate_regression(const std::vector<int>& ns, const std::vector<double>& values,
                           double predicted_slope, double tol) {
  if (ns.size() != values.size()) throw DegenerateInput("rate_regression: ns and values differ in length");
  if (ns.size() < 4) throw DegenerateInput("rate_regression: need at least 4 points");
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (ns[i] <= ns[i - 1]) throw DegenerateInput("rate_regression: ns must be strictly increasing");
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v)) throw DegenerateInput("rate_regression: values must be positive");
  const double k = static_cast<double>(ns.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double x = ns[i], y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  RateReport rep;
  rep.ns = ns;
  rep.values = values;
  rep.fitted_slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  rep.predicted_slope = predicted_slope;
  rep.slope_tolerance = tol;
  rep.pass = std::abs(rep.fitted_slope - predicted_slope) <= tol;
  return rep;
}

cplx carleman_approx(const Domain& d, int n, cplx z) {
  const cplx w = exterior_inverse(d, z);
  return std::sqrt(n + 1.0) * exterior_inverse_deriv(d, z) * std::pow(w, n);
}

double h_n_deviation(const Domain& d, const OrthonormalSet& set, int n, double r, int m) {
  double worst = 0.0;
  for (const cplx z : level_curve(d, r, m))
    worst = std::max(worst, std::abs(set.evaluate(n, z) / carleman_approx(d, n, z) - 1.0));
  return worst;
}

cplx integral_representation(const Domain& d, int n, cplx z, int m_nodes) {
  if (n < 0) throw RangeError("integral_representation: n must be non-negative");
  if (m_nodes < 256) throw RangeError("integral_representation: m_nodes must be at least 256");
  if (!d.in_closed_G1(z) || std::abs(maps::interior(d, z)) > 1.0 - kMargin)
    throw DomainError("integral_representation: point must lie in G_1 away from L_1");
  const cplx fz = maps::interior(d, z);
  auto term = [&](const cplx& t, std::vector<cplx>& out) {
    out[0] += std::pow(t, n + 1) / (maps::interior(d, maps::psi(d, t)) - fz);
  };
  const auto v = detail::nested_trapezoid<double>(m_nodes, 1, 1e-11, term, "integral_representation", 5);
  return std::sqrt(n + 1.0) * maps::interior_deriv(d, z) * v[0];
}

cplx epsilon_n(const Domain& d, const OrthonormalSet& set, int n, cplx z) {
  return set.evaluate(n, z) - integral_representation(d, n, z);
}

int minimal_corner_count(const Domain& d) {
  const auto& cs = d.corners();
  int u = 0;
  for (const auto& c : cs)
    if (std::abs(c.lambda - cs.front().lambda) <= 1e-12) ++u;
  return u;
}

double corner_prefactor(const Domain& d, int n) {
  require_corners(d, "corner_prefactor");
  const double lambda = d.corners().front().lambda;
  const auto b = log_abs_gen_binomial(double(n), -lambda - 1.0);
  const double log_value = 0.5 * std::log(n + 1.0) + b.log_abs + (n + 1.0 + lambda) * std::log(d.rho());
  return b.sign * std::exp(log_value);
}

namespace {

cplx corner_sum(const Domain& d, int n, cplx z) {
  const auto& cs = d.corners();
  const int u = minimal_corner_count(d);
  const double lambda = cs.front().lambda;
  cplx acc = 0.0;
  for (int k = 0; k < u; ++k)
    acc += kernel_L(d, cs[k].z, z) * cs[k].A * std::polar(1.0, (n + 1.0 + lambda) * cs[k].theta);
  return acc;
}

}  // namespace

cplx corner_leading_term(const Domain& d, int n, cplx z) {
  require_corners(d, "corner_leading_term");
  require_inside_L_rho(d, z, kMargin, "corner_leading_term");
  return -corner_prefactor(d, n) * corner_sum(d, n, z);
}

cplx near_boundary_approx(const Domain& d, int n, cplx z) {
  if (!d.in_Omega_rho(z)) throw DomainError("near_boundary_approx: point lies inside L_rho");
  const double r = std::abs(maps::phi(d, z));
  if (!(r > d.rho() && r < 1.0)) throw DomainError("near_boundary_approx: |phi(z)| must lie in (rho, 1)");
  for (const auto& c : d.corners())
    if (std::abs(z - c.z) < 0.1) throw DomainError("near_boundary_approx: point too close to a corner");
  const cplx carleman = carleman_approx(d, n, z);
  if (d.corners().empty()) return carleman;
  return carleman - corner_prefactor(d, n) * corner_sum(d, n, z);
}

cplx corner_value_model(const Domain& d, int n, int j) {
  require_corners(d, "corner_value_model");
  const auto& cs = d.corners();
  if (j < 0 || j >= static_cast<int>(cs.size())) throw RangeError("corner_value_model: corner index out of range");
  double lambda_star = 0.0;
  for (const auto& c : cs)
    if (std::abs(c.z - cs[j].z) <= 1e-12) lambda_star = std::max(lambda_star, c.lambda);
  cplx acc = 0.0;
  for (const auto& c : cs)
    if (std::abs(c.z - cs[j].z) <= 1e-12 && std::abs(c.lambda - lambda_star) <= 1e-12)
      acc += std::polar(1.0, (n + 1.0 - lambda_star) * c.theta) / c.A;
  const auto b = log_abs_gen_binomial(double(n), lambda_star - 1.0);
  if (b.sign == 0) return 0.0;
  const double pref =
      b.sign * std::exp(0.5 * std::log(n + 1.0) + b.log_abs + (n + 1.0 - lambda_star) * std::log(d.rho()));
  return pref * acc;
}

namespace {

void require_interior_lane(const Domain& d, int n, const char* op, int* l, int* m) {
  if (d.is_disk()) throw DomainError(std::string(op) + ": requires a lemniscate");
  if (n < 0) throw RangeError(std::string(op) + ": n must be non-negative");
  *l = lane_of(d, n, m);
  if (*l == d.s() - 1) throw RangeError(std::string(op) + ": n = s-1 (mod s) is covered by the exact closed form");
}

// log of n! √(n+1) / (R^{n+1} Γ(n + (3s−l−1)/s)), the factor turning the
// normalized left-hand side back into P_n.
double log_lhs_scale(const Domain& d, int n, int l) {
  const int s = d.s();
  return std::lgamma(n + 1.0) + 0.5 * std::log(n + 1.0) - (n + 1.0) * std::log(d.R()) -
         std::lgamma(n + double(3 * s - l - 1) / s);
}

}  // namespace

cplx lemniscate_interior_constant(const Domain& d, int l, cplx z) {
  const int s = d.s();
  const double front = std::pow(double(s), double(2 * s - l - 1) / s) /
                       (std::tgamma(double(s - l)) * gamma(double(1 + l - s) / s));
  return front * kernel_L_zeta_deriv_at_zero(d, s - l - 2, z);
}

cplx lemniscate_interior_second_constant(const Domain& d, int l, cplx z) {
  const int s = d.s();
  const double front = std::pow(double(s), double(s - l - 1) / s) / gamma(double(1 + l - 2 * s) / s);
  const cplx low = kernel_L_zeta_deriv_at_zero(d, s - l - 2, z);
  const cplx high = kernel_L_zeta_derivative(d, 2 * s - l - 2, z);
  return front * ((s - 1.0) / (2.0 * std::tgamma(double(s - l - 1))) * low -
                  double(s) * s / std::tgamma(double(2 * s - l - 1)) * high);
}

cplx lemniscate_interior_lhs(const Domain& d, int n, cplx pn) {
  int l = 0, m = 0;
  require_interior_lane(d, n, "lemniscate_interior_lhs", &l, &m);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * pn * std::exp(-log_lhs_scale(d, n, l));
}

InteriorModel lemniscate_interior_model(const Domain& d, int n, cplx z) {
  int l = 0, m = 0;
  require_interior_lane(d, n, "lemniscate_interior_model", &l, &m);
  if (std::abs(z) < kMargin) throw DomainError("lemniscate_interior_model: z must differ from the corner 0");
  require_inside_L_rho(d, z, kMargin, "lemniscate_interior_model");
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double scale = sign * std::exp(log_lhs_scale(d, n, l));
  return {scale * lemniscate_interior_constant(d, l, z), lemniscate_interior_second_constant(d, l, z)};
}

double kappa_model(const Domain& d, int n) { return std::sqrt(n + 1.0) * std::pow(d.cap(), n + 1); }

}  // namespace carleman
