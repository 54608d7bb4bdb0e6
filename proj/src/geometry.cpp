#include "carleman/geometry.hpp"

#include "carleman/quadrature.hpp"
#include "carleman/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace carleman {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kCornerFitBits = 192;

std::string str(cplx z) {
  std::ostringstream os;
  os << '(' << z.real() << ',' << z.imag() << ')';
  return os.str();
}

void require_closed_G1(const Domain& d, cplx z, const char* op) {
  if (!d.in_closed_G1(z))
    throw DomainError(std::string(op) + ": point " + str(z) + " lies outside closure(G_1)");
}

void require_Omega_rho(const Domain& d, cplx z, const char* op) {
  if (!d.in_Omega_rho(z))
    throw DomainError(std::string(op) + ": point " + str(z) + " lies outside Omega_rho");
}

// Regularized incomplete beta I_t(p, p) for integer p, and its derivative.
double graded(double t, int p) {
  double v = 0.0;
  for (int j = p; j <= 2 * p - 1; ++j)
    v += gen_binomial(2.0 * p - 1, j) * std::pow(t, j) * std::pow(1.0 - t, 2 * p - 1 - j);
  return v;
}

double graded_deriv(double t, int p) {
  // 1 / B(p, p) = (2p-1)! / ((p-1)!)^2
  const double inv_beta = p * gen_binomial(2.0 * p - 1, p);
  return inv_beta * std::pow(t * (1.0 - t), p - 1);
}

}  // namespace

Domain::Domain(DomainKind kind, int s, double R) : kind_(kind), s_(s), R_(R), rho_(0.0) {}

Domain Domain::disk(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("disk: R must be positive");
  return Domain(DomainKind::disk, 1, R);
}

Domain Domain::lemniscate(int s, double R) {
  if (s < 2) throw DomainError("lemniscate: s must be at least 2");
  if (!(R > 1.0) || !std::isfinite(R)) throw DomainError("lemniscate: R must exceed 1");
  Domain d(DomainKind::lemniscate, s, R);
  d.rho_ = 1.0 / R;
  d.fit_corners();
  return d;
}

std::string Domain::name() const {
  std::ostringstream os;
  if (is_disk())
    os << "disk(R=" << R_ << ')';
  else
    os << "lemniscate(s=" << s_ << ",R=" << R_ << ')';
  return os.str();
}

void Domain::fit_corners() {
  ScopedPrecision prec(kCornerFitBits);
  const BigFloat pi = pi_v<BigFloat>();
  const BigFloat lambda = BigFloat(1) / BigFloat(s_);
  const BigFloat rho = BigFloat(1) / BigFloat(R_);
  for (int k = 1; k <= s_; ++k) {
    const BigFloat theta = BigFloat(2 * k - 1) * pi / BigFloat(s_);
    const BigComplex dir = std::polar(BigFloat(1), theta);
    auto sample = [&](const BigFloat& t) {
      const BigComplex w = (rho + t) * dir;
      const BigComplex scale = std::polar(pow(t, lambda), lambda * theta);
      return maps::psi(*this, w) / scale;
    };
    // Error terms are in integer powers of t; two Richardson levels.
    const BigFloat t0("1e-4");
    const BigComplex a0 = sample(t0), a1 = sample(t0 / 2), a2 = sample(t0 / 4);
    const BigComplex r0 = BigFloat(2) * a1 - a0, r1 = BigFloat(2) * a2 - a1;
    const BigComplex A = (BigFloat(4) * r1 - r0) / BigFloat(3);

    CornerDatum c;
    c.theta = to_double(theta);
    c.omega = to_double(BigComplex(rho * dir));
    c.lambda = to_double(lambda);
    c.A = to_double(A);
    c.z = 0.0;
    corners_.push_back(c);
  }
  std::stable_sort(corners_.begin(), corners_.end(), [](const CornerDatum& a, const CornerDatum& b) {
    if (std::abs(a.lambda - b.lambda) > 1e-12) return a.lambda < b.lambda;
    return a.theta < b.theta;
  });
  const double theta1 = corners_.front().theta, lambda1 = corners_.front().lambda;
  for (auto& c : corners_) c.A_hat = c.A * std::polar(1.0, (lambda1 + 1.0) * (c.theta - theta1));
}

double Domain::level_modulus(cplx z) const {
  return is_disk() ? std::abs(z) : std::abs(ipow(z, s_) - 1.0);
}

bool Domain::in_closed_G1(cplx z) const {
  const double bound = is_disk() ? R_ : std::pow(R_, s_);
  return level_modulus(z) <= bound * (1.0 + 1e-12);
}

bool Domain::in_G_rho(cplx z) const { return !is_disk() && level_modulus(z) < 1.0; }

bool Domain::in_Omega_rho(cplx z) const {
  if (z == cplx(0.0)) return false;
  return is_disk() || level_modulus(z) >= 1.0 - 1e-12;
}

cplx exterior_map(const Domain& d, cplx w) {
  if (std::abs(w) < d.rho() * (1.0 - 1e-14))
    throw DomainError("exterior_map: |w| < rho for w = " + str(w));
  return maps::psi(d, w);
}

cplx exterior_map_deriv(const Domain& d, cplx w) {
  if (std::abs(w) <= d.rho()) throw DomainError("exterior_map_deriv: |w| <= rho for w = " + str(w));
  return maps::psi_deriv(d, w);
}

cplx exterior_inverse(const Domain& d, cplx z) {
  require_Omega_rho(d, z, "exterior_inverse");
  return maps::phi(d, z);
}

cplx exterior_inverse_deriv(const Domain& d, cplx z) {
  require_Omega_rho(d, z, "exterior_inverse_deriv");
  if (!d.is_disk() && d.level_modulus(z) <= 1.0)
    throw DomainError("exterior_inverse_deriv: singular on L_rho at " + str(z));
  return maps::phi_deriv(d, z);
}

cplx interior_map(const Domain& d, cplx z) {
  require_closed_G1(d, z, "interior_map");
  return maps::interior(d, z);
}

cplx interior_map_deriv(const Domain& d, cplx z) {
  require_closed_G1(d, z, "interior_map_deriv");
  return maps::interior_deriv(d, z);
}

cplx interior_inverse(const Domain& d, cplx w) {
  if (std::abs(w) >= 1.0) throw DomainError("interior_inverse: |w| >= 1 for w = " + str(w));
  return maps::interior_inverse(d, w);
}

cplx interior_inverse_deriv(const Domain& d, cplx w) {
  if (std::abs(w) >= 1.0) throw DomainError("interior_inverse_deriv: |w| >= 1 for w = " + str(w));
  return maps::interior_inverse_deriv(d, w);
}

cplx kernel_L(const Domain& d, cplx zeta, cplx z) {
  require_closed_G1(d, zeta, "kernel_L");
  require_closed_G1(d, z, "kernel_L");
  if (std::abs(zeta - z) < 1e-13) throw CoincidenceError("kernel_L: zeta and z coincide");
  const cplx diff = maps::interior(d, zeta) - maps::interior(d, z);
  return maps::interior_deriv(d, zeta) * maps::interior_deriv(d, z) / (diff * diff);
}

cplx kernel_L_zeta_deriv_at_zero(const Domain& d, int j, cplx z) {
  if (d.is_disk()) throw DomainError("kernel_L_zeta_deriv_at_zero: requires a lemniscate");
  const int s = d.s();
  if (j < 0 || j > s - 2)
    throw RangeError("kernel_L_zeta_deriv_at_zero: order must lie in [0, s-2]");
  if (std::abs(z) < 1e-13) throw CoincidenceError("kernel_L_zeta_deriv_at_zero: z = 0");
  require_closed_G1(d, z, "kernel_L_zeta_deriv_at_zero");
  const int l = s - j - 2;
  const double c = maps::interior_c<double>(d);
  const double factorial = std::tgamma(j + 2.0);
  const cplx ratio = c / (c + ipow(z, s));
  return factorial * std::pow(z, double(l - s)) * std::exp(std::log(ratio) * (double(l + 1) / s));
}

cplx kernel_L_zeta_derivative(const Domain& d, int j, cplx z, int nodes) {
  if (j < 0) throw RangeError("kernel_L_zeta_derivative: negative order");
  if (std::abs(z) < 1e-13) throw CoincidenceError("kernel_L_zeta_derivative: z = 0");
  require_closed_G1(d, z, "kernel_L_zeta_derivative");
  const double r = 0.5 * std::abs(z);
  const cplx fz = maps::interior(d, z), dfz = maps::interior_deriv(d, z);
  cplx acc = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const cplx zeta = std::polar(r, 2.0 * kPi * i / nodes);
    const cplx diff = maps::interior(d, zeta) - fz;
    acc += maps::interior_deriv(d, zeta) * dfz / (diff * diff) / ipow(zeta, j);
  }
  return std::tgamma(j + 1.0) * acc / double(nodes);
}

cplx bergman_kernel(const Domain& d, cplx zeta, cplx z) {
  require_closed_G1(d, zeta, "bergman_kernel");
  require_closed_G1(d, z, "bergman_kernel");
  const cplx fz = maps::interior(d, z), fzeta = maps::interior(d, zeta);
  const cplx den = 1.0 - std::conj(fz) * fzeta;
  return std::conj(maps::interior_deriv(d, z)) * maps::interior_deriv(d, zeta) / (den * den);
}

cplx schwarz_reflect(const Domain& d, cplx z) {
  require_Omega_rho(d, z, "schwarz_reflect");
  const cplx w = maps::phi(d, z);
  if (d.rho() > 0.0 && std::abs(w) * d.rho() >= 1.0)
    throw DomainError("schwarz_reflect: point " + str(z) + " lies outside G_{1/rho}");
  return maps::psi(d, 1.0 / std::conj(w));
}

std::vector<cplx> level_curve(const Domain& d, double r, int m) {
  if (!(r > d.rho())) throw DomainError("level_curve: r must exceed rho");
  if (m < 8) throw RangeError("level_curve: m must be at least 8");
  std::vector<cplx> pts(m);
  for (int j = 0; j < m; ++j) pts[j] = maps::psi(d, std::polar(r, 2.0 * kPi * j / m));
  return pts;
}

DiscreteMeasure equilibrium_measure(const Domain& d, int m) {
  if (d.is_disk()) throw DomainError("equilibrium_measure: unsupported for the disk (rho = 0)");
  if (m < 16) throw RangeError("equilibrium_measure: m must be at least 16");
  // One panel between consecutive corner preimages; the grading exponent
  // equal to s makes psi analytic in the panel variable.
  const int panels = static_cast<int>(d.corners().size());
  const int p = d.s();
  const double span = 2.0 * kPi / panels;
  DiscreteMeasure mu;
  mu.points.reserve(m);
  mu.weights.reserve(m);
  std::vector<double> starts;
  for (const auto& c : d.corners()) starts.push_back(c.theta);
  std::sort(starts.begin(), starts.end());
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const int n = m / panels + (k < m % panels ? 1 : 0);
    const auto rule = gauss_legendre_unit(n);
    for (int i = 0; i < n; ++i) {
      const double t = rule.nodes[i];
      const double theta = starts[k] + span * graded(t, p);
      const double w = rule.weights[i] * graded_deriv(t, p) / panels;
      mu.points.push_back(maps::psi(d, std::polar(d.rho(), theta)));
      mu.weights.push_back(w);
      total += w;
    }
  }
  for (double& w : mu.weights) w /= total;
  return mu;
}

double equilibrium_potential(const Domain& d, cplx z) {
  require_Omega_rho(d, z, "equilibrium_potential");
  return std::log(d.cap()) - std::log(std::abs(maps::phi(d, z)));
}

}  // namespace carleman
