// Acceptance checks. Usage: acceptance [id ...]; no ids runs 1..10.
// Each check prints one line "criterion N: PASS|FAIL detail" and the exit
// status is nonzero if any requested check fails.

#include "carleman/asymptotics.hpp"
#include "carleman/ortho.hpp"
#include "carleman/special.hpp"
#include "carleman/zeros.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace carleman;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Worst coefficientwise relative error; coefficients that are zero in the
// reference are measured against the largest reference coefficient.
double coeff_error(const Poly<cplx>& got, const Poly<cplx>& ref) {
  double scale = 0.0;
  for (const cplx c : ref.coeffs) scale = std::max(scale, std::abs(c));
  double worst = 0.0;
  for (int i = 0; i <= std::max(got.degree(), ref.degree()); ++i) {
    const cplx g = i <= got.degree() ? got.coeffs[i] : 0.0;
    const cplx r = i <= ref.degree() ? ref.coeffs[i] : 0.0;
    const double denom = std::abs(r) > 0.0 ? std::abs(r) : scale;
    worst = std::max(worst, std::abs(g - r) / denom);
  }
  return worst;
}

Outcome exact_closed_forms() {
  const double tol = 1e-8, budget = 60.0;
  Stopwatch clock;
  double worst = 0.0;
  for (int s : {2, 3})
    for (double R : {1.2, 1.4}) {
      const Domain d = Domain::lemniscate(s, R);
      const OrthonormalSet set = gram_cholesky_orthonormalize(d, 29, 256);
      for (int n = s - 1; n <= 29; n += s)
        worst = std::max(worst, coeff_error(set.poly_double(n), closed_form_lemniscate<double>(d, n)));
    }
  const double t = clock.seconds();
  return {worst <= tol && t <= budget, "max rel coeff error " + fmt(worst) + " (tol " + fmt(tol) + "), " + fmt(t) + " s"};
}

Outcome disk_exactness() {
  const double tol = 1e-10, budget = 5.0;
  Stopwatch clock;
  const Domain d = Domain::disk(2.0);
  const int N = 20;
  const OrthonormalSet chol = gram_cholesky_orthonormalize(d, N, default_precision_bits(N));
  const OrthonormalSet arn = arnoldi_orthonormalize(d, N, make_area_rule(d, 32, 128));
  double worst = 0.0;
  for (int n = 0; n <= N; ++n) {
    std::vector<cplx> c(n + 1, 0.0);
    c[n] = std::sqrt(n + 1.0) / std::pow(2.0, n + 1);
    const Poly<cplx> exact(c);
    worst = std::max({worst, coeff_error(chol.poly_double(n), exact), coeff_error(arn.poly_double(n), exact)});
  }
  const double t = clock.seconds();
  return {worst <= tol && t <= budget, "max rel coeff error " + fmt(worst) + " over both engines, " + fmt(t) + " s"};
}

Outcome orthonormality() {
  const double tol = 1e-8, budget = 120.0;
  Stopwatch clock;
  const Domain d = Domain::lemniscate(3, 1.4);
  const OrthonormalSet set = gram_cholesky_orthonormalize(d, 25, default_precision_bits(25));
  // Rule unrelated to the boundary moments used to build the set.
  const double residual = gram_residual(set, make_area_rule(d, 64, 256));
  const double t = clock.seconds();
  return {residual <= tol && t <= budget, "Gram residual " + fmt(residual) + ", " + fmt(t) + " s"};
}

// Degrees n = s-1 (mod s) have exact closed forms whose deviations sit at
// rounding level; they are left out of the log-linear fits.
bool exact_lane(const Domain& d, int n) { return n % d.s() == d.s() - 1; }

Outcome carleman_rate() {
  const Domain d = Domain::lemniscate(3, 1.4);
  const OrthonormalSet set = gram_cholesky_orthonormalize(d, 30, 256);
  std::vector<int> ns;
  std::vector<double> values;
  for (int n = 10; n <= 30; ++n) {
    if (exact_lane(d, n)) continue;
    ns.push_back(n);
    values.push_back(h_n_deviation(d, set, n, 1.0, 64));
  }
  const RateReport r = rate_regression(ns, values, std::log(1.0 / 1.4), 0.15);
  return {r.pass, "slope " + fmt(r.fitted_slope) + " vs " + fmt(r.predicted_slope) + " +- 0.15"};
}

Outcome representation_rate() {
  const Domain d = Domain::lemniscate(3, 1.4);
  const OrthonormalSet set = gram_cholesky_orthonormalize(d, 24, 256);
  const auto pts = level_curve(d, 0.85, 64);
  std::vector<int> ns;
  std::vector<double> values;
  for (int n = 8; n <= 24; ++n) {
    if (exact_lane(d, n)) continue;
    double worst = 0.0;
    for (const cplx z : pts) worst = std::max(worst, std::abs(epsilon_n(d, set, n, z)));
    ns.push_back(n);
    values.push_back(worst);
  }
  const RateReport r = rate_regression(ns, values, std::log(0.85 / 1.4), 0.2);
  return {r.pass, "slope " + fmt(r.fitted_slope) + " vs " + fmt(r.predicted_slope) + " +- 0.2"};
}

Outcome corner_dichotomy() {
  const Domain d = Domain::lemniscate(3, 1.4);
  // 20 points inside the petals of L_rho.
  std::vector<cplx> pts;
  for (int i = 0; pts.size() < 20; ++i) {
    const cplx z = std::polar(0.3 + 0.035 * (i % 20), 2 * kPi * (i % 3) / 3 + 0.25 * std::sin(1.7 * i));
    if (d.in_G_rho(z)) pts.push_back(z);
  }
  double vanish = 0.0;
  for (int n = 6; n <= 24; ++n) {
    if (n % 3 == 1) continue;
    for (const cplx z : pts) vanish = std::max(vanish, std::abs(corner_leading_term(d, n, z)));
  }
  const OrthonormalSet set = gram_cholesky_orthonormalize(d, 22, 256);
  std::vector<double> devs;
  std::string seq;
  for (int n : {13, 16, 19, 22}) {
    devs.push_back(std::abs(set.evaluate(n, 0.3) / corner_leading_term(d, n, 0.3) - 1.0));
    seq += (seq.empty() ? "" : ", ") + fmt(devs.back());
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < devs.size(); ++i) decreasing = decreasing && devs[i] < devs[i - 1];
  const bool pass = vanish <= 1e-12 && decreasing;
  return {pass, "max off-lane model " + fmt(vanish) + "; |P_n(0.3)/model-1| at n=13,16,19,22: " + seq};
}

Outcome interior_lanes() {
  const Domain d = Domain::lemniscate(3, 1.4);
  const OrthonormalSet set = gram_cholesky_orthonormalize(d, 25, 256);
  const double tol = 0.2, fd_tol = 1e-6;
  bool pass = true;
  std::ostringstream detail;
  for (const cplx z : {cplx(0.3), std::polar(0.5, kPi / 5)}) {
    for (int l : {0, 1}) {
      detail << "[z=" << fmt(z.real()) << (z.imag() >= 0 ? "+" : "") << fmt(z.imag()) << "i l=" << l << "] ";
      // Kernel-derivative closed form against central differences in ζ.
      const cplx closed = kernel_L_zeta_deriv_at_zero(d, 1 - l, z);
      cplx fd;
      if (l == 1) {
        fd = kernel_L(d, 1e-7, z);
      } else {
        const double h = 1e-5;
        fd = (kernel_L(d, h, z) - kernel_L(d, -h, z)) / (2.0 * h);
      }
      const double fd_err = std::abs(closed / fd - 1.0);
      pass = pass && fd_err <= fd_tol;
      detail << "fd " << fmt(fd_err) << "; ";
      try {
        const cplx c1 = lemniscate_interior_constant(d, l, z);
        const int n_lo = 12 + l, n_hi = 24 + l;
        const double a = n_lo * std::abs(lemniscate_interior_lhs(d, n_lo, set.evaluate(n_lo, z)) - c1);
        const double b = n_hi * std::abs(lemniscate_interior_lhs(d, n_hi, set.evaluate(n_hi, z)) - c1);
        const double change = std::abs(b / a - 1.0);
        pass = pass && change <= tol;
        detail << "n*dev " << fmt(a) << " -> " << fmt(b) << " (change " << fmt(change) << "); ";
      } catch (const Error& e) {
        pass = false;
        detail << e.kind() << ": " << e.what() << "; ";
      }
    }
  }
  return {pass, detail.str()};
}

std::vector<cplx> fixed_zeros(int s, int m) {
  std::vector<cplx> e(s - 1, 0.0);
  for (int k = 0; k < s; ++k)
    for (int i = 0; i < m; ++i) e.push_back(std::polar(1.0, 2 * kPi * k / s));
  return e;
}

double match_distance(std::vector<cplx> roots, const std::vector<cplx>& expected) {
  double worst = 0.0;
  for (const cplx e : expected) {
    auto it = std::min_element(roots.begin(), roots.end(),
                               [&](cplx a, cplx b) { return std::abs(a - e) < std::abs(b - e); });
    worst = std::max(worst, std::abs(*it - e));
    roots.erase(it);
  }
  return worst;
}

Outcome zeros() {
  const Domain d = Domain::lemniscate(3, 1.4);
  // Clustered roots of multiplicity 19 need the coefficients well beyond
  // double precision, so the exact form is used at 768 bits.
  double fixed;
  {
    ScopedPrecision prec(768);
    const ZeroSet zs = find_roots(closed_form_lemniscate<BigFloat>(d, 59), 768);
    fixed = match_distance(zs.roots, fixed_zeros(3, 19));
  }
  const OrthonormalSet set = gram_cholesky_orthonormalize(d, 60, 384);
  const ZeroSet z60 = find_roots(set.poly(60), 384);
  double band = 0.0;
  int outside = 0;
  for (const cplx r : z60.roots) {
    const double dist = std::abs(std::abs(std::pow(r, 3) - 1.0) - 1.0);
    band = std::max(band, dist);
    outside += dist > 0.25;
  }
  const DiscreteMeasure mu = equilibrium_measure(d, 2048);
  const double disc15 = moment_discrepancy(counting_measure(find_roots(set.poly(15), 384)), mu, 6);
  const double disc30 = moment_discrepancy(counting_measure(find_roots(set.poly(30), 384)), mu, 6);
  const bool pass = fixed <= 1e-9 && outside == 0 && disc30 < disc15;
  return {pass, "P_59 fixed-zero distance " + fmt(fixed) + "; P_60 max band distance " + fmt(band) + " (" +
                    std::to_string(outside) + " roots beyond 0.25); discrepancy n=15 " + fmt(disc15) + ", n=30 " + fmt(disc30)};
}

Outcome potential_identity() {
  const Domain d = Domain::lemniscate(3, 1.4);
  const DiscreteMeasure mu = equilibrium_measure(d, 2048);
  double worst = 0.0, closest = INFINITY;
  for (int i = 0; i < 20; ++i) {
    const cplx z = std::polar(1.6 + 0.05 * i, 2 * kPi * i / 20 + 0.1);
    double dist = INFINITY;
    for (const cplx t : mu.points) dist = std::min(dist, std::abs(z - t));
    closest = std::min(closest, dist);
    double quad = 0.0;
    for (std::size_t k = 0; k < mu.points.size(); ++k) quad -= mu.weights[k] * std::log(std::abs(z - mu.points[k]));
    worst = std::max(worst, std::abs(quad - equilibrium_potential(d, z)));
  }
  const bool pass = closest >= 0.3 && worst <= 1e-6;
  return {pass, "max potential error " + fmt(worst) + ", min distance to L_rho " + fmt(closest)};
}

Outcome special_suite() {
  std::mt19937_64 gen(20240611);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  double reflection = 0.0, recurrence = 0.0;
  for (int count = 0; count < 200;) {
    const double x = dist(gen);
    if (std::abs(x - std::round(x)) < 1e-3) continue;
    ++count;
    const double ref = kPi / std::sin(kPi * x);
    reflection = std::max(reflection, std::abs(carleman::gamma(1.0 - x) * carleman::gamma(x) - ref) / std::abs(ref));
    recurrence = std::max(recurrence, std::abs(carleman::gamma(x + 1.0) - x * carleman::gamma(x)) / std::abs(x * carleman::gamma(x)));
  }
  double integer = 0.0;
  for (int n = 0; n <= 30; ++n) {
    unsigned long long row = 1;
    for (int k = 0; k <= n; ++k) {
      integer = std::max(integer, std::abs(gen_binomial(double(n), double(k)) - double(row)) / double(row));
      row = row * (n - k) / (k + 1);
    }
  }
  bool scaling = true;
  for (double lambda : {1.0 / 3.0, 0.5, 2.0 / 3.0}) {
    auto dev = [&](double n) {
      return std::abs(gen_binomial(n, -lambda - 1.0) * carleman::gamma(-lambda) * std::pow(n, lambda + 1.0) - 1.0);
    };
    scaling = scaling && dev(1e3) <= 0.02 && dev(1e4) <= 0.02 && dev(1e4) < dev(1e3);
  }
  const bool pass = reflection <= 1e-12 && recurrence <= 1e-13 && integer == 0.0 && scaling;
  return {pass, "reflection " + fmt(reflection) + ", recurrence " + fmt(recurrence) + ", integer " + fmt(integer) +
                    ", scaling " + (scaling ? "ok" : "off")};
}

const std::map<int, std::function<Outcome()>>& checks() {
  static const std::map<int, std::function<Outcome()>> table{
      {1, exact_closed_forms}, {2, disk_exactness},   {3, orthonormality},   {4, carleman_rate},
      {5, representation_rate},          {6, corner_dichotomy}, {7, interior_lanes},   {8, zeros},
      {9, potential_identity}, {10, special_suite}};
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
  if (ids.empty())
    for (const auto& [id, fn] : checks()) ids.push_back(id);
  int failures = 0;
  for (int id : ids) {
    const auto it = checks().find(id);
    if (it == checks().end()) {
      std::cerr << "unknown criterion " << id << '\n';
      return 2;
    }
    Outcome o;
    try {
      o = it->second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
