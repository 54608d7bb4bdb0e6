#include "carleman/zeros.hpp"

#include "carleman/asymptotics.hpp"
#include "carleman/special.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

namespace carleman {

namespace {

constexpr int kMaxSweeps = 500;

struct Eval {
  BigComplex p, dp;
  BigFloat bound;  // Σ |c_i| |z|^i
  BigFloat scale;  // Σ |c_i| max(1, |z|)^i
};

Eval horner(const std::vector<BigComplex>& c, const std::vector<BigFloat>& absc, const BigComplex& z) {
  const BigFloat r = abs(z);
  const BigFloat r1 = std::max(r, BigFloat(1));
  Eval e{BigComplex(0), BigComplex(0), BigFloat(0), BigFloat(0)};
  for (auto i = c.size(); i-- > 0;) {
    e.dp = e.dp * z + e.p;
    e.p = e.p * z + c[i];
    e.bound = e.bound * r + absc[i];
    e.scale = e.scale * r1 + absc[i];
  }
  return e;
}

}  // namespace

void ZeroSet::write_csv(std::ostream& os) const {
  os << "re,im,residual\n" << std::setprecision(17);
  for (std::size_t i = 0; i < roots.size(); ++i)
    os << roots[i].real() << ',' << roots[i].imag() << ',' << residuals[i] << '\n';
}

ZeroSet find_roots(const Poly<BigComplex>& poly, int precision_bits) {
  ScopedPrecision prec(precision_bits);
  std::vector<BigComplex> c;
  for (const auto& x : poly.coeffs) c.emplace_back(BigFloat(x.real()), BigFloat(x.imag()));
  while (c.size() > 1 && c.back() == BigComplex(0)) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) throw RangeError("find_roots: degree must be at least 1");
  std::vector<BigFloat> absc;
  for (const auto& x : c) absc.push_back(abs(x));

  // Fujiwara's bound on the root moduli.
  BigFloat radius(0);
  for (int k = 1; k <= n; ++k) {
    const BigFloat q = absc[n - k] / absc[n];
    if (q > 0) radius = std::max(radius, BigFloat(pow(q, BigFloat(1) / BigFloat(k))));
  }
  radius = std::max(BigFloat(2) * radius, BigFloat("1e-3"));
  const BigFloat pi = pi_v<BigFloat>();
  std::vector<BigComplex> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::polar(radius, (BigFloat(2 * k) + BigFloat("0.5")) * pi / BigFloat(n));

  const BigFloat unit = pow(BigFloat(2), -precision_bits);
  const BigFloat noise = BigFloat(8 * n) * unit;
  std::vector<bool> done(n, false);
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    bool all = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Eval e = horner(c, absc, z[i]);
      if (abs(e.p) <= noise * e.bound) {
        done[i] = true;
        continue;
      }
      all = false;
      const BigComplex ratio = fast_div(e.p, e.dp);
      BigComplex repulsion(0);
      for (int j = 0; j < n; ++j)
        if (j != i) repulsion += fast_div(BigComplex(1), BigComplex(z[i] - z[j]));
      const BigComplex step = fast_div(ratio, BigComplex(BigComplex(1) - ratio * repulsion));
      z[i] -= step;
      if (abs(step) <= BigFloat("1e-14") * (BigFloat(1) + abs(z[i]))) done[i] = true;
    }
    if (all) break;
  }

  ZeroSet zs;
  zs.sweeps = sweep;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    Eval e = horner(c, absc, z[i]);
    if (e.dp != BigComplex(0)) {
      const BigComplex polished = z[i] - fast_div(e.p, e.dp);
      const Eval f = horner(c, absc, polished);
      if (abs(f.p) < abs(e.p)) {
        z[i] = polished;
        e = f;
      }
    }
    const double res = to_double(BigFloat(abs(e.p) / e.scale));
    zs.roots.push_back(to_double(z[i]));
    zs.residuals.push_back(res);
    worst = std::max(worst, res);
  }
  if (sweep == kMaxSweeps && !std::all_of(done.begin(), done.end(), [](bool b) { return b; }))
    throw NoConvergence("find_roots: no convergence after " + std::to_string(kMaxSweeps) +
                        " sweeps; worst residual " + std::to_string(worst));
  return zs;
}

ZeroSet find_roots(const Poly<cplx>& p, int precision_bits) {
  ScopedPrecision prec(precision_bits);
  return find_roots(poly_cast<BigComplex>(p), precision_bits);
}

DiscreteMeasure counting_measure(const ZeroSet& zs) {
  if (zs.degree() < 1) throw RangeError("counting_measure: empty zero set");
  DiscreteMeasure mu;
  mu.points = zs.roots;
  mu.weights.assign(zs.roots.size(), 1.0 / zs.degree());
  return mu;
}

double moment_discrepancy(const DiscreteMeasure& a, const DiscreteMeasure& b, int K) {
  if (K < 1) throw RangeError("moment_discrepancy: K must be at least 1");
  double worst = 0.0;
  for (int k = 1; k <= K; ++k) worst = std::max(worst, std::abs(a.moment(k) - b.moment(k)));
  return worst;
}

ZeroFreeReport zero_free_check(const Domain& d, const ZeroSet& zs, const ZeroFreeRegion& region) {
  ZeroFreeReport rep;
  if (!(region.parameter > 0.0)) throw RangeError("zero_free_check: region parameter must be positive");
  if (d.is_disk()) {
    rep.supported = false;
    return rep;
  }
  for (const cplx z : zs.roots) {
    bool bad = false;
    if (region.kind == ZeroFreeRegion::Kind::omega_rho_minus_corner_disks) {
      double gap = INFINITY;
      for (const auto& c : d.corners()) gap = std::min(gap, std::abs(z - c.z));
      bad = d.level_modulus(z) >= 1.0 && gap > region.parameter;
    } else {
      bad = d.level_modulus(z) <= 1.0 - region.parameter;
    }
    if (bad) rep.violations.push_back(z);
  }
  return rep;
}

cplx limit_function_eval(const Domain& d, const std::vector<double>& phases, cplx z) {
  if (d.corners().empty()) throw DomainError("limit_function_eval: domain has no corners");
  const int u = minimal_corner_count(d);
  if (static_cast<int>(phases.size()) != u)
    throw RangeError("limit_function_eval: expected one phase per minimal corner");
  if (d.level_modulus(z) > 1.0 - 1e-3) throw DomainError("limit_function_eval: point lies outside G_rho");
  const auto& cs = d.corners();
  const cplx fz = maps::interior(d, z);
  cplx acc = 0.0;
  for (int k = 0; k < u; ++k) {
    if (std::abs(z - cs[k].z) < 1e-3) throw DomainError("limit_function_eval: point too close to a corner");
    const cplx diff = fz - maps::interior(d, cs[k].z);
    acc += maps::interior_deriv(d, cs[k].z) * cs[k].A_hat * std::polar(1.0, 2.0 * std::numbers::pi * phases[k]) /
           (diff * diff);
  }
  return maps::interior_deriv(d, z) * acc;
}

cplx h_n_eval(const Domain& d, int n, cplx z) {
  if (d.corners().empty()) throw DomainError("h_n_eval: domain has no corners");
  const int u = minimal_corner_count(d);
  const auto& cs = d.corners();
  std::vector<double> phases;
  for (int k = 0; k < u; ++k) {
    const double theta = (cs[k].theta - cs[0].theta) / (2.0 * std::numbers::pi);
    const double g = n * theta;
    phases.push_back(g - std::floor(g));
  }
  return limit_function_eval(d, phases, z);
}

cplx p_star(const Domain& d, int n, cplx pn) {
  if (d.corners().empty()) throw DomainError("p_star: domain has no corners");
  const auto& c1 = d.corners().front();
  const double e = n + 1.0 + c1.lambda;
  return -pn / (corner_prefactor(d, n) * std::polar(1.0, e * c1.theta));
}

}  // namespace carleman
