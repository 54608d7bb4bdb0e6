#pragma once

#include "carleman/geometry.hpp"
#include "carleman/poly.hpp"

#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace carleman {

enum class Engine { cholesky, arnoldi, closed_form };

std::string to_string(Engine e);
Engine engine_from_string(const std::string& s);

struct QuadratureRule {
  enum class Target { area_G1, contour_T1, contour_Tr };
  std::vector<cplx> nodes;
  std::vector<double> weights;
  Target target = Target::area_G1;
  double radius = 1.0;  // for contour_Tr

  double mass() const;
};

/// P_0..P_N with their leading coefficients. Coefficients are stored at
/// `precision_bits`; evaluation runs at that precision.
struct OrthonormalSet {
  Domain domain;
  std::vector<Poly<BigComplex>> polys;
  std::vector<double> kappas;
  int precision_bits = 53;
  Engine engine = Engine::cholesky;

  int max_degree() const { return static_cast<int>(polys.size()) - 1; }
  const Poly<BigComplex>& poly(int n) const;
  cplx evaluate(int n, cplx z) const;
  Poly<cplx> poly_double(int n) const;

  nlohmann::json to_json() const;
  static OrthonormalSet from_json(const nlohmann::json& j);
};

nlohmann::json domain_to_json(const Domain& d);
Domain domain_from_json(const nlohmann::json& j);

/// Smallest precision suited to degree N (256 bits up to 40, 384 up to 70).
int default_precision_bits(int N);

/// (1/π)∫_{G_1} z^j conj(z)^k dA via the boundary form of Green's formula,
/// trapezoid on |t| = 1 with node doubling until the relative change is
/// below `tol`.
template <class Real>
Cx<Real> area_moment(const Domain& d, int j, int k, int m_nodes, double tol = 1e-12);

cplx area_moment(const Domain& d, int j, int k, int m_nodes);

/// Hermitian Gram matrix of 1, z, ..., z^N at the current BigFloat precision.
std::vector<std::vector<BigComplex>> monomial_gram(const Domain& d, int N, int* nodes_used = nullptr);

OrthonormalSet gram_cholesky_orthonormalize(const Domain& d, int N, int precision_bits);
OrthonormalSet arnoldi_orthonormalize(const Domain& d, int N, const QuadratureRule& rule);
QuadratureRule make_area_rule(const Domain& d, int radial_n, int angular_n);

template <class Real>
Poly<Cx<Real>> closed_form_lemniscate(const Domain& d, int n);

/// Closed-form set P_0..P_N where every member is known exactly (disk only).
OrthonormalSet closed_form_set(const Domain& d, int N, int precision_bits);

/// (1/π)∫ p conj(q) dA: ∮ p conj(Q) dz / (2πi) with Q' = q, Q(0) = 0.
template <class Real>
Cx<Real> inner_product(const Domain& d, const Poly<Cx<Real>>& p, const Poly<Cx<Real>>& q,
                       int m_nodes, double tol = 1e-12);

/// Inner product by summing p conj(q) over an area rule.
cplx rule_inner_product(const QuadratureRule& rule, const Poly<cplx>& p, const Poly<cplx>& q);

/// max_{n,m} |<P_n, P_m> - δ_nm| under an area rule.
double gram_residual(const OrthonormalSet& set, const QuadratureRule& rule);

// ---------------------------------------------------------------------------

namespace detail {

template <class Real>
Cx<Real> unit_root(int i, int m) {
  const Real angle = Real(2) * pi_v<Real>() * Real(i) / Real(m);
  using std::cos;
  using std::sin;
  return {cos(angle), sin(angle)};
}

// Adaptive nested trapezoid on |t| = 1 for a vector of integrals.
// `term(t, out)` adds the integrand values (already multiplied by ψ′(t) t)
// at node t to `out`.
template <class Real, class Term>
std::vector<Cx<Real>> nested_trapezoid(int m0, int count, double tol, const Term& term,
                                       const char* op, int max_doublings = 4) {
  using std::abs;
  std::vector<Cx<Real>> sum(count, Cx<Real>(0)), tmp(count);
  std::vector<Real> absum(count, Real(0));
  auto visit = [&](int i, int m) {
    std::fill(tmp.begin(), tmp.end(), Cx<Real>(0));
    term(unit_root<Real>(i, m), tmp);
    for (int c = 0; c < count; ++c) {
      sum[c] += tmp[c];
      absum[c] += abs(tmp[c]);
    }
  };
  for (int i = 0; i < m0; ++i) visit(i, m0);
  int m = m0;
  std::vector<Cx<Real>> prev(count);
  for (int c = 0; c < count; ++c) prev[c] = sum[c] / Real(m);
  for (int level = 0; level < max_doublings; ++level) {
    const int m2 = 2 * m;
    for (int i = 1; i < m2; i += 2) visit(i, m2);
    m = m2;
    bool done = true;
    std::vector<Cx<Real>> cur(count);
    for (int c = 0; c < count; ++c) {
      cur[c] = sum[c] / Real(m);
      // Changes are measured against the mean integrand size so that
      // integrals that vanish by symmetry still converge.
      if (abs(cur[c] - prev[c]) > Real(tol) * absum[c] / Real(m)) done = false;
    }
    if (done) return cur;
    prev = std::move(cur);
  }
  throw ConvergenceError(std::string(op) + ": trapezoid did not converge after doubling");
}

}  // namespace detail

template <class Real>
Cx<Real> area_moment(const Domain& d, int j, int k, int m_nodes, double tol) {
  if (j < 0 || k < 0) throw RangeError("area_moment: negative exponent");
  if (m_nodes < 64) throw RangeError("area_moment: m_nodes must be at least 64");
  auto term = [&](const Cx<Real>& t, std::vector<Cx<Real>>& out) {
    const Cx<Real> z = maps::psi(d, t);
    out[0] += ipow(z, j) * ipow(std::conj(z), k + 1) * maps::psi_deriv(d, t) * t;
  };
  const auto v = detail::nested_trapezoid<Real>(m_nodes, 1, tol, term, "area_moment");
  return v[0] / Real(k + 1);
}

template <class Real>
Poly<Cx<Real>> closed_form_lemniscate(const Domain& d, int n) {
  if (d.is_disk()) throw DomainError("closed_form_lemniscate: requires a lemniscate");
  const int s = d.s();
  if (n < 0 || n % s != s - 1) throw RangeError("closed_form_lemniscate: n must be = s-1 (mod s)");
  const int m = n / s;
  using std::pow;
  using std::sqrt;
  const Real scale = sqrt(Real(n + 1)) / pow(Real(d.R()), n + 1);
  std::vector<Cx<Real>> c(n + 1, Cx<Real>(0));
  Real binom(1);
  for (int j = 0; j <= m; ++j) {
    const Real sign = ((m - j) % 2 == 0) ? Real(1) : Real(-1);
    c[s * j + s - 1] = Cx<Real>(sign * binom * scale);
    binom = binom * Real(m - j) / Real(j + 1);
  }
  return Poly<Cx<Real>>(std::move(c));
}

template <class Real>
Cx<Real> inner_product(const Domain& d, const Poly<Cx<Real>>& p, const Poly<Cx<Real>>& q,
                       int m_nodes, double tol) {
  const auto Q = q.antiderivative();
  auto term = [&](const Cx<Real>& t, std::vector<Cx<Real>>& out) {
    const Cx<Real> z = maps::psi(d, t);
    out[0] += p(z) * std::conj(Q(z)) * maps::psi_deriv(d, t) * t;
  };
  return detail::nested_trapezoid<Real>(m_nodes, 1, tol, term, "inner_product")[0];
}

}  // namespace carleman
