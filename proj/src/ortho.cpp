#include "carleman/ortho.hpp"

#include "carleman/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace carleman {

namespace {

using BigMatrix = std::vector<std::vector<BigComplex>>;

// Upper-triangle sums S[j][k] = Σ_i f_i z_i^j conj(z_i)^{k+1}, j <= k, with
// f_i = ψ′(t_i) t_i. The inner update is four fused multiply-adds on raw
// MPFR values so no temporaries are allocated per entry.
class MomentSums {
 public:
  MomentSums(const Domain& d, int N)
      : d_(d), n_(N + 1), re_(n_ * n_), im_(n_ * n_), ar_(n_), ai_(n_), nai_(n_), cr_(n_), ci_(n_) {
    for (auto& x : re_) x = 0;
    for (auto& x : im_) x = 0;
  }

  void add_node(const BigComplex& t) {
    const BigComplex z = maps::psi(d_, t);
    const BigComplex f = maps::psi_deriv(d_, t) * t;
    const BigComplex zc = std::conj(z);
    BigComplex a = f, c = zc;
    for (int j = 0; j < n_; ++j) {
      ar_[j] = a.real();
      ai_[j] = a.imag();
      nai_[j] = -a.imag();
      cr_[j] = c.real();
      ci_[j] = c.imag();
      a *= z;
      c *= zc;
    }
    for (int j = 0; j < n_; ++j) {
      mpfr_srcptr xr = ar_[j].backend().data(), xi = ai_[j].backend().data(),
                  nxi = nai_[j].backend().data();
      for (int k = j; k < n_; ++k) {
        mpfr_ptr sr = re_[j * n_ + k].backend().data();
        mpfr_ptr si = im_[j * n_ + k].backend().data();
        mpfr_srcptr yr = cr_[k].backend().data(), yi = ci_[k].backend().data();
        mpfr_fma(sr, xr, yr, sr, MPFR_RNDN);
        mpfr_fma(sr, nxi, yi, sr, MPFR_RNDN);
        mpfr_fma(si, xr, yi, si, MPFR_RNDN);
        mpfr_fma(si, xi, yr, si, MPFR_RNDN);
      }
    }
  }

  /// Hermitian moment matrix after m nodes.
  BigMatrix moments(int m) const {
    BigMatrix g(n_, std::vector<BigComplex>(n_));
    for (int j = 0; j < n_; ++j)
      for (int k = j; k < n_; ++k) {
        const BigFloat scale = BigFloat(m) * BigFloat(k + 1);
        g[j][k] = BigComplex(re_[j * n_ + k] / scale, im_[j * n_ + k] / scale);
        g[k][j] = std::conj(g[j][k]);
      }
    for (int j = 0; j < n_; ++j) g[j][j] = BigComplex(g[j][j].real(), BigFloat(0));
    return g;
  }

 private:
  const Domain& d_;
  int n_;
  std::vector<BigFloat> re_, im_, ar_, ai_, nai_, cr_, ci_;
};

constexpr int kGramStartNodes = 256;
constexpr int kGramMaxNodes = 4096;

}  // namespace

std::string to_string(Engine e) {
  switch (e) {
    case Engine::cholesky: return "cholesky";
    case Engine::arnoldi: return "arnoldi";
    case Engine::closed_form: return "closed_form";
  }
  return "unknown";
}

Engine engine_from_string(const std::string& s) {
  if (s == "cholesky") return Engine::cholesky;
  if (s == "arnoldi") return Engine::arnoldi;
  if (s == "closed_form") return Engine::closed_form;
  throw RangeError("unknown engine '" + s + "'");
}

double QuadratureRule::mass() const {
  double m = 0.0;
  for (double w : weights) m += w;
  return m;
}

const Poly<BigComplex>& OrthonormalSet::poly(int n) const {
  if (n < 0 || n > max_degree()) throw RangeError("OrthonormalSet: degree " + std::to_string(n) + " not available");
  return polys[n];
}

cplx OrthonormalSet::evaluate(int n, cplx z) const {
  ScopedPrecision prec(precision_bits);
  return to_double(poly(n)(to_cx<BigFloat>(z)));
}

Poly<cplx> OrthonormalSet::poly_double(int n) const { return poly_cast<cplx>(poly(n)); }

int default_precision_bits(int N) {
  if (N <= 40) return 256;
  if (N <= 70) return 384;
  return 384 + 8 * (N - 70);
}

cplx area_moment(const Domain& d, int j, int k, int m_nodes) {
  return area_moment<double>(d, j, k, m_nodes);
}

BigMatrix monomial_gram(const Domain& d, int N, int* nodes_used) {
  const int bits = current_precision_bits();
  const BigFloat tol = std::min(BigFloat(1e-12), pow(BigFloat(2), -bits / 2));
  MomentSums sums(d, N);
  int m = kGramStartNodes;
  for (int i = 0; i < m; ++i) sums.add_node(detail::unit_root<BigFloat>(i, m));
  BigMatrix prev = sums.moments(m);
  while (2 * m <= kGramMaxNodes) {
    for (int i = 1; i < 2 * m; i += 2) sums.add_node(detail::unit_root<BigFloat>(i, 2 * m));
    m *= 2;
    BigMatrix cur = sums.moments(m);
    bool done = true;
    for (int j = 0; j <= N && done; ++j)
      for (int k = j; k <= N; ++k) {
        const BigFloat scale = sqrt(cur[j][j].real() * cur[k][k].real());
        if (abs(cur[j][k] - prev[j][k]) > tol * scale) {
          done = false;
          break;
        }
      }
    if (done) {
      if (nodes_used) *nodes_used = m;
      return cur;
    }
    prev = std::move(cur);
  }
  throw ConvergenceError("monomial_gram: boundary trapezoid did not converge at " +
                         std::to_string(kGramMaxNodes) + " nodes");
}

OrthonormalSet gram_cholesky_orthonormalize(const Domain& d, int N, int precision_bits) {
  if (N < 0) throw RangeError("gram_cholesky_orthonormalize: N must be non-negative");
  if (precision_bits < 53) throw RangeError("gram_cholesky_orthonormalize: precision below 53 bits");
  if (N > 15 && precision_bits < 128)
    throw RangeError("gram_cholesky_orthonormalize: N > 15 needs at least 128 bits");
  ScopedPrecision prec(precision_bits);
  const BigMatrix G = monomial_gram(d, N);
  const int n = N + 1;

  BigMatrix L(n, std::vector<BigComplex>(n, BigComplex(0)));
  const BigFloat floor_ratio = pow(BigFloat(2), -(precision_bits - 16));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      BigComplex sum = G[i][j];
      for (int k = 0; k < j; ++k) sum -= L[i][k] * std::conj(L[j][k]);
      if (i == j) {
        const BigFloat pivot = sum.real();
        if (!(pivot > floor_ratio * G[i][i].real()))
          throw NotPositiveDefinite("gram_cholesky_orthonormalize: Gram matrix lost definiteness at degree " +
                                    std::to_string(i) + "; raise precision_bits");
        L[i][i] = BigComplex(sqrt(pivot), BigFloat(0));
      } else {
        L[i][j] = sum / L[j][j].real();
      }
    }
  }

  BigMatrix C(n, std::vector<BigComplex>(n, BigComplex(0)));
  for (int i = 0; i < n; ++i) {
    const BigFloat inv = BigFloat(1) / L[i][i].real();
    C[i][i] = BigComplex(inv, BigFloat(0));
    for (int j = 0; j < i; ++j) {
      BigComplex acc(0);
      for (int k = j; k < i; ++k) acc += L[i][k] * C[k][j];
      C[i][j] = -acc * inv;
    }
  }

  OrthonormalSet set{d, {}, {}, precision_bits, Engine::cholesky};
  for (int i = 0; i < n; ++i) {
    set.polys.emplace_back(std::vector<BigComplex>(C[i].begin(), C[i].begin() + i + 1));
    set.kappas.push_back(to_double(C[i][i].real()));
  }
  return set;
}

QuadratureRule make_area_rule(const Domain& d, int radial_n, int angular_n) {
  if (radial_n < 8 || angular_n < 16) throw RangeError("make_area_rule: need radial_n >= 8 and angular_n >= 16");
  const auto gl = gauss_legendre_unit(radial_n);
  QuadratureRule rule;
  rule.target = QuadratureRule::Target::area_G1;
  rule.nodes.reserve(static_cast<std::size_t>(radial_n) * angular_n);
  rule.weights.reserve(rule.nodes.capacity());
  const double dtheta = 2.0 * std::numbers::pi / angular_n;
  for (int i = 0; i < radial_n; ++i) {
    const double r = gl.nodes[i];
    for (int j = 0; j < angular_n; ++j) {
      const cplx w = std::polar(r, dtheta * j);
      const cplx jac = maps::interior_inverse_deriv(d, w);
      rule.nodes.push_back(maps::interior_inverse(d, w));
      rule.weights.push_back(gl.weights[i] * r * dtheta * std::norm(jac) / std::numbers::pi);
    }
  }
  return rule;
}

OrthonormalSet arnoldi_orthonormalize(const Domain& d, int N, const QuadratureRule& rule) {
  if (rule.target != QuadratureRule::Target::area_G1)
    throw RangeError("arnoldi_orthonormalize: rule must target the area of G_1");
  if (N < 0) throw RangeError("arnoldi_orthonormalize: N must be non-negative");
  const std::size_t M = rule.nodes.size();
  auto dot = [&](const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < M; ++i) acc += rule.weights[i] * a[i] * std::conj(b[i]);
    return acc;
  };
  std::vector<std::vector<cplx>> q;
  std::vector<std::vector<cplx>> coef;
  {
    const double norm = std::sqrt(rule.mass());
    q.emplace_back(M, cplx(1.0 / norm));
    coef.push_back({cplx(1.0 / norm)});
  }
  for (int n = 1; n <= N; ++n) {
    std::vector<cplx> v(M);
    for (std::size_t i = 0; i < M; ++i) v[i] = rule.nodes[i] * q[n - 1][i];
    std::vector<cplx> c(n + 1, 0.0);
    for (int j = 0; j < n; ++j) c[j + 1] = coef[n - 1][j];
    const double before = std::sqrt(dot(v, v).real());
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < n; ++j) {
        const cplx h = dot(v, q[j]);
        for (std::size_t i = 0; i < M; ++i) v[i] -= h * q[j][i];
        for (int k = 0; k <= j; ++k) c[k] -= h * coef[j][k];
      }
    const double norm = std::sqrt(dot(v, v).real());
    if (norm < 1e-14 * before)
      throw RankDeficiency("arnoldi_orthonormalize: basis collapsed at degree " + std::to_string(n));
    for (auto& x : v) x /= norm;
    for (auto& x : c) x /= norm;
    c[n] = cplx(c[n].real(), 0.0);
    q.push_back(std::move(v));
    coef.push_back(std::move(c));
  }
  OrthonormalSet set{d, {}, {}, 53, Engine::arnoldi};
  ScopedPrecision prec(53);
  for (int n = 0; n <= N; ++n) {
    set.polys.push_back(poly_cast<BigComplex>(Poly<cplx>(coef[n])));
    set.kappas.push_back(coef[n][n].real());
  }
  return set;
}

OrthonormalSet closed_form_set(const Domain& d, int N, int precision_bits) {
  if (!d.is_disk())
    throw RangeError("closed_form_set: only the disk has every degree in closed form; use closed_form_lemniscate");
  ScopedPrecision prec(precision_bits);
  OrthonormalSet set{d, {}, {}, precision_bits, Engine::closed_form};
  const BigFloat R(d.R());
  for (int n = 0; n <= N; ++n) {
    std::vector<BigComplex> c(n + 1, BigComplex(0));
    const BigFloat k = sqrt(BigFloat(n + 1)) / pow(R, n + 1);
    c[n] = BigComplex(k);
    set.polys.emplace_back(std::move(c));
    set.kappas.push_back(to_double(k));
  }
  return set;
}

cplx rule_inner_product(const QuadratureRule& rule, const Poly<cplx>& p, const Poly<cplx>& q) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * p(rule.nodes[i]) * std::conj(q(rule.nodes[i]));
  return acc;
}

double gram_residual(const OrthonormalSet& set, const QuadratureRule& rule) {
  const int n = set.max_degree() + 1;
  const std::size_t M = rule.nodes.size();
  std::vector<std::vector<cplx>> vals(n, std::vector<cplx>(M));
  for (int k = 0; k < n; ++k) {
    const auto p = set.poly_double(k);
    for (std::size_t i = 0; i < M; ++i) vals[k][i] = p(rule.nodes[i]);
  }
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      cplx acc = 0.0;
      for (std::size_t i = 0; i < M; ++i) acc += rule.weights[i] * vals[a][i] * std::conj(vals[b][i]);
      worst = std::max(worst, std::abs(acc - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

nlohmann::json domain_to_json(const Domain& d) {
  nlohmann::json j;
  j["kind"] = d.is_disk() ? "disk" : "lemniscate";
  if (!d.is_disk()) j["s"] = d.s();
  j["R"] = d.R();
  return j;
}

Domain domain_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "disk") return Domain::disk(j.at("R").get<double>());
  if (kind == "lemniscate") return Domain::lemniscate(j.at("s").get<int>(), j.at("R").get<double>());
  throw DomainError("unknown domain kind '" + kind + "'");
}

nlohmann::json OrthonormalSet::to_json() const {
  nlohmann::json j;
  j["domain"] = domain_to_json(domain);
  j["precision_bits"] = precision_bits;
  j["engine"] = to_string(engine);
  auto& ps = j["polys"] = nlohmann::json::array();
  for (const auto& p : polys) {
    auto arr = nlohmann::json::array();
    for (const auto& c : p.coeffs) arr.push_back({to_string_exact(c.real()), to_string_exact(c.imag())});
    ps.push_back(std::move(arr));
  }
  j["kappas"] = kappas;
  return j;
}

OrthonormalSet OrthonormalSet::from_json(const nlohmann::json& j) {
  OrthonormalSet set{domain_from_json(j.at("domain")), {}, {}, j.at("precision_bits").get<int>(),
                     engine_from_string(j.at("engine").get<std::string>())};
  ScopedPrecision prec(set.precision_bits);
  for (const auto& arr : j.at("polys")) {
    std::vector<BigComplex> c;
    for (const auto& pair : arr)
      c.emplace_back(from_string(pair.at(0).get<std::string>()), from_string(pair.at(1).get<std::string>()));
    set.polys.emplace_back(std::move(c));
  }
  set.kappas = j.at("kappas").get<std::vector<double>>();
  return set;
}

}  // namespace carleman
