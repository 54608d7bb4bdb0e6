#include <doctest.h>

#include "carleman/ortho.hpp"

#include <cmath>

using namespace carleman;

namespace {
const Domain& lem() {
  static const Domain d = Domain::lemniscate(3, 1.4);
  return d;
}

const OrthonormalSet& lem_cholesky() {
  static const OrthonormalSet set = gram_cholesky_orthonormalize(lem(), 14, 256);
  return set;
}

double coeff_gap(const Poly<cplx>& a, const Poly<cplx>& b) {
  double scale = 0.0, gap = 0.0;
  for (int i = 0; i <= std::max(a.degree(), b.degree()); ++i) {
    const cplx x = i <= a.degree() ? a.coeffs[i] : 0.0;
    const cplx y = i <= b.degree() ? b.coeffs[i] : 0.0;
    scale = std::max(scale, std::abs(y));
    gap = std::max(gap, std::abs(x - y));
  }
  return gap / scale;
}

Poly<cplx> disk_exact(double R, int n) {
  std::vector<cplx> c(n + 1, 0.0);
  c[n] = std::sqrt(n + 1.0) / std::pow(R, n + 1);
  return Poly<cplx>(c);
}
}  // namespace

TEST_CASE("area moments") {
  const Domain disk = Domain::disk(2.0);
  CHECK(std::abs(area_moment(disk, 0, 0, 64) - cplx(4.0)) < 1e-13);
  for (int n = 1; n <= 6; ++n)
    CHECK(std::abs(area_moment(disk, n, n, 64) / std::pow(2.0, 2 * n + 2) * (n + 1.0) - 1.0) < 1e-13);
  CHECK(std::abs(area_moment(disk, 2, 1, 64)) < 1e-14);
  const Domain& d = lem();
  CHECK(std::abs(area_moment(d, 2, 2, 128) - cplx(std::pow(1.4, 6) / 3.0)) < 1e-12);
  for (int j = 0; j <= 6; ++j)
    for (int k = 0; k <= 6; ++k) {
      const cplx a = area_moment(d, j, k, 128), b = area_moment(d, k, j, 128);
      CHECK(std::abs(a - std::conj(b)) <= 1e-12 * std::max(1.0, std::abs(a)));
      if ((j - k) % 3 != 0) CHECK(std::abs(a) < 1e-13);
    }
  CHECK_THROWS_AS(area_moment(d, -1, 0, 64), RangeError);
  CHECK_THROWS_AS(area_moment(d, 0, 0, 32), RangeError);
}

TEST_CASE("moment of the closed form against z^{sm+s-1}") {
  // <z^2 (z^3 - 1), z^5> assembled from monomial moments equals R^{12}/6.
  const Domain& d = lem();
  const cplx v = area_moment(d, 5, 5, 128) - area_moment(d, 2, 5, 128);
  CHECK(std::abs(v / std::pow(1.4, 12) * 6.0 - 1.0) < 1e-12);
}

TEST_CASE("cholesky on the disk") {
  const OrthonormalSet set = gram_cholesky_orthonormalize(Domain::disk(2.0), 5, 128);
  CHECK(set.engine == Engine::cholesky);
  for (int n = 0; n <= 5; ++n) {
    CHECK(coeff_gap(set.poly_double(n), disk_exact(2.0, n)) < 1e-12);
    CHECK(set.kappas[n] > 0.0);
  }
}

TEST_CASE("cholesky reproduces the lemniscate closed forms") {
  const OrthonormalSet& set = lem_cholesky();
  for (int n = 2; n <= 14; n += 3) {
    const auto exact = closed_form_lemniscate<double>(lem(), n);
    CHECK(coeff_gap(set.poly_double(n), exact) < 1e-12);
  }
  const double k8 = set.kappas[8];
  CHECK(k8 == doctest::Approx(std::sqrt(9.0) * std::pow(1.4, -9)).epsilon(1e-12));
}

TEST_CASE("rotational selection rule") {
  const OrthonormalSet& set = lem_cholesky();
  for (int n = 0; n <= 14; ++n) {
    const auto p = set.poly_double(n);
    double spurious = 0.0;
    for (int i = 0; i <= n; ++i)
      if ((n - i) % 3 != 0) spurious = std::max(spurious, std::abs(p.coeffs[i]));
    CHECK(spurious <= 1e-10 * set.kappas[n]);
  }
}

TEST_CASE("kappas are positive and increase towards the model") {
  const OrthonormalSet& set = lem_cholesky();
  for (double k : set.kappas) CHECK(k > 0.0);
  CHECK(std::abs(std::abs(set.poly_double(14).leading()) - set.kappas[14]) < 1e-12 * set.kappas[14]);
}

TEST_CASE("closed forms") {
  const auto p2 = closed_form_lemniscate<double>(lem(), 2);
  CHECK(p2.degree() == 2);
  CHECK(std::abs(p2.coeffs[2] - cplx(std::sqrt(3.0) * std::pow(1.4, -3))) < 1e-15);
  const auto p5 = closed_form_lemniscate<double>(lem(), 5);
  const double c5 = std::sqrt(6.0) * std::pow(1.4, -6);
  CHECK(std::abs(p5.coeffs[5] - cplx(c5)) < 1e-15);
  CHECK(std::abs(p5.coeffs[2] + cplx(c5)) < 1e-15);
  const auto q3 = closed_form_lemniscate<double>(Domain::lemniscate(2, 2.0), 3);
  CHECK(std::abs(q3.coeffs[3] - cplx(0.125)) < 1e-15);
  CHECK(std::abs(q3.coeffs[1] + cplx(0.125)) < 1e-15);
  CHECK_THROWS_AS(closed_form_lemniscate<double>(lem(), 4), RangeError);
  CHECK_THROWS_AS(closed_form_lemniscate<double>(Domain::disk(1.0), 2), DomainError);
  const OrthonormalSet disk = closed_form_set(Domain::disk(2.0), 6, 128);
  CHECK(coeff_gap(disk.poly_double(6), disk_exact(2.0, 6)) == 0.0);
  CHECK_THROWS_AS(closed_form_set(lem(), 3, 128), RangeError);
}

TEST_CASE("area rule") {
  const QuadratureRule disk = make_area_rule(Domain::disk(2.0), 16, 32);
  CHECK(std::abs(disk.mass() - 4.0) < 1e-12);
  const Domain& d = lem();
  const QuadratureRule rule = make_area_rule(d, 32, 128);
  CHECK(std::abs(rule.mass() - area_moment(d, 0, 0, 128).real()) < 1e-10);
  const Poly<cplx> one({1.0}), z({0.0, 1.0});
  CHECK(std::abs(rule_inner_product(rule, z, one) - area_moment(d, 1, 0, 128)) < 1e-10);
  CHECK_THROWS_AS(make_area_rule(d, 4, 32), RangeError);
}

TEST_CASE("inner products") {
  const Poly<cplx> z({0.0, 1.0});
  CHECK(std::abs(inner_product<double>(Domain::disk(1.0), z, z, 64) - cplx(0.5)) < 1e-14);
  const Domain& d = lem();
  const auto p5 = closed_form_lemniscate<double>(d, 5);
  CHECK(std::abs(inner_product<double>(d, p5, p5, 128) - cplx(1.0)) < 1e-10);
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b) {
      std::vector<cplx> ca(a + 1, 0.0), cb(b + 1, 0.0);
      ca[a] = cb[b] = 1.0;
      const cplx v = inner_product<double>(d, Poly<cplx>(ca), Poly<cplx>(cb), 128);
      const cplx w = inner_product<double>(d, Poly<cplx>(cb), Poly<cplx>(ca), 128);
      CHECK(std::abs(v - std::conj(w)) < 1e-12);
      if ((a - b) % 3 != 0) CHECK(std::abs(v) < 1e-13);
      if (a == b) CHECK(v.real() > 0.0);
    }
}

TEST_CASE("arnoldi engine") {
  const OrthonormalSet disk = arnoldi_orthonormalize(Domain::disk(2.0), 10, make_area_rule(Domain::disk(2.0), 16, 64));
  CHECK(disk.engine == Engine::arnoldi);
  for (int n = 0; n <= 10; ++n) CHECK(coeff_gap(disk.poly_double(n), disk_exact(2.0, n)) < 1e-10);
  const Domain& d = lem();
  const OrthonormalSet arn = arnoldi_orthonormalize(d, 14, make_area_rule(d, 48, 128));
  const OrthonormalSet& chol = lem_cholesky();
  for (int n = 0; n <= 14; ++n) CHECK(coeff_gap(arn.poly_double(n), chol.poly_double(n)) < 1e-8);
  CHECK(coeff_gap(arn.poly_double(11), closed_form_lemniscate<double>(d, 11)) < 1e-8);
}

TEST_CASE("gram residual under an independent rule") {
  const Domain& d = lem();
  CHECK(gram_residual(lem_cholesky(), make_area_rule(d, 40, 160)) < 1e-10);
}

TEST_CASE("precision guard") {
  CHECK_THROWS_AS(gram_cholesky_orthonormalize(lem(), 40, 64), RangeError);
  CHECK(default_precision_bits(10) >= 128);
  CHECK(default_precision_bits(60) >= default_precision_bits(30));
}

TEST_CASE("json round trip") {
  const OrthonormalSet& set = lem_cholesky();
  const OrthonormalSet back = OrthonormalSet::from_json(set.to_json());
  CHECK(back.max_degree() == set.max_degree());
  CHECK(back.precision_bits == set.precision_bits);
  CHECK(back.engine == set.engine);
  CHECK(back.domain.name() == set.domain.name());
  ScopedPrecision prec(set.precision_bits);
  for (int n = 0; n <= set.max_degree(); ++n)
    for (int i = 0; i <= n; ++i) CHECK(back.poly(n).coeffs[i] == set.poly(n).coeffs[i]);
  CHECK(engine_from_string(to_string(Engine::arnoldi)) == Engine::arnoldi);
}
