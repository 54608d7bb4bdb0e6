#include "carleman/cli.hpp"

#include "carleman/asymptotics.hpp"
#include "carleman/errors.hpp"
#include "carleman/geometry.hpp"
#include "carleman/ortho.hpp"
#include "carleman/zeros.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

namespace carleman::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string domain = "lemniscate";
  int s = 3;
  double R = 1.4;
  int N = 12;
  int n = 60;
  std::string engine = "cholesky";
  int bits = 0;  // 0 selects the default schedule
  double r = 1.0;
  std::string ns;
  double z_re = 0.3;
  double z_im = 0.0;
  int lane = 1;
  double tol = -1.0;
  int samples = 64;
  std::string out;
  bool quiet = false;
  std::string target;
};

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidInput("--ns must have the form a:b");
  int a = 0, b = 0;
  try {
    a = std::stoi(text.substr(0, colon));
    b = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw InvalidInput("--ns must have the form a:b with integers");
  }
  if (a < 0 || b < a) throw InvalidInput("--ns range must satisfy 0 <= a <= b");
  std::vector<int> v;
  for (int i = a; i <= b; ++i) v.push_back(i);
  return v;
}

Domain make_domain(const Options& o) {
  try {
    if (o.domain == "disk") return Domain::disk(o.R);
    if (o.domain == "lemniscate") return Domain::lemniscate(o.s, o.R);
  } catch (const DomainError& e) {
    throw InvalidInput(e.what());
  }
  throw InvalidInput("--domain must be disk or lemniscate");
}

int bits_for(const Options& o, int N) {
  const int b = o.bits > 0 ? o.bits : default_precision_bits(N);
  if (b < 53) throw InvalidInput("--bits must be at least 53");
  return b;
}

class Progress {
 public:
  Progress(std::ostream& err, bool quiet) : err_(err), quiet_(quiet) {}
  void operator()(const std::string& msg) const {
    if (!quiet_) err_ << "[carleman] " << msg << '\n' << std::flush;
  }

 private:
  std::ostream& err_;
  bool quiet_;
};

OrthonormalSet build_set(const Domain& d, int N, Engine engine, int bits, const Progress& progress) {
  std::ostringstream msg;
  msg << "computing P_0..P_" << N << " on " << d.name() << " with " << to_string(engine);
  if (engine == Engine::cholesky) msg << " at " << bits << " bits";
  progress(msg.str());
  switch (engine) {
    case Engine::cholesky: return gram_cholesky_orthonormalize(d, N, bits);
    case Engine::arnoldi: {
      const int radial = std::max(16, N + 8);
      const int angular = std::max(64, 4 * N + 32);
      return arnoldi_orthonormalize(d, N, make_area_rule(d, radial, angular));
    }
    case Engine::closed_form: return closed_form_set(d, N, bits);
  }
  throw InvalidInput("unknown engine");
}

void write_json(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path);
  f << j.dump(2) << '\n';
}

int cmd_compute(const Options& o, std::ostream& out, const Progress& progress) {
  const Domain d = make_domain(o);
  if (o.N < 0) throw InvalidInput("--N must be non-negative");
  Engine engine;
  try {
    engine = engine_from_string(o.engine);
  } catch (const RangeError& e) {
    throw InvalidInput(e.what());
  }
  if (engine == Engine::closed_form && !d.is_disk())
    throw InvalidInput("closed_form engine covers every degree only for the disk");
  const int bits = bits_for(o, o.N);
  const OrthonormalSet set = build_set(d, o.N, engine, bits, progress);
  write_json(set.to_json(), o.out.empty() ? "orthonormal_set.json" : o.out, out);
  out << "n,kappa,kappa_model,ratio\n" << std::setprecision(12);
  for (int n = 0; n <= o.N; ++n) {
    const double model = kappa_model(d, n);
    out << n << ',' << set.kappas[n] << ',' << model << ',' << set.kappas[n] / model << '\n';
  }
  return kPass;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

RateReport trend_report(std::vector<int> ns, std::vector<double> values, const std::string& check, bool pass,
                        double tol) {
  RateReport rep;
  bool positive = values.size() >= 2;
  for (double v : values) positive = positive && v > 0.0;
  if (positive && values.size() >= 4) rep = rate_regression(ns, values, 0.0, INFINITY);
  rep.ns = std::move(ns);
  rep.values = std::move(values);
  rep.predicted_slope = 0.0;
  rep.slope_tolerance = tol;
  rep.check = check;
  rep.pass = pass;
  return rep;
}

// Lanes on which the deviation vanishes identically (the closed-form lane)
// carry no rate information and are left out of slope fits.
std::vector<int> drop_exact_lane(const Domain& d, const std::vector<int>& ns) {
  if (d.is_disk()) return ns;
  std::vector<int> kept;
  for (int n : ns)
    if (n % d.s() != d.s() - 1) kept.push_back(n);
  return kept;
}

RateReport exact_report(std::vector<int> ns, std::vector<double> values, double bound) {
  bool pass = true;
  for (double v : values) pass = pass && v <= bound;
  return trend_report(std::move(ns), std::move(values), "exact", pass, bound);
}

int cmd_verify(const Options& o, std::ostream& out, const Progress& progress) {
  const Domain d = make_domain(o);
  const std::vector<int> all_ns = parse_range(o.ns.empty() ? "10:30" : o.ns);
  const cplx z(o.z_re, o.z_im);
  if (o.samples < 8) throw InvalidInput("--samples must be at least 8");
  RateReport rep;
  const int N = all_ns.back();

  if (o.target == "carleman" || o.target == "thm3") {
    const bool carleman = o.target == "carleman";
    if (!(o.r > d.rho())) throw InvalidInput("--r must exceed rho");
    if (!carleman && !(o.r < 1.0)) throw InvalidInput("--r must be below 1 for thm3");
    const OrthonormalSet set = build_set(d, N, Engine::cholesky, bits_for(o, N), progress);
    const auto curve = level_curve(d, o.r, o.samples);
    const std::vector<int> ns = drop_exact_lane(d, all_ns);
    std::vector<double> values;
    for (int n : ns) {
      double worst = 0.0;
      for (const cplx p : curve)
        worst = std::max(worst, carleman ? std::abs(set.evaluate(n, p) / carleman_approx(d, n, p) - 1.0)
                                         : std::abs(epsilon_n(d, set, n, p)));
      values.push_back(worst);
      progress("n=" + std::to_string(n) + " done");
    }
    if (d.is_disk()) {
      rep = exact_report(ns, values, 1e-10);
    } else {
      double predicted = 0.0;
      if (carleman)
        predicted = o.r >= 1.0 ? std::log(d.rho()) : std::log(d.rho() / o.r);
      else
        predicted = std::log(o.r * d.rho());
      rep = rate_regression(ns, values, predicted, o.tol > 0 ? o.tol : (carleman ? 0.15 : 0.2));
    }
  } else if (o.target == "thm1") {
    if (d.is_disk()) throw InvalidInput("thm1 needs a domain with corners");
    const OrthonormalSet set = build_set(d, N, Engine::cholesky, bits_for(o, N), progress);
    std::vector<int> ns;
    std::vector<double> values;
    for (int n : all_ns) {
      if (n % d.s() != d.s() - 2) continue;
      ns.push_back(n);
      values.push_back(std::abs(set.evaluate(n, z) / corner_leading_term(d, n, z) - 1.0));
    }
    rep = trend_report(ns, values, "monotone", ns.size() >= 2 && strictly_decreasing(values), 0.0);
  } else if (o.target == "thm4b") {
    if (d.is_disk()) throw InvalidInput("thm4b needs a lemniscate");
    if (o.lane < 0 || o.lane > d.s() - 2) throw InvalidInput("--l must lie in [0, s-2]");
    if (!d.in_G_rho(z)) throw InvalidInput("--z must lie inside L_rho");
    const OrthonormalSet set = build_set(d, N, Engine::cholesky, bits_for(o, N), progress);
    const cplx c1 = lemniscate_interior_constant(d, o.lane, z);
    std::vector<int> ns;
    std::vector<double> values;
    for (int n : all_ns) {
      if (n % d.s() != o.lane || n == 0) continue;
      ns.push_back(n);
      values.push_back(n * std::abs(lemniscate_interior_lhs(d, n, set.evaluate(n, z)) - c1));
    }
    const double tol = o.tol > 0 ? o.tol : 0.2;
    const bool pass = ns.size() >= 2 && std::abs(values.back() / values.front() - 1.0) <= tol;
    rep = trend_report(ns, values, "stabilization", pass, tol);
    const cplx c2 = lemniscate_interior_second_constant(d, o.lane, z);
    rep.extra = {{"first_order_constant", {c1.real(), c1.imag()}},
                 {"second_order_constant", {c2.real(), c2.imag()}}};
  } else if (o.target == "kappa") {
    const OrthonormalSet set = d.is_disk() && o.engine == "closed_form"
                                   ? closed_form_set(d, N, bits_for(o, N))
                                   : build_set(d, N, Engine::cholesky, bits_for(o, N), progress);
    std::vector<double> values;
    bool pass = true;
    for (int n : all_ns) {
      const double dev = std::abs(set.kappas[n] / kappa_model(d, n) - 1.0);
      values.push_back(dev);
      pass = pass && dev <= 10.0 * std::pow(d.rho(), 2 * n) + 1e-12;
    }
    rep = trend_report(all_ns, values, "envelope", pass, 10.0);
  } else {
    throw InvalidInput("verify target must be one of carleman, thm3, thm1, thm4b, kappa");
  }

  json j = rep.to_json();
  j["target"] = o.target;
  j["domain"] = domain_to_json(d);
  write_json(j, o.out.empty() ? o.target + "_report.json" : o.out, out);
  out << o.target << ": " << (rep.pass ? "PASS" : "FAIL") << '\n';
  return rep.pass ? kPass : kVerifyFailed;
}

int cmd_zeros(const Options& o, std::ostream& out, const Progress& progress) {
  const Domain d = make_domain(o);
  if (o.n < 1) throw InvalidInput("--n must be at least 1");
  const bool exact = d.is_disk() || o.n % d.s() == d.s() - 1;
  Poly<BigComplex> p;
  int bits = bits_for(o, o.n);
  if (exact) {
    // Exact polynomials have multiple roots; a wide mantissa keeps each
    // member of a cluster accurate.
    bits = std::max(bits, 768);
    ScopedPrecision prec(bits);
    progress("using the closed form of P_" + std::to_string(o.n) + " at " + std::to_string(bits) + " bits");
    p = d.is_disk() ? closed_form_set(d, o.n, bits).polys.back() : closed_form_lemniscate<BigFloat>(d, o.n);
  } else {
    p = build_set(d, o.n, Engine::cholesky, bits, progress).polys.back();
  }
  progress("finding roots");
  const ZeroSet zs = find_roots(p, bits);
  const DiscreteMeasure nu = counting_measure(zs);

  const std::filesystem::path dir = o.out.empty() ? std::filesystem::path(".") : std::filesystem::path(o.out);
  std::filesystem::create_directories(dir);
  const std::string stem = "P" + std::to_string(o.n);
  {
    std::ofstream f(dir / (stem + "_zeros.csv"));
    zs.write_csv(f);
  }
  {
    std::ofstream f(dir / (stem + "_counting.csv"));
    nu.write_csv(f);
  }
  json summary = {{"domain", domain_to_json(d)}, {"n", o.n}, {"precision_bits", bits}, {"sweeps", zs.sweeps}};
  double worst_res = 0.0;
  for (double r : zs.residuals) worst_res = std::max(worst_res, r);
  summary["max_residual"] = worst_res;
  if (!d.is_disk()) {
    const DiscreteMeasure mu = equilibrium_measure(d, 2048);
    std::ofstream f(dir / "equilibrium.csv");
    mu.write_csv(f);
    summary["moment_discrepancy_K6"] = moment_discrepancy(nu, mu, 6);
    double band = 0.0;
    for (const cplx r : zs.roots) band = std::max(band, std::abs(d.level_modulus(r) - 1.0));
    summary["max_band_distance"] = band;
    summary["compact_in_G_rho_0.25_violations"] =
        zero_free_check(d, zs, ZeroFreeRegion::compact_in_G_rho(0.25)).violations.size();
  }
  write_json(summary, (dir / (stem + "_summary.json")).string(), out);
  out << summary.dump(2) << '\n';
  return kPass;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Carleman orthogonal polynomials: compute, verify asymptotics, extract zeros", "carleman"};
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--domain", o.domain, "disk or lemniscate")->capture_default_str();
  app.add_option("--s", o.s, "lemniscate petal count")->capture_default_str();
  app.add_option("--R", o.R, "radius parameter")->capture_default_str();
  app.add_option("--N", o.N, "highest degree for compute")->capture_default_str();
  app.add_option("--n", o.n, "degree for zeros")->capture_default_str();
  app.add_option("--engine", o.engine, "cholesky, arnoldi or closed_form")->capture_default_str();
  app.add_option("--bits", o.bits, "working precision in bits (0: by degree)")->capture_default_str();
  app.add_option("--r", o.r, "level-curve radius")->capture_default_str();
  app.add_option("--ns", o.ns, "degree range a:b");
  app.add_option("--z-re", o.z_re, "evaluation point, real part")->capture_default_str();
  app.add_option("--z-im", o.z_im, "evaluation point, imaginary part")->capture_default_str();
  app.add_option("--l", o.lane, "lane n = sm + l for thm4b")->capture_default_str();
  app.add_option("--tol", o.tol, "slope or stabilization tolerance override");
  app.add_option("--samples", o.samples, "points on the level curve")->capture_default_str();
  app.add_option("--out", o.out, "output file (compute, verify) or directory (zeros)");
  app.add_flag("--quiet", o.quiet, "suppress progress on stderr");

  auto* compute = app.add_subcommand("compute", "compute P_0..P_N and write JSON");
  auto* verify = app.add_subcommand("verify", "check an asymptotic statement");
  verify->add_option("target", o.target, "carleman, thm3, thm1, thm4b or kappa")->required();
  auto* zeros = app.add_subcommand("zeros", "zeros of P_n and measures as CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    report_error(err, "InvalidInput", e.what());
    return kInvalidInput;
  }

  const Progress progress(err, o.quiet);
  try {
    if (compute->parsed()) return cmd_compute(o, out, progress);
    if (verify->parsed()) return cmd_verify(o, out, progress);
    if (zeros->parsed()) return cmd_zeros(o, out, progress);
  } catch (const InvalidInput& e) {
    report_error(err, "InvalidInput", e.what());
    return kInvalidInput;
  } catch (const DomainError& e) {
    report_error(err, e.kind(), e.what());
    return kInvalidInput;
  } catch (const RangeError& e) {
    report_error(err, e.kind(), e.what());
    return kInvalidInput;
  } catch (const Error& e) {
    report_error(err, e.kind(), e.what());
    return kNumericalFailure;
  }
  return kInvalidInput;
}

}  // namespace carleman::cli
