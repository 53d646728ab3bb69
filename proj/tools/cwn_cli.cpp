// Batch driver for the complex white-noise workbench. Every subcommand writes
// a JSON manifest (command, effective config, seed, versions, results) plus
// CSV tables under --out, prints one line per asserted property, and exits
// nonzero when an assertion fails. Outputs carry no timestamps, so identical
// invocations produce identical artifacts.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "cwn/contour.hpp"
#include "cwn/diagnostics.hpp"
#include "cwn/processes.hpp"
#include "cwn/serialize.hpp"

using cwn::chaos::ChaosVector;
using cwn::chaos::MultiIndex;
using cwn::contour::Contour;
using cwn::contour::IntegrandField;
using cwn::hermite::Evaluator;
using cwn::proc::TruncationPlan;
using json = nlohmann::json;
using Complex = std::complex<double>;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Complex parse_complex(std::string text) {
  std::erase(text, ' ');
  if (text.empty()) throw CLI::ValidationError("empty complex literal");
  if (text.back() != 'i') return {std::stod(text), 0.0};
  text.pop_back();  // drop the trailing i
  // split off the real part at the last sign that is not leading or an exponent
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return std::stod(s);
  };
  if (split == std::string::npos) return {0.0, imag_of(text)};
  return {std::stod(text.substr(0, split)), imag_of(text.substr(split))};
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(parse_complex(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Contour parse_contour(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("contour needs kind:args");
  const std::string kind = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  if (kind == "segment") {
    const auto pts = parse_complex_list(args);
    if (pts.size() != 2) throw CLI::ValidationError("segment:a,b needs two endpoints");
    return Contour::segment(pts[0], pts[1]);
  }
  if (kind == "arc") {
    const auto parts = parse_complex_list(args);
    if (parts.size() != 4) throw CLI::ValidationError("arc:center,r,theta0,theta1");
    return Contour::arc(parts[0], parts[1].real(), parts[2].real(), parts[3].real());
  }
  if (kind == "polyline") return Contour::polyline(parse_complex_list(args));
  throw CLI::ValidationError("unknown contour kind '" + kind + "'");
}

struct Run {
  std::string command;
  std::filesystem::path out_dir;
  json config = json::object();
  json results = json::object();
  std::vector<std::string> failures;
  std::uint64_t seed = 0;

  void assert_that(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) failures.push_back(what);
  }

  void write_text(const std::string& filename, const std::string& text) const {
    std::ofstream out(out_dir / filename, std::ios::binary);
    out << text;
  }

  int finish() {
    json manifest;
    manifest["command"] = command;
    manifest["config"] = config;
    manifest["seed"] = seed;
    manifest["versions"] = {{"cwn", kVersion}};
    manifest["results"] = results;
    manifest["failures"] = failures;
    std::ofstream out(out_dir / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << "\n";
    std::printf("%s: %s (manifest: %s)\n", command.c_str(),
                failures.empty() ? "all properties hold" : "FAILURES recorded",
                (out_dir / "manifest.json").c_str());
    return failures.empty() ? 0 : 1;
  }
};

Run make_run(const std::string& command, const std::string& out_root) {
  Run run;
  run.command = command;
  run.out_dir = std::filesystem::path(out_root) / command;
  std::filesystem::create_directories(run.out_dir);
  return run;
}

TruncationPlan plan_from(double radius, double tol, int p_override, int n_override) {
  TruncationPlan plan = TruncationPlan::make(radius, tol);
  if (p_override > 0) plan.p = p_override;
  if (n_override >= 0) plan = plan.with_truncation(n_override);
  return plan;
}

json plan_json(const TruncationPlan& plan) {
  return {{"radius", plan.radius},
          {"p", plan.p},
          {"truncation", plan.truncation},
          {"tail_bound", plan.tail_bound},
          {"tol", plan.tol}};
}

// ---------------------------------------------------------------------------

int cmd_bounds(int nmax, double radius, const std::string& out_root) {
  Run run = make_run("bounds", out_root);
  run.config = {{"nmax", nmax}, {"radius", radius}};
  Evaluator ev(cwn::hermite::Config{.n_max = std::max(nmax, 1), .radius = radius});

  std::string csv = "re_z,im_z,min_zeta_margin,min_prime_margin,em_all,hille_all\n";
  bool envelope_ok = true, derivative_ok = true;
  long em_holds = 0, hille_holds = 0, total = 0;
  for (int i = 0; i <= 20; ++i) {
    const double r = radius * i / 20.0;
    for (int j = 0; j < 21; ++j) {
      const double th = 2.0 * cwn::kPi * j / 21.0;
      const Complex z{r * std::cos(th), r * std::sin(th)};
      double min_zeta = 1e300, min_prime = 1e300;
      bool em_all = true, hille_all = true;
      for (int n = 1; n <= nmax; ++n) {
        const auto rep = ev.check_bounds(n, z);
        ++total;
        min_zeta = std::min(min_zeta, rep.zeta_margin);
        min_prime = std::min(min_prime, rep.zeta_prime_margin);
        envelope_ok = envelope_ok && rep.zeta_ok;
        derivative_ok = derivative_ok && rep.zeta_prime_ok;
        em_all = em_all && rep.em_ok;
        hille_all = hille_all && rep.hille_ok;
        em_holds += rep.em_ok;
        hille_holds += rep.hille_ok;
      }
      csv += fmt_double(z.real()) + "," + fmt_double(z.imag()) + "," + fmt_double(min_zeta) +
             "," + fmt_double(min_prime) + "," + std::to_string(em_all) + "," +
             std::to_string(hille_all) + "\n";
    }
  }
  run.write_text("grid.csv", csv);
  run.results = {{"checks", total},
                 {"em_holds", em_holds},
                 {"hille_holds", hille_holds},
                 {"grid_points", 441}};
  run.assert_that(envelope_ok, "envelope bound holds at every grid point and degree");
  run.assert_that(derivative_ok, "derivative bound holds at every grid point and degree");
  return run.finish();
}

int cmd_spaces(std::uint64_t seed, const std::string& out_root) {
  Run run = make_run("spaces", out_root);
  run.seed = seed;
  run.config = {{"seed", seed}};
  std::mt19937 gen(static_cast<std::uint32_t>(seed));
  std::uniform_int_distribution<int> coord(0, 5), ords(0, 3);
  std::uniform_real_distribution<double> val(-1.0, 1.0);

  auto random_vector = [&](int terms) {
    ChaosVector f;
    for (int t = 0; t < terms; ++t) {
      MultiIndex alpha;
      for (int o = ords(gen); o > 0; --o) alpha = alpha + MultiIndex::unit(std::uint32_t(coord(gen)));
      f.add(alpha, Complex{val(gen), val(gen)});
    }
    return f;
  };

  bool laws = true, duality = true, grading = true, vage = true;
  const double a2 = cwn::chaos::vage_constant(2);
  std::string csv = "trial,lhs,rhs,slack\n";
  for (int trial = 0; trial < 1000; ++trial) {
    const ChaosVector f = random_vector(5);
    const ChaosVector g = random_vector(5);
    const ChaosVector h = random_vector(3);
    // algebra laws
    ChaosVector comm = cwn::chaos::wick(f, g);
    comm -= cwn::chaos::wick(g, f);
    ChaosVector assoc = cwn::chaos::wick(cwn::chaos::wick(f, g), h);
    assoc -= cwn::chaos::wick(f, cwn::chaos::wick(g, h));
    ChaosVector unit_law = cwn::chaos::wick(f, ChaosVector::unit());
    unit_law -= f;
    laws = laws && cwn::chaos::norm_minus(comm, 1) == 0.0 &&
           cwn::chaos::norm_minus(assoc, 1) < 1e-12 && unit_law.zero();
    // duality and grading
    const double pair_abs = std::abs(cwn::chaos::pairing(f, g));
    for (int p = 1; p <= 6; ++p) {
      duality = duality &&
                pair_abs <= cwn::chaos::norm_plus(f, p) * cwn::chaos::norm_minus(g, p) + 1e-12;
      if (p > 1)
        grading = grading &&
                  cwn::chaos::norm_minus(f, p) <= cwn::chaos::norm_minus(f, p - 1) + 1e-12;
    }
    // Vage inequality at (p,q) = (4,2)
    const double lhs = cwn::chaos::norm_minus(cwn::chaos::wick(f, g), 4);
    const double rhs = a2 * cwn::chaos::norm_minus(f, 4) * cwn::chaos::norm_minus(g, 2);
    vage = vage && lhs <= rhs + 1e-10;
    if (trial < 200)
      csv += std::to_string(trial) + "," + fmt_double(lhs) + "," + fmt_double(rhs) + "," +
             fmt_double(rhs - lhs) + "\n";
  }
  run.write_text("vage_samples.csv", csv);
  run.results = {{"vage_constant_2", a2}, {"trials", 1000}};
  run.assert_that(laws, "Wick product is commutative, associative, unital");
  run.assert_that(duality, "duality pairing bounded by norm_plus * norm_minus");
  run.assert_that(grading, "norm_minus decreases in the grading order");
  run.assert_that(vage, "Vage inequality holds at (p,q) = (4,2)");
  return run.finish();
}

int cmd_process(double radius, double tol, std::uint64_t seed, const std::string& out_root) {
  Run run = make_run("process", out_root);
  run.seed = seed;
  run.config = {{"radius", radius}, {"tol", tol}, {"seed", seed}};
  Evaluator ev;
  const TruncationPlan plan = TruncationPlan::make(radius, tol);
  run.results["plan"] = plan_json(plan);
  std::mt19937 gen(static_cast<std::uint32_t>(seed));
  std::uniform_real_distribution<double> u(-radius, radius);

  // analyticity orders at random interior points
  const std::vector<double> hs = {1e-2, 1e-3, 1e-4};
  std::string csv = "re_z0,im_z0,direction,h,residual\n";
  double min_order = 1e300;
  double max_spread = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    Complex z0{u(gen), u(gen)};
    const double cap = radius / 2.0 - 2e-2;
    if (std::abs(z0) > cap) z0 *= cap / std::abs(z0);
    const auto rep = cwn::proc::analyticity_check(ev, z0, hs, plan);
    for (std::size_t d = 0; d < 4; ++d) {
      min_order = std::min(min_order, rep.per_direction_order[d]);
      for (std::size_t i = 0; i < hs.size(); ++i)
        csv += fmt_double(z0.real()) + "," + fmt_double(z0.imag()) + "," + std::to_string(d) +
               "," + fmt_double(hs[i]) + "," + fmt_double(rep.residuals[d][i]) + "\n";
    }
    max_spread = std::max(max_spread, rep.direction_spread);
  }
  run.write_text("analyticity.csv", csv);
  run.results["min_direction_order"] = min_order;
  run.results["max_direction_spread"] = max_spread;
  run.assert_that(min_order >= 0.9, "difference quotients converge with order >= 0.9");

  // continuity bound on random pairs
  bool continuity = true;
  for (int trial = 0; trial < 100; ++trial) {
    Complex z1{u(gen), u(gen)}, z2{u(gen), u(gen)};
    if (std::abs(z1) > radius) z1 *= radius / (1.0001 * std::abs(z1));
    if (std::abs(z2) > radius) z2 *= radius / (1.0001 * std::abs(z2));
    continuity = continuity && cwn::proc::continuity_check(ev, z1, z2, plan).within;
  }
  run.assert_that(continuity, "graded-norm continuity bound holds on 100 random pairs");

  // coefficient envelope and the weighted reduction
  const Complex probe{0.4 * radius, 0.3 * radius};
  const ChaosVector b = cwn::proc::brownian_coeffs(ev, probe, plan);
  bool coeff_bound = true;
  const double log_c = cwn::hermite::disk_envelope_log(radius);
  for (const auto& [alpha, cv] : b.sorted_entries())
    coeff_bound = coeff_bound &&
                  std::log(std::abs(cv)) <=
                      std::log(radius) + log_c + 2.0 * radius * alpha.max_coordinate() + 1e-9;
  run.assert_that(coeff_bound, "coefficients sit under R C_R e^{2Rn}");
  const cwn::proc::AnalyticWeight one{cwn::proc::AnalyticWeight::Kind::polynomial, 0};
  run.assert_that(cwn::proc::weighted_coeffs(ev, probe, one, plan) == b,
                  "trivial weight reproduces the Brownian coefficients exactly");

  // quadratic-variation table on the real axis
  const std::vector<int> levels = {0, 4, 16, 64, 256, 1024};
  const auto rows = cwn::diag::parseval_scan(ev, std::min(radius, 1.0), levels);
  std::string ptable = "N,partial_sum\n";
  bool bessel = true;
  for (const auto& row : rows) {
    ptable += std::to_string(row.n) + "," + fmt_double(row.partial_sum) + "\n";
    bessel = bessel && row.partial_sum <= std::min(radius, 1.0);
  }
  run.write_text("parseval.csv", ptable);
  run.assert_that(bessel, "quadratic-variation partial sums stay below t");
  return run.finish();
}

int cmd_integrate(const std::string& contour_text, const std::string& field_text, double radius,
                  double tol, int p_override, int n_override, double eps,
                  const std::string& out_root) {
  Run run = make_run("integrate", out_root);
  run.config = {{"contour", contour_text}, {"field", field_text}, {"radius", radius},
                {"tol", tol},             {"eps", eps}};
  Evaluator ev;
  const Contour path = parse_contour(contour_text);
  const TruncationPlan plan = plan_from(std::max(radius, path.max_abs()), tol, p_override,
                                        n_override < 0 ? 48 : n_override);
  IntegrandField field = field_text == "constant"
                             ? IntegrandField::constant(ChaosVector::unit())
                             : IntegrandField::brownian(1.0, eps);
  const auto rep = cwn::contour::integrate_wick(ev, field, path, plan, tol);

  const json vec = cwn::chaos::to_json(rep.value);
  run.write_text("integral_vector.json", vec.dump(2) + "\n");
  json levels = json::array();
  for (const auto& lv : rep.levels)
    levels.push_back({{"piece", lv.piece},
                      {"panels", lv.panels},
                      {"cauchy_delta", lv.cauchy_delta},
                      {"sum_norm", lv.sum_norm}});
  run.results = {{"contour_id", rep.contour_id},
                 {"p", rep.p},
                 {"N", rep.truncation},
                 {"panels", rep.panels_total},
                 {"levels", levels},
                 {"max_integrand_norm", rep.max_integrand_norm},
                 {"vector_ref", "integral_vector.json"},
                 {"plan", plan_json(plan)}};
  run.assert_that(rep.converged, "Riemann refinement met the graded-norm Cauchy criterion");
  bool stable = true;
  for (const auto& lv : rep.levels)
    stable = stable && lv.sum_norm <= rep.max_integrand_norm * (1.0 + 1e-9);
  run.assert_that(stable, "every Riemann sum stays under the compactness bound");
  return run.finish();
}

int cmd_ito(double t, const std::string& z_text, double eps, double tol,
            const std::string& out_root) {
  Run run = make_run("ito", out_root);
  run.config = {{"t", t}, {"z", z_text}, {"eps", eps}, {"tol", tol}};
  Evaluator ev;

  const TruncationPlan real_plan = TruncationPlan::make(std::max(t, 1.0), tol).with_truncation(64);
  const auto real_rep = cwn::contour::ito_check_real(ev, t, real_plan, tol);
  run.results["real"] = {{"residual_norm", real_rep.residual_norm},
                         {"antisymmetry_max", real_rep.antisymmetry_max},
                         {"parseval_gap", real_rep.parseval_gap},
                         {"quadrature_estimate", real_rep.quadrature_estimate}};
  run.assert_that(real_rep.antisymmetry_max <= 1e-9, "antisymmetry cancellation at 1e-9");
  run.assert_that(real_rep.residual_norm <= tol + real_rep.parseval_gap + 1e-9,
                  "real-time identity residual within tolerance + truncation gap");

  const Complex z = parse_complex(z_text);
  const TruncationPlan reg_plan =
      TruncationPlan::make(std::max(1.2 * std::abs(z), 0.5), 1e-8).with_truncation(64);
  const auto reg_rep = cwn::contour::ito_check_regularized(ev, z, eps, reg_plan, 1e-8);
  run.results["regularized"] = {
      {"residual_norm", reg_rep.residual_norm},
      {"correction_series_re", reg_rep.correction_series.real()},
      {"correction_series_im", reg_rep.correction_series.imag()},
      {"correction_closed_re", reg_rep.correction_closed.real()},
      {"correction_closed_im", reg_rep.correction_closed.imag()},
      {"correction_deviation", reg_rep.correction_deviation}};
  run.assert_that(reg_rep.correction_deviation <= 1e-6,
                  "damped correction: series and closed form agree");
  run.assert_that(reg_rep.residual_norm <= 1e-6, "damped identity residual within tolerance");
  return run.finish();
}

int cmd_mehler(double eps, int n_terms, const std::string& out_root) {
  Run run = make_run("mehler", out_root);
  run.config = {{"eps", eps}, {"nmax", n_terms}};
  Evaluator ev;
  std::vector<std::pair<Complex, Complex>> grid;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j)
      grid.push_back({{-2.0 + 0.2 * i, 0}, {-2.0 + 0.2 * j, 0}});

  std::string csv = "re_u,re_v,series,kernel,deviation\n";
  double max_dev = 0.0;
  for (const auto& [u, v] : grid) {
    const Complex series = cwn::hermite::mehler_series(ev, eps, u, v, n_terms);
    const Complex kernel = cwn::hermite::mehler_kernel(eps, u, v);
    const double dev = std::abs(series - kernel);
    max_dev = std::max(max_dev, dev);
    csv += fmt_double(u.real()) + "," + fmt_double(v.real()) + "," + fmt_double(series.real()) +
           "," + fmt_double(kernel.real()) + "," + fmt_double(dev) + "\n";
  }
  run.write_text("grid.csv", csv);
  const auto rep = cwn::diag::mehler_consistency(ev, eps, grid, n_terms);
  run.results = {{"max_deviation", max_dev},
                 {"double_integral_dev", rep.double_integral_dev},
                 {"identity_probes", rep.probes}};
  run.assert_that(max_dev <= 1e-8, "series matches the closed form at 1e-8");
  return run.finish();
}

int cmd_diverge(double big_t, int n_trunc, const std::string& out_root) {
  Run run = make_run("diverge", out_root);
  run.config = {{"T", big_t}, {"nmax", n_trunc}};
  Evaluator ev;
  std::vector<double> grid;
  for (int k = 2; k <= 19; ++k) grid.push_back(0.05 * k);
  const auto rows = cwn::diag::divergence_scan(ev, big_t, grid, n_trunc);

  std::string csv = "eps,S,lower_bound_log,allowance,certified\n";
  bool monotone = true, certified = true;
  double s_half = 0.0, s_peak = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv += fmt_double(rows[i].eps) + "," + fmt_double(rows[i].partial_sum) + "," +
           fmt_double(rows[i].lower_bound_log) + "," + fmt_double(rows[i].allowance) + "," +
           std::to_string(rows[i].certified) + "\n";
    if (i > 0) monotone = monotone && rows[i].partial_sum > rows[i - 1].partial_sum;
    certified = certified && rows[i].certified;
    if (std::abs(rows[i].eps - 0.5) < 1e-9) s_half = rows[i].partial_sum;
    if (std::abs(rows[i].eps - 0.95) < 1e-9) s_peak = rows[i].partial_sum;
  }
  run.write_text("scan.csv", csv);
  run.results = {{"ratio_95_50", s_peak / s_half}};
  run.assert_that(monotone, "partial sums strictly increase across the eps grid");
  run.assert_that(certified, "analytic lower bound certified at every eps");
  run.assert_that(s_peak / s_half >= 10.0, "S(0.95)/S(0.5) >= 10");
  return run.finish();
}

int cmd_simulate(std::uint64_t seed, int samples, const std::string& grid_text, double radius,
                 double tol, int n_override, const std::string& out_root) {
  Run run = make_run("simulate", out_root);
  run.seed = seed;
  run.config = {{"seed", seed}, {"samples", samples}, {"grid", grid_text},
                {"radius", radius}, {"tol", tol}};
  Evaluator ev;
  TruncationPlan plan = TruncationPlan::make(radius, tol);
  if (n_override >= 0) plan = plan.with_truncation(n_override);
  run.results["plan"] = plan_json(plan);

  const std::vector<Complex> grid = parse_complex_list(grid_text);
  const auto table = cwn::proc::sample_paths(ev, seed, grid, plan, samples);
  run.write_text("trajectories.csv", table.to_csv());

  bool means_ok = true;
  json means = json::array();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    Complex mean{0, 0};
    for (int s = 0; s < samples; ++s) mean += table.at(s, g);
    mean /= double(samples);
    means.push_back({{"re_z", grid[g].real()},
                     {"im_z", grid[g].imag()},
                     {"mean_re", mean.real()},
                     {"mean_im", mean.imag()}});
    // variance of B_z is at most ~|z| cosh-scale on the disk; 5 sigma gate
    means_ok = means_ok && std::abs(mean) <= 5.0 * std::sqrt(2.0 * radius / samples) + 1e-12;
  }
  run.results["means"] = means;
  run.assert_that(means_ok, "empirical means are centered at the Monte Carlo scale");
  return run.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"complex white-noise workbench"};
  app.set_config("--config", "", "INI config file; explicit flags win");
  app.require_subcommand(1);
  app.fallthrough();  // parent flags (--out, --config) may follow the subcommand

  std::string out_root = "out";
  app.add_option("--out", out_root, "output directory root")->capture_default_str();

  // shared knobs with per-command defaults
  double radius = 1.0, tol = 1e-6, big_t = 1.0, t_real = 1.0;
  double integrate_eps = 1.0, ito_eps = 0.3, mehler_eps = 0.3;
  int nmax = -1, p_override = 0, samples = 10000;
  std::uint64_t seed = 1;
  std::string contour_text = "segment:0,1";
  std::string field_text = "brownian";
  std::string z_text = "0.5i";
  std::string grid_text = "0.25,0.5,0.75,1";

  CLI::App* bounds = app.add_subcommand("bounds", "certify the complex-plane growth bounds");
  int bounds_nmax = 128;
  double bounds_radius = 3.0;
  bounds->add_option("--nmax", bounds_nmax, "degree cap")->capture_default_str();
  bounds->add_option("--radius", bounds_radius, "grid radius")->capture_default_str();

  CLI::App* spaces = app.add_subcommand("spaces", "chaos-algebra property suite");
  spaces->add_option("--seed", seed, "rng seed")->capture_default_str();

  CLI::App* process = app.add_subcommand("process", "process diagnostics on the disk");
  process->add_option("--radius", radius, "disk radius")->capture_default_str();
  process->add_option("--tol", tol, "plan tolerance")->capture_default_str();
  process->add_option("--seed", seed, "rng seed")->capture_default_str();

  CLI::App* integrate = app.add_subcommand("integrate", "contour Wick integral");
  integrate->add_option("--contour", contour_text, "segment:a,b | arc:c,r,th0,th1 | polyline:p0,p1,...")
      ->capture_default_str();
  integrate->add_option("--field", field_text, "constant | brownian")->capture_default_str();
  integrate->add_option("--radius", radius, "plan radius")->capture_default_str();
  integrate->add_option("--tol", tol, "Cauchy tolerance")->capture_default_str();
  integrate->add_option("--p", p_override, "graded-norm order override")->capture_default_str();
  integrate->add_option("--nmax", nmax, "truncation override")->capture_default_str();
  integrate->add_option("--eps", integrate_eps, "field damping")->capture_default_str();

  CLI::App* ito = app.add_subcommand("ito", "quadratic identity checks");
  ito->add_option("--t", t_real, "real time")->capture_default_str();
  ito->add_option("--z", z_text, "complex time for the damped check")->capture_default_str();
  ito->add_option("--eps", ito_eps, "damping")->capture_default_str();
  ito->add_option("--tol", tol, "integration tolerance")->capture_default_str();

  CLI::App* mehler = app.add_subcommand("mehler", "kernel vs series scan");
  int mehler_n = 200;
  mehler->add_option("--eps", mehler_eps, "damping")->capture_default_str();
  mehler->add_option("--nmax", mehler_n, "series truncation")->capture_default_str();

  CLI::App* diverge = app.add_subcommand("diverge", "imaginary-time divergence scan");
  int diverge_n = 400;
  diverge->add_option("--T", big_t, "imaginary time")->capture_default_str();
  diverge->add_option("--nmax", diverge_n, "series truncation")->capture_default_str();

  CLI::App* simulate = app.add_subcommand("simulate", "seeded trajectory sampling");
  simulate->add_option("--seed", seed, "rng seed")->capture_default_str();
  simulate->add_option("--samples", samples, "sample count")->capture_default_str();
  simulate->add_option("--grid", grid_text, "comma-separated complex points")->capture_default_str();
  simulate->add_option("--radius", radius, "plan radius")->capture_default_str();
  simulate->add_option("--tol", tol, "plan tolerance")->capture_default_str();
  simulate->add_option("--nmax", nmax, "truncation override")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (bounds->parsed()) return cmd_bounds(bounds_nmax, bounds_radius, out_root);
    if (spaces->parsed()) return cmd_spaces(seed, out_root);
    if (process->parsed()) return cmd_process(radius, tol, seed, out_root);
    if (integrate->parsed())
      return cmd_integrate(contour_text, field_text, radius, tol, p_override, nmax, integrate_eps, out_root);
    if (ito->parsed()) return cmd_ito(t_real, z_text, ito_eps, tol, out_root);
    if (mehler->parsed()) return cmd_mehler(mehler_eps, mehler_n, out_root);
    if (diverge->parsed()) return cmd_diverge(big_t, diverge_n, out_root);
    if (simulate->parsed()) return cmd_simulate(seed, samples, grid_text, radius, tol, nmax, out_root);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
