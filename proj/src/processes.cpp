#include "cwn/processes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cwn/constants.hpp"
#include "cwn/errors.hpp"
#include "cwn/rng.hpp"

namespace cwn::proc {

namespace {

constexpr double kMarginFactor = 1.1;  // head-room on the strict inequality e^{4R} < 2^p

void append_double(std::string& s, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  s += buf;
}

double coeff_tol(const TruncationPlan& plan) { return plan.tol / (plan.truncation + 1.0); }

}  // namespace

chaos::ChaosVector order1_vector(std::span<const Complex> values) {
  chaos::ChaosVector out;
  for (std::size_t n = 0; n < values.size(); ++n)
    out.set(chaos::MultiIndex::unit(std::uint32_t(n)), values[n]);
  return out;
}

TruncationPlan TruncationPlan::make(double radius, double tol) {
  if (!(radius > 0.0)) throw std::invalid_argument("TruncationPlan: radius must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("TruncationPlan: tol must be > 0");
  TruncationPlan plan;
  plan.radius = radius;
  plan.tol = tol;
  plan.p = 1;
  while (std::exp2(double(plan.p)) <= kMarginFactor * std::exp(4.0 * radius)) {
    ++plan.p;
    if (plan.p > 60) throw std::invalid_argument("TruncationPlan: radius too large for double range");
  }
  int n = 0;
  while (plan.tail_series(n) > tol * tol && n < 200000) ++n;
  plan.truncation = n;
  plan.tail_bound = plan.tail_series(n);
  return plan;
}

double TruncationPlan::tail_series(int n_from_exclusive) const {
  // C_R^2 sum_{n > N} e^{4Rn} 2^{-(n+1)p} in closed geometric form
  const double q = std::exp(4.0 * radius) / std::exp2(double(p));
  const double c2 = std::exp(2.0 * hermite::disk_envelope_log(radius));
  return c2 * std::exp2(-double(p)) * std::pow(q, n_from_exclusive + 1) / (1.0 - q);
}

double TruncationPlan::geometric_sum(double extra_factor_log) const {
  double acc = 0.0;
  for (int n = 0; n <= truncation; ++n)
    acc += std::exp((4.0 * radius + extra_factor_log) * n - double(n + 1) * p * kLn2);
  return acc;
}

TruncationPlan TruncationPlan::with_truncation(int n) const {
  if (n < 0) throw std::invalid_argument("TruncationPlan: truncation must be >= 0");
  TruncationPlan out = *this;
  out.truncation = n;
  out.tail_bound = out.tail_series(n);
  return out;
}

Complex AnalyticWeight::sqrt_value(Complex u) const {
  switch (kind) {
    case Kind::polynomial: {
      Complex acc{1, 0};
      const Complex base = 1.0 + u * u;
      for (int i = 0; i < q; ++i) acc *= base;
      return acc;
    }
    case Kind::exp_plus: {
      Complex pw{1, 0};
      for (int i = 0; i < 2 * q; ++i) pw *= u;
      return std::exp(0.5 * pw);
    }
    case Kind::exp_minus: {
      Complex pw{1, 0};
      for (int i = 0; i < 2 * q; ++i) pw *= u;
      return std::exp(-0.5 * pw);
    }
  }
  return {1, 0};
}

double AnalyticWeight::value(double u) const {
  const Complex s = sqrt_value(Complex{u, 0});
  return (s * s).real();
}

std::string AnalyticWeight::name() const {
  const char* tag = kind == Kind::polynomial ? "poly" : kind == Kind::exp_plus ? "expp" : "expm";
  return std::string(tag) + ":" + std::to_string(q);
}

AnalyticWeight AnalyticWeight::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string head(text.substr(0, colon));
  AnalyticWeight w;
  if (head == "poly")
    w.kind = Kind::polynomial;
  else if (head == "expp")
    w.kind = Kind::exp_plus;
  else if (head == "expm")
    w.kind = Kind::exp_minus;
  else
    throw std::invalid_argument("AnalyticWeight: unknown kind '" + head + "'");
  w.q = colon == std::string_view::npos ? 1 : std::stoi(std::string(text.substr(colon + 1)));
  if (w.q < 0) throw std::invalid_argument("AnalyticWeight: power must be >= 0");
  return w;
}

chaos::ChaosVector brownian_coeffs(const hermite::Evaluator& ev, Complex z,
                                   const TruncationPlan& plan) {
  return order1_vector(ev.segment_integrals(plan.truncation, {0, 0}, z, coeff_tol(plan)));
}

chaos::ChaosVector white_noise_coeffs(const hermite::Evaluator& ev, Complex z,
                                      const TruncationPlan& plan) {
  return order1_vector(ev.values(plan.truncation, z));
}

chaos::ChaosVector white_noise_coeffs_regularized(const hermite::Evaluator& ev, Complex z,
                                                  double eps, const TruncationPlan& plan) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw RegimeError("white_noise_coeffs_regularized: eps must lie in [0, 1]");
  std::vector<Complex> coeffs = ev.values(plan.truncation, z);
  double damp = 1.0;
  const double root = std::sqrt(eps);
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    coeffs[n] *= damp;
    damp *= root;
  }
  return order1_vector(coeffs);
}

chaos::ChaosVector weighted_coeffs(const hermite::Evaluator& ev, Complex z,
                                   const AnalyticWeight& m, const TruncationPlan& plan) {
  const std::function<Complex(Complex)> factor = [&m](Complex u) { return m.sqrt_value(u); };
  return order1_vector(
      ev.segment_integrals_weighted(plan.truncation, {0, 0}, z, coeff_tol(plan), factor));
}

chaos::ChaosVector regularized_coeffs(const hermite::Evaluator& ev, Complex z, double eps,
                                      const TruncationPlan& plan) {
  if (!(eps >= 0.0 && eps < 1.0)) throw RegimeError("regularized_coeffs: eps must lie in [0, 1)");
  std::vector<Complex> coeffs = ev.segment_integrals(plan.truncation, {0, 0}, z, coeff_tol(plan));
  double damp = 1.0;
  const double root = std::sqrt(eps);
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    coeffs[n] *= damp;
    damp *= root;
  }
  return order1_vector(coeffs);
}

chaos::ChaosVector build(const hermite::Evaluator& ev, const ProcessSpec& spec, Complex z,
                         const TruncationPlan& plan) {
  switch (spec.kind) {
    case ProcessSpec::Kind::brownian:
      return brownian_coeffs(ev, z, plan);
    case ProcessSpec::Kind::white_noise:
      return white_noise_coeffs(ev, z, plan);
    case ProcessSpec::Kind::weighted:
      return weighted_coeffs(ev, z, spec.weight, plan);
    case ProcessSpec::Kind::regularized:
      return regularized_coeffs(ev, z, spec.eps, plan);
  }
  throw std::invalid_argument("build: unknown process kind");
}

AnalyticityReport analyticity_check(const hermite::Evaluator& ev, Complex z0,
                                    std::span<const double> h_values,
                                    const TruncationPlan& plan) {
  double h_max = 0.0;
  for (double h : h_values) h_max = std::max(h_max, std::abs(h));
  if (std::abs(z0) + h_max > plan.radius * (1.0 + 1e-12))
    throw std::domain_error("analyticity_check: z0 + h leaves the plan disk");

  AnalyticityReport rep;
  rep.h_values.assign(h_values.begin(), h_values.end());
  const chaos::ChaosVector noise = white_noise_coeffs(ev, z0, plan);
  const int n_trunc = plan.truncation;

  // envelope coefficient of the O(h) residual bound:
  // C_R (sum_n (1+sqrt(2n))^2 e^{4Rn} 2^{-(n+1)p})^{1/2}
  double deriv_sum = 0.0;
  for (int n = 0; n <= n_trunc; ++n) {
    const double f = 1.0 + std::sqrt(2.0 * n);
    deriv_sum += f * f * std::exp(4.0 * plan.radius * n - double(n + 1) * plan.p * kLn2);
  }
  rep.residual_bound = std::exp(hermite::disk_envelope_log(plan.radius)) * std::sqrt(deriv_sum);

  std::array<std::vector<chaos::ChaosVector>, 4> finest;
  for (std::size_t d = 0; d < kDirections.size(); ++d) {
    rep.residuals[d].reserve(h_values.size());
    for (double h : h_values) {
      const Complex step = kDirections[d] * h;
      // quotient coefficients from the short chord so the 1/h division does
      // not amplify quadrature error
      const double tol_seg = std::max(1e-15, plan.tol * h * h);
      std::vector<Complex> inc =
          ev.segment_integrals(n_trunc, z0, z0 + step, tol_seg);
      for (Complex& c : inc) c /= step;
      chaos::ChaosVector quotient = order1_vector(inc);
      quotient -= noise;
      rep.residuals[d].push_back(chaos::norm_minus(quotient, plan.p));
      if (h == rep.h_values.back()) finest[d].push_back(order1_vector(inc));
    }
    // least-squares slope of log residual vs log h
    const std::size_t m = rep.h_values.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = std::log(rep.h_values[i]);
      const double y = std::log(std::max(rep.residuals[d][i], 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    rep.per_direction_order[d] = (double(m) * sxy - sx * sy) / (double(m) * sxx - sx * sx);
  }
  rep.observed_order = 0.25 * (rep.per_direction_order[0] + rep.per_direction_order[1] +
                               rep.per_direction_order[2] + rep.per_direction_order[3]);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b) {
      chaos::ChaosVector diff = finest[a].front();
      diff -= finest[b].front();
      rep.direction_spread = std::max(rep.direction_spread, chaos::norm_minus(diff, plan.p));
    }
  return rep;
}

ContinuityReport continuity_check(const hermite::Evaluator& ev, Complex z1, Complex z2,
                                  const TruncationPlan& plan) {
  if (std::abs(z1) > plan.radius * (1 + 1e-12) || std::abs(z2) > plan.radius * (1 + 1e-12))
    throw std::domain_error("continuity_check: points must lie in the plan disk");
  ContinuityReport rep;
  chaos::ChaosVector diff = brownian_coeffs(ev, z1, plan);
  diff -= brownian_coeffs(ev, z2, plan);
  rep.distance = chaos::norm_minus(diff, plan.p);
  rep.bound = std::abs(z1 - z2) * plan.radius *
                  std::exp(hermite::disk_envelope_log(plan.radius)) *
                  std::sqrt(plan.geometric_sum()) +
              2.0 * plan.tol;
  rep.within = rep.distance <= rep.bound;
  return rep;
}

chaos::ChaosVector covariance_operator(const hermite::Evaluator& ev, Complex z, Complex w,
                                       const chaos::ChaosVector& f, const TruncationPlan& plan) {
  const chaos::ChaosVector bw = brownian_coeffs(ev, w, plan);
  // <conj(B_w), f> = sum alpha! conj(f_alpha) conj((B_w)_alpha)
  Complex s{0, 0};
  for (const auto& [alpha, c] : bw.sorted_entries()) {
    const Complex fa = f.coeff(alpha);
    if (fa == Complex{0, 0}) continue;
    s += std::exp(alpha.factorial_log()) * std::conj(fa) * std::conj(c);
  }
  chaos::ChaosVector out = brownian_coeffs(ev, z, plan);
  out *= s;
  return out;
}

std::string TrajectoryTable::to_csv() const {
  std::string csv = "re_z,im_z,sample_id,re_B,im_B\n";
  for (int s = 0; s < n_samples; ++s) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const Complex v = at(s, g);
      append_double(csv, grid[g].real());
      csv += ',';
      append_double(csv, grid[g].imag());
      csv += ',';
      csv += std::to_string(s);
      csv += ',';
      append_double(csv, v.real());
      csv += ',';
      append_double(csv, v.imag());
      csv += '\n';
    }
  }
  return csv;
}

TrajectoryTable sample_paths(const hermite::Evaluator& ev, std::uint64_t seed,
                             std::span<const Complex> grid, const TruncationPlan& plan,
                             int n_samples) {
  if (n_samples < 1) throw std::invalid_argument("sample_paths: n_samples must be >= 1");
  TrajectoryTable table;
  table.grid.assign(grid.begin(), grid.end());
  table.n_samples = n_samples;
  const int n_trunc = plan.truncation;
  std::vector<std::vector<Complex>> coeffs;
  coeffs.reserve(grid.size());
  for (Complex z : grid)
    coeffs.push_back(ev.segment_integrals(n_trunc, {0, 0}, z, coeff_tol(plan)));

  table.values.assign(std::size_t(n_samples) * grid.size(), Complex{0, 0});
  std::vector<double> draws(std::size_t(n_trunc) + 1);
  for (int s = 0; s < n_samples; ++s) {
    rng::NormalStream stream(seed, std::uint64_t(s));
    for (double& d : draws) d = stream.normal();
    for (std::size_t g = 0; g < coeffs.size(); ++g) {
      Complex acc{0, 0};
      const std::vector<Complex>& c = coeffs[g];
      for (std::size_t n = 0; n < c.size(); ++n) acc += c[n] * draws[n];
      table.values[std::size_t(s) * grid.size() + g] = acc;
    }
  }
  return table;
}

}  // namespace cwn::proc
