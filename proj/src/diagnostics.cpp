#include "cwn/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cwn/constants.hpp"
#include "cwn/errors.hpp"
#include "cwn/quadrature.hpp"

namespace cwn::diag {

std::vector<ParsevalRow> parseval_scan(const hermite::Evaluator& ev, double t,
                                       std::span<const int> n_list) {
  if (!(t > 0.0)) throw std::invalid_argument("parseval_scan: t must be > 0");
  if (n_list.empty()) return {};
  int n_max = 0;
  for (int n : n_list) {
    if (n < 0) throw std::invalid_argument("parseval_scan: truncation levels must be >= 0");
    n_max = std::max(n_max, n);
  }
  const std::vector<Complex> c = ev.segment_integrals(n_max, {0, 0}, {t, 0}, 1e-10);
  std::vector<double> prefix(c.size() + 1, 0.0);
  for (std::size_t n = 0; n < c.size(); ++n)
    prefix[n + 1] = prefix[n] + c[n].real() * c[n].real();
  std::vector<ParsevalRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) rows.push_back({n, prefix[std::size_t(n) + 1]});
  return rows;
}

double divergence_lower_bound_log(double big_t, double eps) {
  if (big_t == 0.0) throw std::invalid_argument("divergence bound: T must be nonzero");
  if (!(eps >= 0.0 && eps < 1.0)) throw RegimeError("divergence bound: eps must lie in [0, 1)");
  // ln[ pi^{-1/2} (1-eps^2)^{-1/2} (∫_0^1 e^{a t^2} dt)^2 ],  a = (1+e^2)T^2 / (2(1-e^2)),
  // with the integral evaluated as e^a ∫_0^1 e^{a(t^2-1)} dt to stay in range.
  const double e2 = eps * eps;
  const double a = (1.0 + e2) * big_t * big_t / (2.0 * (1.0 - e2));
  const double damped =
      quad::composite_real([a](double t) { return std::exp(a * (t * t - 1.0)); }, 0.0, 1.0, 64);
  return -0.5 * std::log(kPi) - 0.5 * std::log(1.0 - e2) + 2.0 * (a + std::log(damped));
}

double divergence_tail_allowance(double big_t, double eps, int n_trunc) {
  if (!(eps >= 0.0 && eps < 1.0)) throw RegimeError("divergence allowance: eps must lie in [0, 1)");
  // sum_{n>N} eps^n U_n with the coefficient bound
  // |∫_{[0,iT]} h_n| <= |T| pi^{-1/4} e^{T^2/2} e^{sqrt(2n)|T|}.
  const double at = std::abs(big_t);
  const double lead_log = 2.0 * (std::log(at) - 0.25 * std::log(kPi) + 0.5 * at * at);
  double acc = 0.0;
  const double log_eps = eps == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(eps);
  if (eps == 0.0) return 0.0;
  for (int n = n_trunc + 1; n < n_trunc + 2000000; ++n) {
    const double term_log = lead_log + n * log_eps + 2.0 * std::sqrt(2.0 * n) * at;
    const double term = std::exp(term_log);
    acc += term;
    if (term < 1e-18 * std::max(acc, 1.0) && n > n_trunc + 8) break;
  }
  return acc;
}

std::vector<DivergenceRow> divergence_scan(const hermite::Evaluator& ev, double big_t,
                                           std::span<const double> eps_grid, int n_trunc) {
  if (big_t == 0.0) throw std::invalid_argument("divergence_scan: T must be nonzero");
  if (n_trunc < 0) throw std::invalid_argument("divergence_scan: truncation must be >= 0");
  const std::vector<Complex> c =
      ev.segment_integrals(n_trunc, {0, 0}, {0, big_t}, 1e-10);
  std::vector<double> sq(c.size());
  for (std::size_t n = 0; n < c.size(); ++n) sq[n] = std::norm(c[n]);

  std::vector<DivergenceRow> rows;
  rows.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    if (!(eps >= 0.0 && eps < 1.0))
      throw RegimeError("divergence_scan: eps grid must lie in [0, 1)");
    DivergenceRow row;
    row.eps = eps;
    double power = 1.0;
    double acc = 0.0;
    for (std::size_t n = 0; n < sq.size(); ++n) {
      acc += power * sq[n];
      power *= eps;
    }
    row.partial_sum = acc;
    row.lower_bound_log = divergence_lower_bound_log(big_t, eps);
    row.allowance = divergence_tail_allowance(big_t, eps, n_trunc);
    // certificate: the closed-form lower bound cannot exceed the truncated sum
    // by more than the tail allowance
    const double s_plus_allowance_log =
        std::log(std::max(row.partial_sum + row.allowance, 1e-300));
    row.certified = row.lower_bound_log <= s_plus_allowance_log + 1e-9;
    rows.push_back(row);
  }
  return rows;
}

MehlerReport mehler_consistency(const hermite::Evaluator& ev, double eps,
                                std::span<const std::pair<Complex, Complex>> grid, int n_terms) {
  if (!(std::abs(eps) < 1.0)) throw RegimeError("mehler_consistency: require |eps| < 1");
  // On the real axis the damped series converges for every |eps| < 1; the
  // e^{2|z|} margin is only needed once arguments leave the axis.
  double max_imag = 0.0;
  for (const auto& [u, v] : grid)
    max_imag = std::max({max_imag, std::abs(u.imag()), std::abs(v.imag())});
  if (!(std::abs(eps) * std::exp(2.0 * max_imag) < 1.0))
    throw RegimeError("mehler_consistency: off-axis grid outside the damping regime");

  MehlerReport rep;
  for (const auto& [u, v] : grid) {
    const Complex series = hermite::mehler_series(ev, eps, u, v, n_terms);
    const Complex kernel = hermite::mehler_kernel(eps, u, v);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(series - kernel));
  }

  // identity probe: z z̄ ∬ kernel(eps, zt, conj(z)t') dt dt' = sum eps^n |∫_{[0,z]} h_n|^2;
  // the segment [0,z] needs the full |eps| e^{2|z|} < 1 margin
  for (const auto& [u, v] : grid) {
    if (rep.probes >= 5) break;
    const Complex z = u;
    if (z == Complex{0, 0}) continue;
    if (!(std::abs(eps) * std::exp(2.0 * std::abs(z)) < 1.0)) continue;
    ++rep.probes;
    const std::vector<Complex> c = ev.segment_integrals(n_terms, {0, 0}, z, 1e-10);
    double series = 0.0;
    double power = 1.0;
    for (const Complex& cn : c) {
      series += power * std::norm(cn);
      power *= eps;
    }
    const Complex zbar = std::conj(z);
    const Complex dbl =
        z * zbar *
        quad::tensor_unit_square(
            [&](double s, double t) { return hermite::mehler_kernel(eps, z * s, zbar * t); }, 64);
    rep.double_integral_dev = std::max(rep.double_integral_dev, std::abs(dbl - series));
  }
  return rep;
}

}  // namespace cwn::diag
