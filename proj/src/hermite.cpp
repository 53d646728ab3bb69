#include "cwn/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cwn/constants.hpp"
#include "cwn/errors.hpp"
#include "cwn/quadrature.hpp"

namespace cwn::hermite {

namespace {

constexpr double kQuarterRoot = 0.75112554446494248286;  // pi^{-1/4}
constexpr double kOverflowCap = 1e290;
constexpr double kRescaleAt = 1e100;
constexpr double kInf = std::numeric_limits<double>::infinity();

// ln (2 e^3 / pi^2)^{1/4}
double envelope_prefactor_log() { return 0.25 * (kLn2 + 3.0 - 2.0 * std::log(kPi)); }

double sign_for(Convention c, int n) {
  return (c == Convention::alternating_signed && (n & 1)) ? -1.0 : 1.0;
}

}  // namespace

void Config::validate() const {
  if (n_max < 1) throw std::invalid_argument("hermite::Config: n_max must be >= 1");
  if (!(radius > 0.0) || radius > 8.0)
    throw std::invalid_argument("hermite::Config: radius must lie in (0, 8]");
  if (!(quad_tol > 0.0) || quad_tol > 1e-3)
    throw std::invalid_argument("hermite::Config: quad_tol must lie in (0, 1e-3]");
}

double Scaled::log_abs() const {
  const double m = std::abs(mantissa);
  return m == 0.0 ? -kInf : std::log(m) + log_scale;
}

double c_envelope_log(Complex z) {
  const double x = z.real(), y = z.imag();
  return envelope_prefactor_log() + 0.5 * std::norm(z) + x * x + std::abs(y);
}

double disk_envelope_log(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("disk_envelope_log: radius must be > 0");
  // max over |z| = R of x^2 + |y| is R^2 + 1/4 once R >= 1/2 (|y| = 1/2), and
  // R at the top of the circle otherwise; c_z increases radially, so the disk
  // maximum sits on the boundary.
  const double peak = radius >= 0.5 ? radius * radius + 0.25 : radius;
  return envelope_prefactor_log() + 0.5 * radius * radius + peak;
}

double disk_envelope_log_sampled(double radius, int samples) {
  if (!(radius > 0.0)) throw std::invalid_argument("disk_envelope_log_sampled: radius must be > 0");
  if (samples < 4) throw std::invalid_argument("disk_envelope_log_sampled: need >= 4 samples");
  double best = -kInf;
  for (int i = 0; i < samples; ++i) {
    const double th = 2.0 * kPi * i / samples;
    best = std::max(best, c_envelope_log(radius * Complex{std::cos(th), std::sin(th)}));
  }
  return best;
}

double kn_log(int n) {
  if (n < 0) throw std::invalid_argument("kn_log: n must be >= 0");
  const double two_n_plus_1 = 2.0 * n + 1.0;
  return 0.25 * std::log(2.0 * std::exp(1.0) / kPi) + 0.25 * std::lgamma(2.0 * n + 1.0) -
         (0.5 * n + 0.25) * std::log(two_n_plus_1) + 0.5 * n;
}

double ineq_envelope_log(int n, Complex z) {
  return c_envelope_log(z) + 2.0 * n * std::abs(z.imag());
}

double factorial_envelope_log(int n, Complex z, double radius) {
  if (!(radius >= std::abs(z)))
    throw std::invalid_argument("factorial_envelope_log: need |z| <= radius");
  return 0.5 * radius * radius + radius * std::abs(z) - 0.25 * std::log(kPi) +
         n * (0.5 - 0.5 * kLn2 - std::log(radius)) + 0.5 * std::lgamma(n + 1.0);
}

bool stirling_sandwich_holds(int n) {
  if (n < 1) throw std::invalid_argument("stirling_sandwich_holds: n must be >= 1");
  const double base = 0.5 * std::log(2.0 * kPi) + (n + 0.5) * std::log(double(n)) - n;
  const double lo = base + 1.0 / (12.0 * n + 1.0);
  const double hi = base + 1.0 / (12.0 * n);
  const double lg = std::lgamma(n + 1.0);
  return lo <= lg && lg <= hi;
}

Evaluator::Evaluator() { cfg_.validate(); }

Evaluator::Evaluator(Config cfg) : cfg_(cfg) { cfg_.validate(); }

void Evaluator::require_degree(int n) const {
  if (n < 0 || n > cfg_.n_max)
    throw DegreeOverflowError("hermite: degree " + std::to_string(n) + " exceeds cap " +
                              std::to_string(cfg_.n_max));
}

void Evaluator::require_in_disk(Complex z) const {
  // the radius caps complex arguments, where the Gaussian factor grows like
  // e^{|z|^2/2}; on the real axis the functions decay and any x is safe
  if (z.imag() == 0.0) return;
  if (std::abs(z) > cfg_.radius * (1.0 + 1e-12))
    throw std::domain_error("hermite: |z| exceeds the configured radius");
}

// Upward pass writing h_0..h_n into out. Magnitudes are monitored against the
// pointwise envelope (with head-room factor 1e6) and a hard overflow cap.
void Evaluator::values_into(int n, Complex z, Complex* out) const {
  const double abs_y = std::abs(z.imag());
  const Complex h0 = kQuarterRoot * std::exp(-0.5 * z * z);
  out[0] = h0;
  if (n >= 1) out[1] = std::sqrt(2.0) * z * h0;
  double guard = std::exp(std::min(std::log(kOverflowCap),
                                   c_envelope_log(z) + 2.0 * abs_y + std::log(1e6)));
  const double guard_step = std::exp(std::min(700.0, 2.0 * abs_y));
  for (int k = 1; k < n; ++k) {
    out[k + 1] = (z * out[k] - std::sqrt(0.5 * k) * out[k - 1]) * std::sqrt(2.0 / (k + 1.0));
    guard = std::min(guard * guard_step, kOverflowCap);
    if (std::abs(out[k + 1]) > guard)
      throw OverflowGuardError("hermite: recurrence magnitude exceeded the overflow guard");
  }
  if (cfg_.convention == Convention::alternating_signed)
    for (int k = 1; k <= n; k += 2) out[k] = -out[k];
}

std::vector<Complex> Evaluator::values(int n, Complex z) const {
  require_degree(n);
  require_in_disk(z);
  std::vector<Complex> out(std::size_t(n) + 1);
  values_into(n, z, out.data());
  return out;
}

Complex Evaluator::value(int n, Complex z) const {
  require_degree(n);
  require_in_disk(z);
  const double abs_y = std::abs(z.imag());
  Complex prev{0.0, 0.0};
  Complex cur = kQuarterRoot * std::exp(-0.5 * z * z);
  double guard = std::exp(std::min(std::log(kOverflowCap),
                                   c_envelope_log(z) + 2.0 * abs_y + std::log(1e6)));
  const double guard_step = std::exp(std::min(700.0, 2.0 * abs_y));
  for (int k = 0; k < n; ++k) {
    const Complex next = (z * cur - std::sqrt(0.5 * k) * prev) * std::sqrt(2.0 / (k + 1.0));
    prev = cur;
    cur = next;
    guard = std::min(guard * guard_step, kOverflowCap);
    if (std::abs(cur) > guard)
      throw OverflowGuardError("hermite: recurrence magnitude exceeded the overflow guard");
  }
  return sign_for(cfg_.convention, n) * cur;
}

Complex Evaluator::derivative(int n, Complex z) const {
  require_degree(n);
  require_in_disk(z);
  if (n == 0) return -z * value(0, z);
  std::vector<Complex> v = values(n, z);
  // signs already follow the configured convention; the relation transforms
  // covariantly under the alternating flip.
  const double flip = (cfg_.convention == Convention::alternating_signed) ? -1.0 : 1.0;
  return -z * v[n] + flip * std::sqrt(2.0 * n) * v[n - 1];
}

std::vector<Scaled> Evaluator::values_scaled(int n, Complex z) const {
  require_degree(n);
  require_in_disk(z);
  std::vector<Scaled> out(std::size_t(n) + 1);
  Complex prev{0.0, 0.0};
  Complex cur = kQuarterRoot * std::exp(-0.5 * z * z);
  double log_scale = 0.0;
  out[0] = {cur, 0.0};
  for (int k = 0; k < n; ++k) {
    Complex next = (z * cur - std::sqrt(0.5 * k) * prev) * std::sqrt(2.0 / (k + 1.0));
    prev = cur;
    cur = next;
    const double m = std::abs(cur);
    if (m > kRescaleAt) {
      const double f = std::log(m);
      const double s = std::exp(-f);
      cur *= s;
      prev *= s;
      log_scale += f;
    }
    out[k + 1] = {cur, log_scale};
  }
  if (cfg_.convention == Convention::alternating_signed)
    for (int k = 1; k <= n; k += 2) out[k].mantissa = -out[k].mantissa;
  return out;
}

Scaled Evaluator::value_scaled(int n, Complex z) const { return values_scaled(n, z)[n]; }

Scaled Evaluator::derivative_scaled(int n, Complex z) const {
  require_degree(n);
  require_in_disk(z);
  if (n == 0) {
    const Scaled s = value_scaled(0, z);
    return {-z * s.mantissa, s.log_scale};
  }
  std::vector<Scaled> v = values_scaled(n, z);
  // rebase h_{n-1} onto h_n's scale before combining
  const Complex lower = v[n - 1].mantissa * std::exp(v[n - 1].log_scale - v[n].log_scale);
  const double flip = (cfg_.convention == Convention::alternating_signed) ? -1.0 : 1.0;
  return {-z * v[n].mantissa + flip * std::sqrt(2.0 * n) * lower, v[n].log_scale};
}

std::vector<Complex> Evaluator::composite_segment(
    int n_max, Complex a, Complex b, int panels,
    const std::function<Complex(Complex)>* factor) const {
  const quad::GaussLegendre& g = quad::gauss_legendre(15);
  const Complex span = b - a;
  std::vector<Complex> acc(std::size_t(n_max) + 1, Complex{0, 0});
  std::vector<Complex> buf(std::size_t(n_max) + 1);
  for (int p = 0; p < panels; ++p) {
    const double t0 = double(p) / panels;
    const double t1 = double(p + 1) / panels;
    const double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double t = mid + half * g.nodes[i];
      const Complex u = a + t * span;
      values_into(n_max, u, buf.data());
      Complex w = g.weights[i] * half * span;
      if (factor) w *= (*factor)(u);
      for (int n = 0; n <= n_max; ++n) acc[std::size_t(n)] += w * buf[std::size_t(n)];
    }
  }
  return acc;
}

std::vector<Complex> Evaluator::segment_integrals_weighted(
    int n_max, Complex a, Complex b, double tol,
    const std::function<Complex(Complex)>& factor) const {
  require_degree(n_max);
  require_in_disk(a);
  require_in_disk(b);
  if (!(tol > 0.0)) throw std::invalid_argument("segment_integrals: tol must be > 0");
  if (a == b) return std::vector<Complex>(std::size_t(n_max) + 1, Complex{0, 0});

  const std::function<Complex(Complex)>* fp = factor ? &factor : nullptr;
  // initial panel count resolves the sqrt(2n+1)-frequency oscillation
  const double len = std::abs(b - a);
  int panels = std::max(2, int(std::ceil(len * std::sqrt(2.0 * n_max + 3.0) / 5.0)));
  std::vector<Complex> prev = composite_segment(n_max, a, b, panels, fp);
  for (int round = 0; round < 14; ++round) {
    panels *= 2;
    std::vector<Complex> cur = composite_segment(n_max, a, b, panels, fp);
    // per-degree criterion, absolute for O(1) values and relative once the
    // integrals climb past double/tol reach (imaginary-axis growth)
    bool ok = true;
    for (std::size_t i = 0; i < cur.size() && ok; ++i)
      ok = std::abs(cur[i] - prev[i]) <= 0.5 * tol * (1.0 + std::abs(cur[i]));
    if (ok) return cur;
    prev = std::move(cur);
  }
  throw ToleranceError("segment_integrals: dyadic refinement exhausted before reaching tol");
}

std::vector<Complex> Evaluator::segment_integrals(int n_max, Complex a, Complex b,
                                                  double tol) const {
  static const std::function<Complex(Complex)> no_factor;
  return segment_integrals_weighted(n_max, a, b, tol, no_factor);
}

Complex Evaluator::segment_integral(int n, Complex a, Complex b, double tol) const {
  return segment_integrals(n, a, b, tol)[std::size_t(n)];
}

Complex Evaluator::antiderivative(int n, Complex z, double tol) const {
  return segment_integral(n, Complex{0, 0}, z, tol);
}

Complex Evaluator::antiderivative(int n, Complex z) const {
  return antiderivative(n, z, cfg_.quad_tol);
}

BoundEnvelope Evaluator::envelope(Complex z, double radius, int n) const {
  require_degree(n);
  if (!(radius > 0.0)) throw std::invalid_argument("envelope: radius must be > 0");
  if (std::abs(z) > radius * (1.0 + 1e-12))
    throw std::domain_error("envelope: need |z| <= radius");
  return {std::exp(c_envelope_log(z)), std::exp(disk_envelope_log(radius)),
          std::exp(kn_log(n))};
}

BoundReport Evaluator::check_bounds(int n, Complex z) const {
  if (n < 1) throw DegreeOverflowError("check_bounds: degree must be >= 1");
  require_degree(n);
  require_in_disk(z);

  std::vector<Scaled> v = values_scaled(n, z);
  const double log_h = v[std::size_t(n)].log_abs();
  const Complex lower =
      v[std::size_t(n) - 1].mantissa * std::exp(v[std::size_t(n) - 1].log_scale - v[std::size_t(n)].log_scale);
  const double flip = (cfg_.convention == Convention::alternating_signed) ? -1.0 : 1.0;
  const Complex dm = -z * v[std::size_t(n)].mantissa + flip * std::sqrt(2.0 * n) * lower;
  const double log_hp =
      std::abs(dm) == 0.0 ? -kInf : std::log(std::abs(dm)) + v[std::size_t(n)].log_scale;
  // |H_n| from |h_n|: H_n = pi^{1/4} 2^{n/2} sqrt(n!) e^{z^2/2} h_n
  const double log_poly =
      log_h + 0.25 * std::log(kPi) + 0.5 * n * kLn2 + 0.5 * std::lgamma(n + 1.0) +
      0.5 * (z * z).real();

  const double abs_y = std::abs(z.imag());
  const double abs_z = std::abs(z);
  const double radius = cfg_.radius;

  BoundReport r;
  const double rhs_zeta = c_envelope_log(z) + 2.0 * n * abs_y;
  const double rhs_zp = c_envelope_log(z) + std::log1p(std::sqrt(2.0 * n)) + 2.0 * n * abs_y;
  const double rhs_em = 0.5 * n * kLn2 + 0.5 * std::lgamma(n + 1.0) + std::sqrt(2.0 * n) * abs_z;
  const double rhs_hille =
      std::lgamma(n + 1.0) + radius * abs_z + 0.5 * n - n * std::log(radius);
  r.zeta_margin = rhs_zeta - log_h;
  r.zeta_prime_margin = rhs_zp - log_hp;
  r.em_margin = rhs_em - log_poly;
  r.hille_margin = rhs_hille - log_poly;
  r.zeta_ok = r.zeta_margin >= 0.0;
  r.zeta_prime_ok = r.zeta_prime_margin >= 0.0;
  r.em_ok = r.em_margin >= 0.0;
  r.hille_ok = r.hille_margin >= 0.0;
  return r;
}

Complex mehler_kernel(double eps, Complex u, Complex v) {
  if (!(std::abs(eps) < 1.0)) throw RegimeError("mehler_kernel: require |eps| < 1");
  const double e2 = eps * eps;
  const Complex num = (1.0 + e2) * (u * u + v * v) - 4.0 * u * v * eps;
  return std::exp(-num / (2.0 * (1.0 - e2))) / std::sqrt(kPi * (1.0 - e2));
}

Complex mehler_series(const Evaluator& ev, double eps, Complex u, Complex v, int n_terms) {
  if (!(std::abs(eps) < 1.0)) throw RegimeError("mehler_series: require |eps| < 1");
  if (n_terms < 0) throw std::invalid_argument("mehler_series: n_terms must be >= 0");
  const std::vector<Complex> a = ev.values(n_terms, u);
  const std::vector<Complex> b = ev.values(n_terms, v);
  Complex acc{0, 0};
  double power = 1.0;
  for (int n = 0; n <= n_terms; ++n) {
    acc += power * a[std::size_t(n)] * b[std::size_t(n)];
    power *= eps;
  }
  return acc;
}

}  // namespace cwn::hermite
