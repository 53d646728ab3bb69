#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace cwn::hermite {

using Complex = std::complex<double>;

// Sign convention for the normalized Hermite functions h_n.
//
// `standard` seeds h_0(z) = pi^{-1/4} e^{-z^2/2} and builds upward with
//   h_{n+1} = (z h_n - sqrt(n/2) h_{n-1}) sqrt(2/(n+1)),
// so the classical relations
//   h_n'(z)  = -z h_n(z) + sqrt(2n) h_{n-1}(z)
//   h_n'(z)  =  z h_n(z) - sqrt(2(n+1)) h_{n+1}(z)
//   z h_n(z) = sqrt(n/2) h_{n-1}(z) + sqrt((n+1)/2) h_{n+1}(z)
// hold verbatim. `alternating_signed` multiplies degree n by (-1)^n, which
// flips the sign of every odd degree and of the sqrt terms in the relations
// above. Magnitude bounds and all n-diagonal products are unaffected.
enum class Convention { standard, alternating_signed };

struct Config {
  int n_max = 5000;        // degree cap
  double radius = 8.0;     // evaluation disk |z| <= radius
  double quad_tol = 1e-10; // default antiderivative tolerance
  Convention convention = Convention::standard;

  void validate() const;   // throws std::invalid_argument
};

// Envelope constants for the complex-plane growth bounds.
struct BoundEnvelope {
  double c_z;  // pointwise constant c(z) = (2e^3/pi^2)^{1/4} e^{|z|^2/2 + x^2 + |y|}
  double c_R;  // max of c(z) over the closed disk of radius R
  double k_n;  // cosh-form polynomial prefactor K_n, evaluated in log domain
};

// One inequality certificate at (n, z). Margins are log-domain slack
// (log rhs - log lhs); +inf where the function value vanishes exactly.
struct BoundReport {
  bool zeta_ok = false;        // |h_n(z)|  <= c_z e^{2n|y|}
  bool zeta_prime_ok = false;  // |h_n'(z)| <= c_z (1+sqrt(2n)) e^{2n|y|}
  bool em_ok = false;          // |H_n(z)|  <= 2^{n/2} sqrt(n!) e^{sqrt(2n)|z|}
  bool hille_ok = false;       // |H_n(z)|  <= n! e^{R|z| + n/2} / R^n
  double zeta_margin = 0.0;
  double zeta_prime_margin = 0.0;
  double em_margin = 0.0;
  double hille_margin = 0.0;
  bool all() const { return zeta_ok && zeta_prime_ok && em_ok && hille_ok; }
};

// Value split as mantissa * exp(log_scale); avoids overflow when 2n|y| is
// beyond double range.
struct Scaled {
  Complex mantissa{0.0, 0.0};
  double log_scale = 0.0;
  double log_abs() const;
};

double c_envelope_log(Complex z);                         // ln c_z
double disk_envelope_log(double radius);                  // ln C_R (exact boundary max)
double disk_envelope_log_sampled(double radius, int samples);
double kn_log(int n);
double ineq_envelope_log(int n, Complex z);               // ln(c_z e^{2n|y|})
double factorial_envelope_log(int n, Complex z, double radius);  // disk-bound route, sqrt(n!) growth
bool stirling_sandwich_holds(int n);

class Evaluator {
 public:
  Evaluator();
  explicit Evaluator(Config cfg);

  const Config& config() const { return cfg_; }

  // Normalized Hermite function of degree n at z.
  Complex value(int n, Complex z) const;
  // First derivative, via h_n' = -z h_n + sqrt(2n) h_{n-1}.
  Complex derivative(int n, Complex z) const;
  // All degrees 0..n in one upward pass.
  std::vector<Complex> values(int n, Complex z) const;
  std::vector<Scaled> values_scaled(int n, Complex z) const;
  Scaled value_scaled(int n, Complex z) const;
  Scaled derivative_scaled(int n, Complex z) const;

  // ∫_{[0,z]} h_n(u) du along the straight segment (path-free: h_n entire).
  Complex antiderivative(int n, Complex z, double tol) const;
  Complex antiderivative(int n, Complex z) const;
  Complex segment_integral(int n, Complex a, Complex b, double tol) const;
  // ∫_{[a,b]} h_n(u) du for all n = 0..n_max at once.
  std::vector<Complex> segment_integrals(int n_max, Complex a, Complex b, double tol) const;
  std::vector<Complex> segment_integrals_weighted(
      int n_max, Complex a, Complex b, double tol,
      const std::function<Complex(Complex)>& factor) const;

  BoundEnvelope envelope(Complex z, double radius, int n) const;
  BoundReport check_bounds(int n, Complex z) const;

 private:
  void require_degree(int n) const;
  void require_in_disk(Complex z) const;
  void values_into(int n, Complex z, Complex* out) const;
  std::vector<Complex> composite_segment(int n_max, Complex a, Complex b, int panels,
                                         const std::function<Complex(Complex)>* factor) const;

  Config cfg_;
};

// Closed form of sum_n eps^n h_n(u) h_n(v) for |eps| < 1:
//   (pi (1-eps^2))^{-1/2} exp(-[(1+eps^2)(u^2+v^2) - 4 u v eps] / [2(1-eps^2)]).
Complex mehler_kernel(double eps, Complex u, Complex v);
// Truncated series sum_{n<=n_terms} eps^n h_n(u) h_n(v).
Complex mehler_series(const Evaluator& ev, double eps, Complex u, Complex v, int n_terms);

}  // namespace cwn::hermite
