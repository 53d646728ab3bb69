#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cwn/chaos_vector.hpp"
#include "cwn/processes.hpp"

namespace cwn::contour {

using Complex = std::complex<double>;

// One continuously differentiable piece, parametrized on [0,1].
struct Piece {
  enum class Kind { segment, arc };
  Kind kind = Kind::segment;
  Complex a{0, 0}, b{0, 0};       // segment endpoints
  Complex center{0, 0};           // arc data
  double radius = 0.0, theta0 = 0.0, theta1 = 0.0;

  Complex at(double t) const;
  Complex deriv(double t) const;
  double max_abs() const;  // bound on max_t |gamma(t)|
};

// Piecewise-smooth path built from catalog pieces.
class Contour {
 public:
  static Contour segment(Complex a, Complex b);
  static Contour arc(Complex center, double radius, double theta0, double theta1);
  static Contour polyline(const std::vector<Complex>& points);

  Contour reversed() const;
  Contour then(const Contour& next) const;  // concatenation
  double max_abs() const;
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::string id() const;

 private:
  std::vector<Piece> pieces_;
};

// Integrand catalog: constant chaos vector, or scale * B_{z,eps} with eps = 1
// giving plain scale * B_z.
class IntegrandField {
 public:
  static IntegrandField constant(chaos::ChaosVector v);
  static IntegrandField brownian(double scale = 1.0, double eps = 1.0);

  chaos::ChaosVector eval(const hermite::Evaluator& ev, Complex z,
                          const proc::TruncationPlan& plan) const;
  // Values along ordered path points; Brownian coefficients accumulate through
  // chord integrals so long node lists stay cheap and consistent.
  std::vector<chaos::ChaosVector> eval_path(const hermite::Evaluator& ev,
                                            std::span<const Complex> points,
                                            const proc::TruncationPlan& plan) const;
  std::string name() const;
  int max_order_hint() const;  // 1 for process fields, support order for constants

 private:
  std::optional<chaos::ChaosVector> constant_;
  double scale_ = 1.0;
  double eps_ = 1.0;
};

struct LevelTrace {
  int piece = 0;
  long panels = 0;
  double cauchy_delta = 0.0;  // ||S_{this level} - S_{previous}||_{-p}
  double sum_norm = 0.0;      // ||S||_{-p} at this level
};

struct IntegralReport {
  chaos::ChaosVector value;
  int p = 0;
  int truncation = 0;
  int refinement_base = 2;
  long panels_total = 0;
  std::vector<LevelTrace> levels;
  double max_integrand_norm = 0.0;  // max over visited nodes of ||f(z) star N_z gamma'||_{-p}
  std::string contour_id;
  bool converged = false;
};

// Riemann-midpoint construction of ∫_C f(z) star N_z dz with dyadic (or
// base-k) panel refinement, stopped by the graded-norm Cauchy criterion
// ||S_{kM} - S_M||_{-p} <= tol per piece. noise_eps damps the white-noise
// factor to N_{z,eps}; eps = 1 is the undamped case.
IntegralReport integrate_wick(const hermite::Evaluator& ev, const IntegrandField& f,
                              const Contour& c, const proc::TruncationPlan& plan, double tol,
                              double noise_eps = 1.0, int refinement_base = 2,
                              int max_level = 20);

struct ItoRealReport {
  double residual_norm = 0.0;     // ||B_t^2 - (∫_0^t 2B_u star N_u du + t)||_{-p}
  double antisymmetry_max = 0.0;  // max_{n,m} |A_{n,m} + A_{m,n}|
  double parseval_gap = 0.0;      // |sum_{n<=N} (∫_0^t h_n)^2 - t|
  double quadrature_estimate = 0.0;
};
ItoRealReport ito_check_real(const hermite::Evaluator& ev, double t,
                             const proc::TruncationPlan& plan, double tol);

struct ItoRegularizedReport {
  double residual_norm = 0.0;
  Complex correction_series{0, 0};  // sum_{n<=N} eps^n (∫_{[0,z]} h_n)^2
  Complex correction_closed{0, 0};  // z^2 ∬ mehler_kernel(eps, zt, zt') dt dt'
  double correction_deviation = 0.0;
};
ItoRegularizedReport ito_check_regularized(const hermite::Evaluator& ev, Complex z, double eps,
                                           const proc::TruncationPlan& plan, double tol);

}  // namespace cwn::contour
