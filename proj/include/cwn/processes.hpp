#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cwn/chaos_vector.hpp"
#include "cwn/hermite.hpp"

namespace cwn::proc {

using Complex = std::complex<double>;

// Truncation / graded-norm plan for a disk of radius R: the order p makes the
// geometric series sum_n e^{4Rn} 2^{-(n+1)p} converge with margin, and the
// truncation level N pushes the C_R-weighted tail below tol^2.
struct TruncationPlan {
  double radius = 1.0;
  int p = 6;
  int truncation = 64;     // highest retained degree N
  double tail_bound = 0.0; // C_R^2 sum_{n>N} e^{4Rn} 2^{-(n+1)p}
  double tol = 1e-6;

  static TruncationPlan make(double radius, double tol);
  TruncationPlan with_truncation(int n) const;  // override N, tail recomputed
  double tail_series(int n_from_exclusive) const;
  double geometric_sum(double extra_factor_log = 0.0) const;  // sum_{n<=N} e^{(4R+extra)n} 2^{-(n+1)p}
};

// Weight functions m(u) with entire square roots, used for the generalized
// covariance int_0^{min(t,s)} m(u) du.
struct AnalyticWeight {
  enum class Kind { polynomial, exp_plus, exp_minus };  // (1+u^2)^{2q}, e^{+u^{2q}}, e^{-u^{2q}}
  Kind kind = Kind::polynomial;
  int q = 1;

  Complex sqrt_value(Complex u) const;  // (1+u^2)^q, e^{±u^{2q}/2}
  double value(double u) const;
  std::string name() const;
  static AnalyticWeight parse(std::string_view text);  // "poly:q" | "expp:q" | "expm:q"
};

struct ProcessSpec {
  enum class Kind { brownian, white_noise, weighted, regularized };
  Kind kind = Kind::brownian;
  AnalyticWeight weight{};  // weighted only
  double eps = 0.0;         // regularized only, in [0,1)
};

// Order-1 vector with values[n] at the unit multi-index e_n.
chaos::ChaosVector order1_vector(std::span<const Complex> values);

// Order-1 chaos coefficients, degree n at the unit multi-index e_n, n <= N.
chaos::ChaosVector brownian_coeffs(const hermite::Evaluator& ev, Complex z,
                                   const TruncationPlan& plan);
chaos::ChaosVector white_noise_coeffs(const hermite::Evaluator& ev, Complex z,
                                      const TruncationPlan& plan);
// eps^{n/2}-damped white noise; eps = 1 reproduces white_noise_coeffs.
chaos::ChaosVector white_noise_coeffs_regularized(const hermite::Evaluator& ev, Complex z,
                                                  double eps, const TruncationPlan& plan);
chaos::ChaosVector weighted_coeffs(const hermite::Evaluator& ev, Complex z,
                                   const AnalyticWeight& m, const TruncationPlan& plan);
chaos::ChaosVector regularized_coeffs(const hermite::Evaluator& ev, Complex z, double eps,
                                      const TruncationPlan& plan);
chaos::ChaosVector build(const hermite::Evaluator& ev, const ProcessSpec& spec, Complex z,
                         const TruncationPlan& plan);

struct AnalyticityReport {
  std::vector<double> h_values;
  // residuals[d][i] = ||(B_{z0+dir_d h_i} - B_{z0})/(dir_d h_i) - N_{z0}||_{-p}
  std::array<std::vector<double>, 4> residuals;
  std::array<double, 4> per_direction_order{};
  double observed_order = 0.0;          // mean of per-direction slopes
  double direction_spread = 0.0;        // max over direction pairs at smallest h
  double residual_bound = 0.0;          // |h| coefficient from the envelope series
};
inline constexpr std::array<Complex, 4> kDirections = {
    Complex{1, 0}, Complex{-1, 0}, Complex{0, 1}, Complex{0, -1}};

AnalyticityReport analyticity_check(const hermite::Evaluator& ev, Complex z0,
                                    std::span<const double> h_values,
                                    const TruncationPlan& plan);

struct ContinuityReport {
  double distance = 0.0;  // ||B_{z1} - B_{z2}||_{-p}
  double bound = 0.0;     // |z1-z2| R C_R (sum e^{4Rn} 2^{-(n+1)p})^{1/2} + 2 tol
  bool within = false;
};
ContinuityReport continuity_check(const hermite::Evaluator& ev, Complex z1, Complex z2,
                                  const TruncationPlan& plan);

// (B_z ⊗ conj(B_w)) f = <conj(B_w), f> B_z with the duality pairing.
chaos::ChaosVector covariance_operator(const hermite::Evaluator& ev, Complex z, Complex w,
                                       const chaos::ChaosVector& f, const TruncationPlan& plan);

struct TrajectoryTable {
  std::vector<Complex> grid;
  int n_samples = 0;
  std::vector<Complex> values;  // sample-major: values[s * grid.size() + g]
  Complex at(int sample, std::size_t g) const { return values[std::size_t(sample) * grid.size() + g]; }
  std::string to_csv() const;   // header re_z,im_z,sample_id,re_B,im_B
};

TrajectoryTable sample_paths(const hermite::Evaluator& ev, std::uint64_t seed,
                             std::span<const Complex> grid, const TruncationPlan& plan,
                             int n_samples);

}  // namespace cwn::proc
