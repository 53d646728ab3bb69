#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "cwn/hermite.hpp"

namespace cwn::diag {

using Complex = std::complex<double>;

struct ParsevalRow {
  int n = 0;
  double partial_sum = 0.0;  // S_N = sum_{n<=N} (∫_0^t h_n)^2
};
std::vector<ParsevalRow> parseval_scan(const hermite::Evaluator& ev, double t,
                                       std::span<const int> n_list);

struct DivergenceRow {
  double eps = 0.0;
  double partial_sum = 0.0;      // S(eps) = sum_{n<=N} eps^n |∫_{[0,iT]} h_n|^2
  double lower_bound_log = 0.0;  // ln of the closed-form divergence lower bound
  double allowance = 0.0;        // upper bound on the truncated tail sum_{n>N}
  bool certified = false;        // S(eps) + allowance >= lower bound
};
std::vector<DivergenceRow> divergence_scan(const hermite::Evaluator& ev, double big_t,
                                           std::span<const double> eps_grid, int n_trunc);
double divergence_lower_bound_log(double big_t, double eps);
double divergence_tail_allowance(double big_t, double eps, int n_trunc);

struct MehlerReport {
  double max_deviation = 0.0;          // max over grid |series - kernel|
  double double_integral_dev = 0.0;    // ∬ kernel vs sum eps^n |∫ h_n|^2, worst z probed
  int probes = 0;                      // number of z values used for the identity check
};
// Grid entries are (u,v) kernel arguments; requires |eps| e^{2 max|z|} < 1.
MehlerReport mehler_consistency(const hermite::Evaluator& ev, double eps,
                                std::span<const std::pair<Complex, Complex>> grid, int n_terms);

}  // namespace cwn::diag
