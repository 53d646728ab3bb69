// Prints the reference values frozen into the test suites, each computed by
// the independent routines in oracles.hpp at two resolutions so convergence is
// visible. Not registered with ctest; run manually when re-deriving constants.

#include <cmath>
#include <cstdio>

#include "oracles.hpp"

int main() {
  std::printf("pi^{-1/4}              = %.17Lg\n", std::pow(oracle::kPiL, -0.25L));
  std::printf("zeta_1(1) closed       = %.17Lg\n",
              std::sqrt(2.0L) * std::pow(oracle::kPiL, -0.25L) * std::exp(-0.5L));
  std::printf("int_0^1 zeta_0 (erf)   = %.17Lg\n",
              std::pow(oracle::kPiL, -0.25L) * std::sqrt(oracle::kPiL / 2.0L) *
                  (long double)std::erf(1.0 / std::sqrt(2.0)));
  std::printf("c_0 envelope           = %.17Lg\n",
              std::pow(2.0L * std::exp(3.0L) / (oracle::kPiL * oracle::kPiL), 0.25L));
  std::printf("K_1                    = %.17Lg\n",
              std::pow(2.0L * std::exp(1.0L) / oracle::kPiL, 0.25L) * std::pow(2.0L, 0.25L) *
                  std::pow(3.0L, -0.75L) * std::exp(0.5L));
  std::printf("mehler(0.5,0,0)        = %.17Lg\n", 1.0L / std::sqrt(oracle::kPiL * 0.75L));
  std::printf("weighted poly cov      = %.17Lg\n", 283.0L / 480.0L);

  std::printf("\nVage A(2): 30 factors  = %.17Lg\n", oracle::vage_product(2, 30));
  std::printf("Vage A(2): 50 factors  = %.17Lg\n", oracle::vage_product(2, 50));
  std::printf("Vage A(3): 50 factors  = %.17Lg\n", oracle::vage_product(3, 50));

  for (int n : {64, 256, 1024, 4096}) {
    const long double coarse = oracle::parseval_partial_sum(n, 1.0L, 1 << 14);
    const long double fine = oracle::parseval_partial_sum(n, 1.0L, 1 << 15);
    std::printf("\nS_%d(1)   = %.15Lg   (refined %.15Lg, gap to 1 = %.6Lg)", n, coarse, fine,
                1.0L - fine);
  }
  {
    const long double s1 = oracle::parseval_partial_sum(1024, 1.0L, 1 << 15);
    const long double s2 = oracle::parseval_partial_sum(1024, 2.0L, 1 << 15);
    std::printf("\nS_1024(2) - S_1024(1) = %.15Lg\n", s2 - s1);
  }

  for (int n : {512, 1024, 2048, 4096}) {
    const long double cov = oracle::covariance_truncated(n, 0.5L, 1.0L, 1 << 15);
    std::printf("cov_trunc(N=%d; 0.5, 1.0) = %.15Lg  (bias %.6Lg)\n", n, cov, cov - 0.5L);
  }

  for (double eps : {0.9, 0.99}) {
    const long double s = oracle::damped_parseval(4096, 1.0L, (long double)eps, 1 << 15);
    std::printf("damped parseval (eps=%.2f, N=4096, t=1) = %.15Lg\n", eps, s);
  }

  {
    const long double s05 = oracle::divergence_partial_sum(400, 1.0L, 0.5L, 1 << 13);
    const long double s95 = oracle::divergence_partial_sum(400, 1.0L, 0.95L, 1 << 13);
    const long double s95f = oracle::divergence_partial_sum(400, 1.0L, 0.95L, 1 << 14);
    std::printf("\ndiverge S(0.5),  T=1, N=400 = %.15Lg\n", s05);
    std::printf("diverge S(0.95), T=1, N=400 = %.15Lg (refined %.15Lg)\n", s95, s95f);
    std::printf("ratio S(0.95)/S(0.5)        = %.15Lg\n", s95 / s05);
    std::printf("diverge S(0.1)  = %.15Lg\n",
                oracle::divergence_partial_sum(400, 1.0L, 0.1L, 1 << 13));
  }
  return 0;
}
