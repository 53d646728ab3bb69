#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cwn/errors.hpp"
#include "cwn/processes.hpp"
#include "oracles.hpp"

using cwn::chaos::ChaosVector;
using cwn::chaos::MultiIndex;
using cwn::hermite::Evaluator;
using cwn::proc::AnalyticWeight;
using cwn::proc::TruncationPlan;
using Complex = std::complex<double>;

TEST_CASE("plan picks the smallest feasible grading order") {
  const TruncationPlan plan = TruncationPlan::make(1.0, 1e-6);
  CHECK(plan.p == 6);  // 2^6 = 64 > 1.1 e^4, 2^5 = 32 is not
  CHECK(std::exp(4.0 * plan.radius) / std::exp2(double(plan.p)) < 1.0);
  CHECK(plan.tail_bound <= plan.tol * plan.tol);
  CHECK(TruncationPlan::make(1e-9, 1e-4).p == 1);
  // tail strictly decreasing in the truncation level
  for (int n = 0; n < 40; ++n) CHECK(plan.tail_series(n + 1) < plan.tail_series(n));
  const TruncationPlan smaller = plan.with_truncation(16);
  CHECK(smaller.truncation == 16);
  CHECK(smaller.tail_bound == doctest::Approx(plan.tail_series(16)));
  CHECK_THROWS_AS(TruncationPlan::make(-1.0, 1e-6), std::invalid_argument);
}

TEST_CASE("brownian coefficients") {
  Evaluator ev;
  const TruncationPlan plan = TruncationPlan::make(1.0, 1e-8);
  CHECK(cwn::proc::brownian_coeffs(ev, {0, 0}, plan).zero());

  const ChaosVector b1 = cwn::proc::brownian_coeffs(ev, {1, 0}, plan);
  CHECK(b1.coeff(MultiIndex::unit(0)).real() ==
        doctest::Approx(0.64268133721747555).epsilon(1e-9));
  CHECK(b1.max_order() == 1);

  // coefficient envelope |c_n| <= R C_R e^{2Rn}
  const double log_c = cwn::hermite::disk_envelope_log(plan.radius);
  for (const auto& [alpha, c] : b1.sorted_entries()) {
    const int n = int(alpha.max_coordinate());
    CHECK(std::log(std::abs(c)) <= std::log(plan.radius) + log_c + 2.0 * plan.radius * n + 1e-9);
  }

  // membership: the graded norm stays under the plan envelope
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double envelope = plan.radius * std::exp(log_c) * std::sqrt(plan.geometric_sum()) +
                          plan.tol;
  for (int trial = 0; trial < 100; ++trial) {
    Complex z{u(gen), u(gen)};
    if (std::abs(z) > 1.0) z /= std::abs(z) * 1.0001;
    CHECK(cwn::chaos::norm_minus(cwn::proc::brownian_coeffs(ev, z, plan), plan.p) <= envelope);
  }
}

TEST_CASE("truncated quadratic variation approaches t") {
  Evaluator ev;
  const TruncationPlan plan = TruncationPlan::make(1.0, 1e-8).with_truncation(1024);
  const ChaosVector bt = cwn::proc::brownian_coeffs(ev, {1, 0}, plan);
  double sum = 0.0;
  for (const auto& [alpha, c] : bt.sorted_entries()) sum += std::norm(c);
  CHECK(sum == doctest::Approx(0.985644472942777).epsilon(1e-7));  // S_1024(1) reference
  CHECK(sum < 1.0);
}

TEST_CASE("white noise coefficients") {
  Evaluator ev;
  const TruncationPlan plan = TruncationPlan::make(1.0, 1e-8);
  const ChaosVector n0 = cwn::proc::white_noise_coeffs(ev, {0, 0}, plan);
  CHECK(n0.coeff(MultiIndex::unit(0)).real() ==
        doctest::Approx(0.75112554446494248).epsilon(1e-14));
  for (int n = 1; n <= plan.truncation; n += 2)
    CHECK(n0.coeff(MultiIndex::unit(std::uint32_t(n))) == Complex{0, 0});

  // norm envelope from the plan series
  const double envelope =
      std::exp(cwn::hermite::disk_envelope_log(plan.radius)) * std::sqrt(plan.geometric_sum());
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Complex z{u(gen), u(gen)};
    if (std::abs(z) > 1.0) z /= std::abs(z) * 1.0001;
    CHECK(cwn::chaos::norm_minus(cwn::proc::white_noise_coeffs(ev, z, plan), plan.p) <= envelope);
    // pairing of the two processes stays finite (finite vectors)
    const Complex pair = cwn::chaos::pairing(cwn::proc::brownian_coeffs(ev, z, plan),
                                             cwn::proc::white_noise_coeffs(ev, z, plan));
    CHECK(std::isfinite(pair.real()));
    CHECK(std::isfinite(pair.imag()));
  }
}

TEST_CASE("weighted processes") {
  Evaluator ev;
  const TruncationPlan plan = TruncationPlan::make(1.0, 1e-8);

  // the trivial weight reproduces the plain process exactly
  const AnalyticWeight one{AnalyticWeight::Kind::polynomial, 0};
  const Complex z{0.6, 0.3};
  CHECK(cwn::proc::weighted_coeffs(ev, z, one, plan) == cwn::proc::brownian_coeffs(ev, z, plan));

  // (1+u^2)^2 covariance at t = s = 0.5 approaches the polynomial integral
  // 283/480 from below as the truncation grows
  const AnalyticWeight m{AnalyticWeight::Kind::polynomial, 1};
  CHECK(m.value(0.5) == doctest::Approx(std::pow(1.25, 2)).epsilon(1e-15));
  const double limit = 283.0 / 480.0;
  double prev_sum = 0.0;
  for (int n_trunc : {256, 1024, 2048}) {
    const ChaosVector x = cwn::proc::weighted_coeffs(ev, {0.5, 0}, m, plan.with_truncation(n_trunc));
    double sum = 0.0;
    for (const auto& [alpha, c] : x.sorted_entries()) sum += std::norm(c);
    CHECK(sum < limit);
    CHECK(sum > prev_sum);
    prev_sum = sum;
  }
  CHECK(prev_sum == doctest::Approx(limit).epsilon(0.03));

  // derivative of the weighted process is sqrt(m) white noise, coefficientwise
  const double h = 1e-6;
  const ChaosVector xp = cwn::proc::weighted_coeffs(ev, z + h, m, plan);
  const ChaosVector xm = cwn::proc::weighted_coeffs(ev, z - h, m, plan);
  const ChaosVector noise = cwn::proc::white_noise_coeffs(ev, z, plan);
  for (int n = 0; n <= 12; ++n) {
    const MultiIndex e = MultiIndex::unit(std::uint32_t(n));
    const Complex fd = (xp.coeff(e) - xm.coeff(e)) / (2.0 * h);
    const Complex expect = m.sqrt_value(z) * noise.coeff(e);
    CHECK(std::abs(fd - expect) < 1e-5 * std::max(1.0, std::abs(expect)));
  }

  CHECK(AnalyticWeight::parse("poly:2").name() == "poly:2");
  CHECK(AnalyticWeight::parse("expm:1").kind == AnalyticWeight::Kind::exp_minus);
  CHECK_THROWS_AS(AnalyticWeight::parse("box:1"), std::invalid_argument);
  // e^{-u^2} has sqrt e^{-u^2/2}
  const AnalyticWeight gm{AnalyticWeight::Kind::exp_minus, 1};
  CHECK(gm.sqrt_value({1, 0}).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
}

TEST_CASE("regularized coefficients") {
  Evaluator ev;
  const TruncationPlan plan = TruncationPlan::make(1.0, 1e-8);
  const Complex z{0.4, 0.2};
  const ChaosVector b0 = cwn::proc::regularized_coeffs(ev, z, 0.0, plan);
  CHECK(b0.size() == 1);  // only degree 0 survives
  CHECK(std::abs(b0.coeff(MultiIndex::unit(0)) - ev.antiderivative(0, z, 1e-10)) < 1e-9);

  // eps -> 1 approaches the undamped coefficients on a fixed truncation
  const ChaosVector plain = cwn::proc::brownian_coeffs(ev, z, plan);
  ChaosVector close = cwn::proc::regularized_coeffs(ev, z, 1.0 - 1e-12, plan);
  close -= plain;
  CHECK(cwn::chaos::norm_minus(close, plan.p) < 1e-8);

  // damped series stays summable in the admissible regime
  const double eps = 0.3;
  REQUIRE(eps * std::exp(2.0 * std::abs(z)) < 1.0);
  const ChaosVector be = cwn::proc::regularized_coeffs(ev, z, eps, plan);
  double sum = 0.0;
  for (const auto& [alpha, c] : be.sorted_entries()) sum += std::norm(c);
  CHECK(std::isfinite(sum));
  CHECK_THROWS_AS(cwn::proc::regularized_coeffs(ev, z, 1.0, plan), cwn::RegimeError);
}

TEST_CASE("analyticity residuals decay linearly") {
  Evaluator ev;
  const TruncationPlan plan = TruncationPlan::make(0.6, 1e-8);
  const std::vector<double> hs = {1e-2, 1e-3, 1e-4};
  const auto rep = cwn::proc::analyticity_check(ev, {0.2, -0.1}, hs, plan);
  CHECK(rep.observed_order >= 0.9);
  for (std::size_t d = 0; d < 4; ++d) {
    CHECK(rep.per_direction_order[d] >= 0.9);
    for (std::size_t i = 0; i < hs.size(); ++i)
      CHECK(rep.residuals[d][i] <= rep.residual_bound * hs[i] * 1.000001);
  }
  CHECK(rep.direction_spread < 1e-3);
  CHECK_THROWS_AS(
      cwn::proc::analyticity_check(ev, {0.6, 0}, std::vector<double>{1e-1}, plan),
      std::domain_error);
}

TEST_CASE("continuity bound on random pairs") {
  Evaluator ev;
  const TruncationPlan plan = TruncationPlan::make(1.0, 1e-8);
  CHECK(cwn::proc::continuity_check(ev, {0.5, 0.2}, {0.5, 0.2}, plan).distance == 0.0);
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Complex z1{u(gen), u(gen)}, z2{u(gen), u(gen)};
    if (std::abs(z1) > 1.0) z1 /= std::abs(z1) * 1.0001;
    if (std::abs(z2) > 1.0) z2 /= std::abs(z2) * 1.0001;
    CHECK(cwn::proc::continuity_check(ev, z1, z2, plan).within);
  }

  // the Lipschitz ratio is stable under truncation refinement: extra degrees
  // contribute at most the square root of the plan tail
  const Complex z1{0.4, 0.3}, z2{0.1, -0.5};
  const double base = cwn::proc::continuity_check(ev, z1, z2, plan).distance;
  const double finer =
      cwn::proc::continuity_check(ev, z1, z2, plan.with_truncation(2 * plan.truncation)).distance;
  CHECK(std::abs(finer - base) <= std::sqrt(plan.tail_bound) + 2.0 * plan.tol);
}

TEST_CASE("cross-covariance of the coefficient arrays approaches min(s,t)") {
  Evaluator ev;
  const TruncationPlan plan = TruncationPlan::make(1.0, 1e-8).with_truncation(2048);
  const std::vector<Complex> cs = ev.segment_integrals(2048, {0, 0}, {0.5, 0}, 1e-10);
  const std::vector<Complex> ct = ev.segment_integrals(2048, {0, 0}, {1.0, 0}, 1e-10);
  double cov = 0.0;
  for (std::size_t n = 0; n < cs.size(); ++n) cov += cs[n].real() * ct[n].real();
  CHECK(cov == doctest::Approx(0.4949567793922).epsilon(1e-7));  // frozen oracle, N = 2048
}

TEST_CASE("covariance operator") {
  Evaluator ev;
  const TruncationPlan plan = TruncationPlan::make(1.0, 1e-8);
  // the algebra unit pairs to zero: B_w has no zero-index component
  CHECK(cwn::proc::covariance_operator(ev, {0.5, 0}, {0.8, 0}, ChaosVector::unit(), plan).zero());

  // unit-n input picks the conjugated coefficient
  const Complex w{0.3, 0.4};
  const ChaosVector bw = cwn::proc::brownian_coeffs(ev, w, plan);
  const ChaosVector image = cwn::proc::covariance_operator(
      ev, {0.5, 0}, w, ChaosVector::basis(MultiIndex::unit(3)), plan);
  const ChaosVector bz = cwn::proc::brownian_coeffs(ev, {0.5, 0}, plan);
  const Complex scale = std::conj(bw.coeff(MultiIndex::unit(3)));
  for (const auto& [alpha, c] : bz.sorted_entries())
    CHECK(std::abs(image.coeff(alpha) - scale * c) < 1e-12);

  // diagonal real case sums to min(t,t) = t over the basis directions
  const TruncationPlan fine = plan.with_truncation(1024);
  const ChaosVector bt = cwn::proc::brownian_coeffs(ev, {1, 0}, fine);
  double total = 0.0;
  for (int n = 0; n <= fine.truncation; ++n) {
    const MultiIndex e = MultiIndex::unit(std::uint32_t(n));
    const ChaosVector img = cwn::proc::covariance_operator(ev, {1, 0}, {1, 0},
                                                           ChaosVector::basis(e), fine);
    total += img.coeff(e).real();
  }
  CHECK(total == doctest::Approx(0.985644472942777).epsilon(1e-6));
}

TEST_CASE("sampling determinism and moments") {
  Evaluator ev;
  const TruncationPlan plan = TruncationPlan::make(1.0, 1e-6).with_truncation(256);
  const std::vector<Complex> grid = {{0.5, 0}, {1.0, 0}};
  const auto table = cwn::proc::sample_paths(ev, 7, grid, plan, 20000);
  const auto again = cwn::proc::sample_paths(ev, 7, grid, plan, 20000);
  CHECK(table.to_csv() == again.to_csv());
  const auto other = cwn::proc::sample_paths(ev, 8, grid, plan, 20000);
  CHECK(table.to_csv() != other.to_csv());

  double mean0 = 0.0, mean1 = 0.0, cross = 0.0;
  for (int s = 0; s < table.n_samples; ++s) {
    mean0 += table.at(s, 0).real();
    mean1 += table.at(s, 1).real();
    cross += table.at(s, 0).real() * table.at(s, 1).real();
  }
  mean0 /= table.n_samples;
  mean1 /= table.n_samples;
  cross = cross / table.n_samples - mean0 * mean1;
  CHECK(std::abs(mean0) <= 4.0 / std::sqrt(double(table.n_samples)));
  CHECK(std::abs(mean1) <= 4.0 / std::sqrt(double(table.n_samples)));
  CHECK(std::abs(cross - 0.5) < 0.05);  // loose at 2e4 samples; tight case in acceptance
}
