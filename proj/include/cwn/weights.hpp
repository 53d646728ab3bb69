#pragma once

#include "cwn/constants.hpp"
#include "cwn/multi_index.hpp"

namespace cwn::chaos {

// Geometric weight ladder a_k = base^{k+1}, k = 0,1,2,...  The default base 2
// gives a_k = 2^{k+1}, for which sum_k a_k^{-d} converges already at d = 1.
// Coordinate weights lift to multi-indices by b_alpha = prod_k a_k^{alpha_k}.
class WeightSequence {
 public:
  WeightSequence() = default;
  WeightSequence(double base, int d);  // throws std::invalid_argument if base <= 1 or d < 1

  double log_a(std::uint32_t k) const { return double(k + 1) * log_base_; }
  double b_log(const MultiIndex& alpha) const;
  int d() const { return d_; }

 private:
  double log_base_ = kLn2;
  int d_ = 1;
};

// A(l) = (sum_alpha b_alpha^{-l})^{1/2} = (prod_k (1 - a_k^{-l})^{-1})^{1/2}.
// Throws DivergenceError for l < d.
double vage_constant(int l, const WeightSequence& w = {});

}  // namespace cwn::chaos
