#pragma once

#include <complex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cwn/multi_index.hpp"
#include "cwn/weights.hpp"

namespace cwn::chaos {

using Complex = std::complex<double>;

// Sparse map multi-index -> complex coefficient. Exact zeros are never
// stored; reductions iterate in sorted key order so results are reproducible.
class ChaosVector {
 public:
  ChaosVector() = default;
  static ChaosVector unit();  // indicator of the zero multi-index (Wick identity)
  static ChaosVector basis(MultiIndex alpha, Complex c = 1.0);

  void add(const MultiIndex& alpha, Complex c);
  void set(const MultiIndex& alpha, Complex c);
  Complex coeff(const MultiIndex& alpha) const;

  std::size_t size() const { return coeffs_.size(); }
  bool zero() const { return coeffs_.empty(); }
  int max_order() const;
  std::vector<std::pair<MultiIndex, Complex>> sorted_entries() const;
  const std::unordered_map<MultiIndex, Complex, MultiIndexHash>& raw() const { return coeffs_; }

  ChaosVector& operator+=(const ChaosVector& o);
  ChaosVector& operator-=(const ChaosVector& o);
  ChaosVector& operator*=(Complex s);

  friend ChaosVector operator+(ChaosVector a, const ChaosVector& b) { return a += b; }
  friend ChaosVector operator-(ChaosVector a, const ChaosVector& b) { return a -= b; }
  friend ChaosVector operator*(Complex s, ChaosVector a) { return a *= s; }
  friend bool operator==(const ChaosVector& a, const ChaosVector& b);

 private:
  std::unordered_map<MultiIndex, Complex, MultiIndexHash> coeffs_;
};

// sqrt(sum |f_alpha|^2 b_alpha^{-p}); p >= 1.
double norm_minus(const ChaosVector& f, int p, const WeightSequence& w = {});
// sqrt(sum |f_alpha|^2 (alpha!)^2 b_alpha^{p}); p >= 1.
double norm_plus(const ChaosVector& f, int p, const WeightSequence& w = {});
// <f,g> = sum alpha! conj(g_alpha) f_alpha.
Complex pairing(const ChaosVector& f, const ChaosVector& g);

// Wick product: coefficient convolution, (f*g)_gamma = sum_{alpha+beta=gamma} f_alpha g_beta.
ChaosVector wick(const ChaosVector& f, const ChaosVector& g);
// acc += w * (f star g), accumulated in sorted operand order.
void add_scaled_wick(ChaosVector& acc, const ChaosVector& f, const ChaosVector& g, Complex w);

// True (non-Wick) product of two order-<=1 vectors:
//   f g = f star g + (sum_k f_{e_k} g_{e_k}) * unit.
// Throws OrderError when either support exceeds order 1.
ChaosVector pointwise_product_order1(const ChaosVector& f, const ChaosVector& g);

}  // namespace cwn::chaos
