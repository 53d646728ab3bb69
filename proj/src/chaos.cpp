#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cwn/chaos_vector.hpp"
#include "cwn/errors.hpp"
#include "cwn/multi_index.hpp"
#include "cwn/weights.hpp"

namespace cwn::chaos {

MultiIndex::MultiIndex(std::vector<Entry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].second == 0)
      throw std::invalid_argument("MultiIndex: exponents must be >= 1");
    if (i > 0 && entries_[i - 1].first >= entries_[i].first)
      throw std::invalid_argument("MultiIndex: coordinates must be strictly increasing");
  }
}

MultiIndex MultiIndex::collect(std::span<const Entry> entries) {
  std::vector<Entry> sorted(entries.begin(), entries.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Entry> merged;
  for (const Entry& e : sorted) {
    if (e.second == 0) continue;
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(e);
  }
  MultiIndex out;
  out.entries_ = std::move(merged);
  return out;
}

MultiIndex MultiIndex::unit(std::uint32_t coordinate) {
  MultiIndex out;
  out.entries_ = {{coordinate, 1}};
  return out;
}

int MultiIndex::order() const {
  int total = 0;
  for (const Entry& e : entries_) total += int(e.second);
  return total;
}

std::uint32_t MultiIndex::exponent(std::uint32_t coordinate) const {
  for (const Entry& e : entries_)
    if (e.first == coordinate) return e.second;
  return 0;
}

std::uint32_t MultiIndex::max_coordinate() const {
  return entries_.empty() ? 0 : entries_.back().first;
}

double MultiIndex::factorial_log() const {
  double acc = 0.0;
  for (const Entry& e : entries_) acc += std::lgamma(double(e.second) + 1.0);
  return acc;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex out;
  out.entries_.reserve(a.entries_.size() + b.entries_.size());
  std::size_t i = 0, j = 0;
  while (i < a.entries_.size() && j < b.entries_.size()) {
    const auto& ea = a.entries_[i];
    const auto& eb = b.entries_[j];
    if (ea.first < eb.first) {
      out.entries_.push_back(ea);
      ++i;
    } else if (eb.first < ea.first) {
      out.entries_.push_back(eb);
      ++j;
    } else {
      out.entries_.push_back({ea.first, ea.second + eb.second});
      ++i;
      ++j;
    }
  }
  for (; i < a.entries_.size(); ++i) out.entries_.push_back(a.entries_[i]);
  for (; j < b.entries_.size(); ++j) out.entries_.push_back(b.entries_[j]);
  return out;
}

std::size_t MultiIndex::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const Entry& e : entries_) {
    h = (h ^ e.first) * 0x100000001b3ULL;
    h = (h ^ e.second) * 0x100000001b3ULL;
  }
  return h;
}

WeightSequence::WeightSequence(double base, int d) : log_base_(std::log(base)), d_(d) {
  if (!(base > 1.0)) throw std::invalid_argument("WeightSequence: base must be > 1");
  if (d < 1) throw std::invalid_argument("WeightSequence: d must be >= 1");
}

double WeightSequence::b_log(const MultiIndex& alpha) const {
  double acc = 0.0;
  for (const auto& [k, exp] : alpha.entries()) acc += double(exp) * log_a(k);
  return acc;
}

double vage_constant(int l, const WeightSequence& w) {
  if (l < w.d())
    throw DivergenceError("vage_constant: exponent below the convergence exponent d");
  double log_sq = 0.0;
  for (std::uint32_t k = 0; k < 100000; ++k) {
    const double term = std::exp(-double(l) * w.log_a(k));
    if (term < 1e-18) break;
    log_sq -= std::log1p(-term);
  }
  return std::exp(0.5 * log_sq);
}

ChaosVector ChaosVector::unit() { return basis(MultiIndex{}, 1.0); }

ChaosVector ChaosVector::basis(MultiIndex alpha, Complex c) {
  ChaosVector out;
  out.set(alpha, c);
  return out;
}

void ChaosVector::add(const MultiIndex& alpha, Complex c) {
  if (c == Complex{0, 0}) return;
  auto it = coeffs_.find(alpha);
  if (it == coeffs_.end()) {
    coeffs_.emplace(alpha, c);
    return;
  }
  it->second += c;
  if (it->second == Complex{0, 0}) coeffs_.erase(it);
}

void ChaosVector::set(const MultiIndex& alpha, Complex c) {
  if (c == Complex{0, 0})
    coeffs_.erase(alpha);
  else
    coeffs_[alpha] = c;
}

Complex ChaosVector::coeff(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? Complex{0, 0} : it->second;
}

int ChaosVector::max_order() const {
  int best = 0;
  for (const auto& [alpha, c] : coeffs_) best = std::max(best, alpha.order());
  return best;
}

std::vector<std::pair<MultiIndex, Complex>> ChaosVector::sorted_entries() const {
  std::vector<std::pair<MultiIndex, Complex>> out(coeffs_.begin(), coeffs_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

ChaosVector& ChaosVector::operator+=(const ChaosVector& o) {
  for (const auto& [alpha, c] : o.coeffs_) add(alpha, c);
  return *this;
}

ChaosVector& ChaosVector::operator-=(const ChaosVector& o) {
  for (const auto& [alpha, c] : o.coeffs_) add(alpha, -c);
  return *this;
}

ChaosVector& ChaosVector::operator*=(Complex s) {
  if (s == Complex{0, 0}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [alpha, c] : coeffs_) c *= s;
  return *this;
}

bool operator==(const ChaosVector& a, const ChaosVector& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  for (const auto& [alpha, c] : a.coeffs_) {
    auto it = b.coeffs_.find(alpha);
    if (it == b.coeffs_.end() || it->second != c) return false;
  }
  return true;
}

double norm_minus(const ChaosVector& f, int p, const WeightSequence& w) {
  if (p < 1) throw std::invalid_argument("norm_minus: p must be >= 1");
  double acc = 0.0;
  for (const auto& [alpha, c] : f.sorted_entries())
    acc += std::norm(c) * std::exp(-double(p) * w.b_log(alpha));
  return std::sqrt(acc);
}

double norm_plus(const ChaosVector& f, int p, const WeightSequence& w) {
  if (p < 1) throw std::invalid_argument("norm_plus: p must be >= 1");
  double acc = 0.0;
  for (const auto& [alpha, c] : f.sorted_entries())
    acc += std::norm(c) * std::exp(2.0 * alpha.factorial_log() + double(p) * w.b_log(alpha));
  return std::sqrt(acc);
}

Complex pairing(const ChaosVector& f, const ChaosVector& g) {
  Complex acc{0, 0};
  for (const auto& [alpha, fa] : f.sorted_entries()) {
    const Complex ga = g.coeff(alpha);
    if (ga == Complex{0, 0}) continue;
    acc += std::exp(alpha.factorial_log()) * std::conj(ga) * fa;
  }
  return acc;
}

void add_scaled_wick(ChaosVector& acc, const ChaosVector& f, const ChaosVector& g, Complex w) {
  if (w == Complex{0, 0}) return;
  const auto fe = f.sorted_entries();
  const auto ge = g.sorted_entries();
  for (const auto& [alpha, fa] : fe)
    for (const auto& [beta, gb] : ge) acc.add(alpha + beta, w * fa * gb);
}

ChaosVector wick(const ChaosVector& f, const ChaosVector& g) {
  ChaosVector out;
  add_scaled_wick(out, f, g, 1.0);
  return out;
}

ChaosVector pointwise_product_order1(const ChaosVector& f, const ChaosVector& g) {
  if (f.max_order() > 1 || g.max_order() > 1)
    throw OrderError("pointwise_product_order1: support must have order <= 1");
  ChaosVector out = wick(f, g);
  Complex diag{0, 0};
  for (const auto& [alpha, fa] : f.sorted_entries()) {
    if (alpha.order() != 1) continue;
    diag += fa * g.coeff(alpha);
  }
  out.add(MultiIndex{}, diag);
  return out;
}

}  // namespace cwn::chaos
