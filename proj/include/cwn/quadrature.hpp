#pragma once

#include <complex>
#include <vector>

namespace cwn::quad {

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1,1], ascending
  std::vector<double> weights;
};

// Nodes/weights computed once per order by Newton iteration on the Legendre
// recurrence; cached for reuse.
const GaussLegendre& gauss_legendre(int n);

// ∬_{[0,1]²} f(s,t) ds dt by tensor-product Gauss-Legendre, m points per axis.
template <class F>
std::complex<double> tensor_unit_square(F&& f, int m) {
  const GaussLegendre& g = gauss_legendre(m);
  std::complex<double> acc = 0.0;
  for (int i = 0; i < m; ++i) {
    const double s = 0.5 * (g.nodes[i] + 1.0);
    const double ws = 0.5 * g.weights[i];
    for (int j = 0; j < m; ++j) {
      const double t = 0.5 * (g.nodes[j] + 1.0);
      acc += ws * 0.5 * g.weights[j] * f(s, t);
    }
  }
  return acc;
}

// Composite m-point Gauss-Legendre of a real integrand over [a,b].
template <class F>
double composite_real(F&& f, double a, double b, int panels, int m = 15) {
  const GaussLegendre& g = gauss_legendre(m);
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int i = 0; i < m; ++i) acc += 0.5 * h * g.weights[i] * f(mid + 0.5 * h * g.nodes[i]);
  }
  return acc;
}

}  // namespace cwn::quad
