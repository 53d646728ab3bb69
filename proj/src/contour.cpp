#include "cwn/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <stdexcept>

#include "cwn/constants.hpp"
#include "cwn/errors.hpp"
#include "cwn/quadrature.hpp"

namespace cwn::contour {

namespace {

std::string fmt_complex(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%g%+gi", z.real(), z.imag());
  return buf;
}

// Dense midpoint-sum accumulator for order-<=1 integrand against order-1
// noise: constant*noise lands on e_m, the bilinear part on e_k + e_m.
struct DenseOrder2Sum {
  int n = 0;
  std::vector<Complex> linear;  // coefficient of e_m
  std::vector<Complex> pairs;   // ordered (k,m), row-major (n+1)^2

  explicit DenseOrder2Sum(int n_trunc)
      : n(n_trunc),
        linear(std::size_t(n_trunc) + 1, Complex{0, 0}),
        pairs(std::size_t(n_trunc + 1) * std::size_t(n_trunc + 1), Complex{0, 0}) {}

  void add(Complex w, Complex f0, std::span<const Complex> f1, std::span<const Complex> g1) {
    const std::size_t m = std::size_t(n) + 1;
    for (std::size_t j = 0; j < m; ++j) linear[j] += w * f0 * g1[j];
    for (std::size_t k = 0; k < m; ++k) {
      const Complex wf = w * f1[k];
      if (wf == Complex{0, 0}) continue;
      Complex* row = pairs.data() + k * m;
      for (std::size_t j = 0; j < m; ++j) row[j] += wf * g1[j];
    }
  }

  DenseOrder2Sum& operator-=(const DenseOrder2Sum& o) {
    for (std::size_t i = 0; i < linear.size(); ++i) linear[i] -= o.linear[i];
    for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i] -= o.pairs[i];
    return *this;
  }

  double norm_minus(std::span<const double> w_minus) const {
    const std::size_t m = std::size_t(n) + 1;
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) acc += std::norm(linear[j]) * w_minus[j];
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = k; j < m; ++j) {
        const Complex c = j == k ? pairs[k * m + k] : pairs[k * m + j] + pairs[j * m + k];
        if (c == Complex{0, 0}) continue;
        acc += std::norm(c) * w_minus[k] * w_minus[j];
      }
    return std::sqrt(acc);
  }

  chaos::ChaosVector to_chaos() const {
    const std::size_t m = std::size_t(n) + 1;
    chaos::ChaosVector out;
    for (std::size_t j = 0; j < m; ++j)
      out.add(chaos::MultiIndex::unit(std::uint32_t(j)), linear[j]);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = k; j < m; ++j) {
        const Complex c = j == k ? pairs[k * m + k] : pairs[k * m + j] + pairs[j * m + k];
        out.add(chaos::MultiIndex::unit(std::uint32_t(k)) + chaos::MultiIndex::unit(std::uint32_t(j)), c);
      }
    return out;
  }
};

struct DenseOrder1 {
  Complex constant{0, 0};
  std::vector<Complex> first;  // coefficient of e_k, k <= n
};

// ||(f0 + sum f_k Z_k) star (sum g_m Z_m)||_{-p} without materializing the product
double order2_product_norm(Complex f0, std::span<const Complex> f1, std::span<const Complex> g1,
                           std::span<const double> w_minus) {
  const std::size_t m = g1.size();
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) acc += std::norm(f0 * g1[j]) * w_minus[j];
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = k; j < m; ++j) {
      const Complex c = j == k ? f1[k] * g1[k] : f1[k] * g1[j] + f1[j] * g1[k];
      if (c == Complex{0, 0}) continue;
      acc += std::norm(c) * w_minus[k] * w_minus[j];
    }
  return std::sqrt(acc);
}

DenseOrder1 densify_order1(const chaos::ChaosVector& v, int n_trunc) {
  DenseOrder1 out;
  out.first.assign(std::size_t(n_trunc) + 1, Complex{0, 0});
  for (const auto& [alpha, c] : v.raw()) {
    if (alpha.zero()) {
      out.constant = c;
      continue;
    }
    if (alpha.order() != 1 || alpha.max_coordinate() > std::uint32_t(n_trunc))
      throw OrderError("integrate_wick: integrand support must be order <= 1 within the plan truncation");
    out.first[alpha.max_coordinate()] = c;
  }
  return out;
}

}  // namespace

Complex Piece::at(double t) const {
  if (kind == Kind::segment) return a + t * (b - a);
  const double th = theta0 + t * (theta1 - theta0);
  return center + radius * Complex{std::cos(th), std::sin(th)};
}

Complex Piece::deriv(double t) const {
  if (kind == Kind::segment) return b - a;
  const double th = theta0 + t * (theta1 - theta0);
  return radius * (theta1 - theta0) * Complex{-std::sin(th), std::cos(th)};
}

double Piece::max_abs() const {
  if (kind == Kind::segment) return std::max(std::abs(a), std::abs(b));
  return std::abs(center) + radius;
}

Contour Contour::segment(Complex a, Complex b) {
  Contour c;
  Piece p;
  p.kind = Piece::Kind::segment;
  p.a = a;
  p.b = b;
  c.pieces_.push_back(p);
  return c;
}

Contour Contour::arc(Complex center, double radius, double theta0, double theta1) {
  if (!(radius >= 0.0)) throw std::invalid_argument("Contour::arc: radius must be >= 0");
  Contour c;
  Piece p;
  p.kind = Piece::Kind::arc;
  p.center = center;
  p.radius = radius;
  p.theta0 = theta0;
  p.theta1 = theta1;
  c.pieces_.push_back(p);
  return c;
}

Contour Contour::polyline(const std::vector<Complex>& points) {
  if (points.size() < 2) throw std::invalid_argument("Contour::polyline: need >= 2 points");
  Contour c;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    Piece p;
    p.kind = Piece::Kind::segment;
    p.a = points[i];
    p.b = points[i + 1];
    c.pieces_.push_back(p);
  }
  return c;
}

Contour Contour::reversed() const {
  Contour c;
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
    Piece p = *it;
    if (p.kind == Piece::Kind::segment)
      std::swap(p.a, p.b);
    else
      std::swap(p.theta0, p.theta1);
    c.pieces_.push_back(p);
  }
  return c;
}

Contour Contour::then(const Contour& next) const {
  Contour c = *this;
  c.pieces_.insert(c.pieces_.end(), next.pieces_.begin(), next.pieces_.end());
  return c;
}

double Contour::max_abs() const {
  double best = 0.0;
  for (const Piece& p : pieces_) best = std::max(best, p.max_abs());
  return best;
}

std::string Contour::id() const {
  std::string out;
  for (const Piece& p : pieces_) {
    if (!out.empty()) out += '|';
    if (p.kind == Piece::Kind::segment) {
      out += "segment(" + fmt_complex(p.a) + "," + fmt_complex(p.b) + ")";
    } else {
      char buf[120];
      std::snprintf(buf, sizeof buf, "arc(%s,r=%g,%g..%g)", fmt_complex(p.center).c_str(),
                    p.radius, p.theta0, p.theta1);
      out += buf;
    }
  }
  return out;
}

IntegrandField IntegrandField::constant(chaos::ChaosVector v) {
  IntegrandField f;
  f.constant_ = std::move(v);
  return f;
}

IntegrandField IntegrandField::brownian(double scale, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw RegimeError("IntegrandField::brownian: eps must lie in [0, 1]");
  IntegrandField f;
  f.scale_ = scale;
  f.eps_ = eps;
  return f;
}

std::string IntegrandField::name() const {
  if (constant_) return "constant";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g*B(z,eps=%g)", scale_, eps_);
  return buf;
}

int IntegrandField::max_order_hint() const {
  return constant_ ? constant_->max_order() : 1;
}

chaos::ChaosVector IntegrandField::eval(const hermite::Evaluator& ev, Complex z,
                                        const proc::TruncationPlan& plan) const {
  if (constant_) return *constant_;
  chaos::ChaosVector v = eps_ >= 1.0 ? proc::brownian_coeffs(ev, z, plan)
                                     : proc::regularized_coeffs(ev, z, eps_, plan);
  v *= scale_;
  return v;
}

std::vector<chaos::ChaosVector> IntegrandField::eval_path(const hermite::Evaluator& ev,
                                                          std::span<const Complex> points,
                                                          const proc::TruncationPlan& plan) const {
  std::vector<chaos::ChaosVector> out;
  out.reserve(points.size());
  if (constant_) {
    for (std::size_t i = 0; i < points.size(); ++i) out.push_back(*constant_);
    return out;
  }
  const int n_trunc = plan.truncation;
  const double tol_inc = plan.tol / ((n_trunc + 1.0) * double(points.size() + 1));
  std::vector<Complex> cum(std::size_t(n_trunc) + 1, Complex{0, 0});
  Complex prev{0, 0};
  const double root = std::sqrt(eps_);
  for (Complex z : points) {
    const std::vector<Complex> inc = ev.segment_integrals(n_trunc, prev, z, tol_inc);
    chaos::ChaosVector v;
    double damp = 1.0;
    for (std::size_t n = 0; n < cum.size(); ++n) {
      cum[n] += inc[n];
      v.set(chaos::MultiIndex::unit(std::uint32_t(n)), scale_ * damp * cum[n]);
      damp *= root;
    }
    out.push_back(std::move(v));
    prev = z;
  }
  return out;
}

IntegralReport integrate_wick(const hermite::Evaluator& ev, const IntegrandField& f,
                              const Contour& c, const proc::TruncationPlan& plan, double tol,
                              double noise_eps, int refinement_base, int max_level) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_wick: tol must be > 0");
  if (refinement_base < 2) throw std::invalid_argument("integrate_wick: refinement base >= 2");
  if (c.max_abs() > plan.radius * (1.0 + 1e-9))
    throw std::domain_error("integrate_wick: contour leaves the plan disk");
  if (!(noise_eps >= 0.0 && noise_eps <= 1.0))
    throw RegimeError("integrate_wick: noise_eps must lie in [0, 1]");

  IntegralReport rep;
  rep.p = plan.p;
  rep.truncation = plan.truncation;
  rep.refinement_base = refinement_base;
  rep.contour_id = c.id();
  const chaos::WeightSequence weights;
  const int n_trunc = plan.truncation;
  const double tol_piece = tol / double(c.pieces().size());
  const double root = std::sqrt(noise_eps);
  std::vector<double> w_minus(std::size_t(n_trunc) + 1);
  for (std::size_t k = 0; k < w_minus.size(); ++k)
    w_minus[k] = std::exp(-double(plan.p) * weights.log_a(std::uint32_t(k)));

  // constants of order >= 2 fall outside the dense order-2 accumulator
  const bool generic = f.max_order_hint() > 1;

  int piece_idx = 0;
  if (generic) {
    for (const Piece& piece : c.pieces()) {
      chaos::ChaosVector prev;
      bool have_prev = false;
      bool piece_converged = false;
      long panels = 1;
      for (int level = 0; level <= max_level; ++level, panels *= refinement_base) {
        chaos::ChaosVector sum;
        for (long i = 0; i < panels; ++i) {
          const double t = (i + 0.5) / double(panels);
          const Complex node = piece.at(t);
          const Complex w = piece.deriv(t) / double(panels);
          std::vector<Complex> g1 = ev.values(n_trunc, node);
          double damp = 1.0;
          for (Complex& g : g1) {
            g *= damp;
            damp *= root;
          }
          const chaos::ChaosVector fv = f.eval(ev, node, plan);
          chaos::ChaosVector node_term;
          chaos::add_scaled_wick(node_term, fv, proc::order1_vector(g1), w);
          rep.max_integrand_norm =
              std::max(rep.max_integrand_norm,
                       double(panels) * chaos::norm_minus(node_term, plan.p));
          sum += node_term;
        }
        LevelTrace trace;
        trace.piece = piece_idx;
        trace.panels = panels;
        trace.sum_norm = chaos::norm_minus(sum, plan.p);
        if (have_prev) {
          chaos::ChaosVector diff = sum;
          diff -= prev;
          trace.cauchy_delta = chaos::norm_minus(diff, plan.p);
          rep.levels.push_back(trace);
          if (trace.cauchy_delta <= tol_piece) {
            rep.value += sum;
            rep.panels_total += panels;
            piece_converged = true;
            break;
          }
        } else {
          trace.cauchy_delta = std::numeric_limits<double>::quiet_NaN();
          rep.levels.push_back(trace);
        }
        prev = std::move(sum);
        have_prev = true;
      }
      if (!piece_converged)
        throw ToleranceError("integrate_wick: refinement cap reached before the Cauchy criterion");
      ++piece_idx;
    }
    rep.converged = true;
    return rep;
  }

  for (const Piece& piece : c.pieces()) {
    std::unique_ptr<DenseOrder2Sum> prev;
    bool piece_converged = false;
    long panels = 1;
    for (int level = 0; level <= max_level; ++level, panels *= refinement_base) {
      auto sum = std::make_unique<DenseOrder2Sum>(n_trunc);
      std::vector<Complex> nodes(static_cast<std::size_t>(panels));
      for (long i = 0; i < panels; ++i) nodes[std::size_t(i)] = piece.at((i + 0.5) / double(panels));
      const std::vector<chaos::ChaosVector> fvals = f.eval_path(ev, nodes, plan);
      for (long i = 0; i < panels; ++i) {
        const double t = (i + 0.5) / double(panels);
        const Complex w = piece.deriv(t) / double(panels);
        DenseOrder1 fd = densify_order1(fvals[std::size_t(i)], n_trunc);
        std::vector<Complex> g1 = ev.values(n_trunc, nodes[std::size_t(i)]);
        double damp = 1.0;
        for (std::size_t n = 0; n < g1.size(); ++n) {
          g1[n] *= damp;
          damp *= root;
        }
        sum->add(w, fd.constant, fd.first, g1);
        const double node_norm =
            std::abs(piece.deriv(t)) * order2_product_norm(fd.constant, fd.first, g1, w_minus);
        rep.max_integrand_norm = std::max(rep.max_integrand_norm, node_norm);
      }
      LevelTrace trace;
      trace.piece = piece_idx;
      trace.panels = panels;
      trace.sum_norm = sum->norm_minus(w_minus);
      if (prev) {
        DenseOrder2Sum diff = *sum;
        diff -= *prev;
        trace.cauchy_delta = diff.norm_minus(w_minus);
        rep.levels.push_back(trace);
        if (trace.cauchy_delta <= tol_piece) {
          rep.value += sum->to_chaos();
          rep.panels_total += panels;
          piece_converged = true;
          break;
        }
      } else {
        trace.cauchy_delta = std::numeric_limits<double>::quiet_NaN();
        rep.levels.push_back(trace);
      }
      prev = std::move(sum);
    }
    if (!piece_converged)
      throw ToleranceError("integrate_wick: refinement cap reached before the Cauchy criterion");
    ++piece_idx;
  }
  rep.converged = true;
  return rep;
}

ItoRealReport ito_check_real(const hermite::Evaluator& ev, double t,
                             const proc::TruncationPlan& plan, double tol) {
  if (!(t > 0.0) || t > plan.radius * (1.0 + 1e-12))
    throw std::domain_error("ito_check_real: need 0 < t <= R");
  ItoRealReport rep;
  const int n_trunc = plan.truncation;

  // tight coefficients shared by the square, the gap, and the antisymmetry map
  const std::vector<Complex> c = ev.segment_integrals(n_trunc, {0, 0}, {t, 0}, 1e-12);
  const chaos::ChaosVector bt = proc::order1_vector(c);
  const chaos::ChaosVector lhs = chaos::pointwise_product_order1(bt, bt);

  const IntegralReport integral =
      integrate_wick(ev, IntegrandField::brownian(2.0), Contour::segment({0, 0}, {t, 0}), plan, tol);
  chaos::ChaosVector rhs = integral.value;
  rhs.add(chaos::MultiIndex{}, t);

  chaos::ChaosVector residual = lhs;
  residual -= rhs;
  rep.residual_norm = chaos::norm_minus(residual, plan.p);

  // Parseval gap of the truncated expansion
  Complex parseval{0, 0};
  for (const Complex& cn : c) parseval += cn * cn;
  rep.parseval_gap = std::abs(parseval - t);

  // antisymmetry of A_{n,m} = c_n c_m - 2 ∫_0^t (∫_0^u h_n) h_m(u) du via
  // composite quadrature, with a panel-doubling error estimate
  auto d_matrix = [&](int panels) {
    const quad::GaussLegendre& g = quad::gauss_legendre(15);
    std::vector<Complex> d(std::size_t(n_trunc + 1) * std::size_t(n_trunc + 1), Complex{0, 0});
    std::vector<Complex> cumulative(std::size_t(n_trunc) + 1, Complex{0, 0});
    double prev_u = 0.0;
    const double h = t / panels;
    for (int p = 0; p < panels; ++p) {
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double u = (p + 0.5 * (1.0 + g.nodes[i])) * h;
        const std::vector<Complex> inc =
            ev.segment_integrals(n_trunc, {prev_u, 0}, {u, 0}, 1e-13);
        for (std::size_t n = 0; n < cumulative.size(); ++n) cumulative[n] += inc[n];
        prev_u = u;
        const std::vector<Complex> hm = ev.values(n_trunc, {u, 0});
        const double w = 0.5 * h * g.weights[i];
        for (int n = 0; n <= n_trunc; ++n) {
          const Complex fn = w * cumulative[std::size_t(n)];
          Complex* row = d.data() + std::size_t(n) * std::size_t(n_trunc + 1);
          for (int m = 0; m <= n_trunc; ++m) row[m] += fn * hm[std::size_t(m)];
        }
      }
    }
    return d;
  };
  const int base_panels = std::max(8, int(std::ceil(t * std::sqrt(2.0 * n_trunc + 3.0) / 4.0)));
  const std::vector<Complex> d1 = d_matrix(base_panels);
  const std::vector<Complex> d2 = d_matrix(2 * base_panels);
  double quad_est = 0.0;
  for (std::size_t i = 0; i < d1.size(); ++i) quad_est = std::max(quad_est, std::abs(d1[i] - d2[i]));
  rep.quadrature_estimate = quad_est;
  for (int n = 0; n <= n_trunc; ++n)
    for (int m = 0; m <= n_trunc; ++m) {
      const Complex a_nm = c[std::size_t(n)] * c[std::size_t(m)] -
                           2.0 * d2[std::size_t(n) * std::size_t(n_trunc + 1) + std::size_t(m)];
      const Complex a_mn = c[std::size_t(m)] * c[std::size_t(n)] -
                           2.0 * d2[std::size_t(m) * std::size_t(n_trunc + 1) + std::size_t(n)];
      rep.antisymmetry_max = std::max(rep.antisymmetry_max, std::abs(a_nm + a_mn));
    }
  return rep;
}

ItoRegularizedReport ito_check_regularized(const hermite::Evaluator& ev, Complex z, double eps,
                                           const proc::TruncationPlan& plan, double tol) {
  const double regime_cap = std::min(1.0, std::exp(-2.0 * std::abs(z)) / 1.01);
  if (!(eps >= 0.0 && eps < regime_cap))
    throw RegimeError("ito_check_regularized: eps outside the damped-series regime");
  if (std::abs(z) > plan.radius * (1.0 + 1e-12))
    throw std::domain_error("ito_check_regularized: z outside the plan disk");

  ItoRegularizedReport rep;
  const int n_trunc = plan.truncation;

  const std::vector<Complex> c = ev.segment_integrals(n_trunc, {0, 0}, z, 1e-12);
  std::vector<Complex> damped = c;
  {
    const double root = std::sqrt(eps);
    double damp = 1.0;
    for (Complex& v : damped) {
      v *= damp;
      damp *= root;
    }
  }
  const chaos::ChaosVector beps = proc::order1_vector(damped);
  const chaos::ChaosVector lhs = chaos::pointwise_product_order1(beps, beps);

  const IntegralReport integral =
      integrate_wick(ev, IntegrandField::brownian(2.0, eps), Contour::segment({0, 0}, z), plan,
                     tol, eps);

  Complex series{0, 0};
  double power = 1.0;
  for (const Complex& cn : c) {
    series += power * cn * cn;
    power *= eps;
  }
  rep.correction_series = series;

  rep.correction_closed =
      z * z * quad::tensor_unit_square(
                  [&](double s, double t) { return hermite::mehler_kernel(eps, z * s, z * t); },
                  64);
  rep.correction_deviation = std::abs(rep.correction_series - rep.correction_closed);

  chaos::ChaosVector rhs = integral.value;
  rhs.add(chaos::MultiIndex{}, rep.correction_series);
  chaos::ChaosVector residual = lhs;
  residual -= rhs;
  rep.residual_norm = chaos::norm_minus(residual, plan.p);
  return rep;
}

}  // namespace cwn::contour
