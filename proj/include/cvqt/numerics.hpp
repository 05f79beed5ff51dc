#pragma once

// Shared numerical engines: tensor-product Gauss-Hermite quadrature over the
// complex plane, the Wigner <-> characteristic Fourier transform, and
// Richardson-extrapolated central differences.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "cvqt/errors.hpp"

namespace cvqt::numerics {

using complex = std::complex<double>;

// Controls for phase-plane quadrature.  `damping` is the smallest Gaussian
// decay constant c in the integrand envelope e^{-c|alpha|^2}; the change of
// variables is matched to it so Gauss-Hermite sees a unit-Gaussian weight.
struct QuadratureSpec {
  int order = 64;
  double damping = 1.0;
  // Optional distinct decay constant along the imaginary axis for strongly
  // anisotropic (axis-aligned) integrands; 0 means "same as damping".
  double damping_y = 0.0;

  double damping_x_eff() const { return damping; }
  double damping_y_eff() const { return damping_y > 0.0 ? damping_y : damping; }

  void validate() const {
    if (order < 8) throw ValidationError("QuadratureSpec: order must be >= 8");
    if (!(damping > 0.0))
      throw ValidationError("QuadratureSpec: damping must be > 0");
    if (damping_y < 0.0)
      throw ValidationError("QuadratureSpec: damping_y must be >= 0");
  }
};

// Square phase-space window for field evaluations: [-extent, extent]^2 with
// `resolution` points per axis.
struct Grid2D {
  double extent = 6.0;
  int resolution = 121;

  void validate() const {
    if (resolution < 16)
      throw ValidationError("Grid2D: resolution must be >= 16");
    if (!(extent > 0.0)) throw ValidationError("Grid2D: extent must be > 0");
  }
};

// Controls for central-difference differentiation.
struct DiffSpec {
  double base_step = 0.02;
  int richardson_levels = 4;

  void validate() const {
    if (!(base_step > 1e-6 && base_step < 1e-1))
      throw ValidationError("DiffSpec: base_step must lie in (1e-6, 1e-1)");
    if (richardson_levels < 2 || richardson_levels > 6)
      throw ValidationError("DiffSpec: richardson_levels must lie in [2, 6]");
  }
};

// Default half-width for phase-space grids: Gaussian tail below 1e-10 at the
// boundary for decay constant `damping`.
inline double default_extent(double damping) {
  return std::max(6.0, 8.0 / std::sqrt(damping));
}

namespace detail {

struct GaussHermiteRule {
  std::vector<double> nodes;
  // Modified weights w_i * exp(x_i^2): ready to multiply integrand values
  // that carry their own Gaussian envelope.
  std::vector<double> weights;
};

// Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal Jacobi
// matrix (off-diagonal sqrt(k/2)), weights sqrt(pi) * v0^2.
inline GaussHermiteRule compute_gauss_hermite(int order) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double b = std::sqrt(0.5 * k);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success)
    throw NumericError("Gauss-Hermite: Jacobi eigensolve failed");
  GaussHermiteRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double sqrt_pi = std::sqrt(M_PI);
  for (int i = 0; i < order; ++i) {
    const double x = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[i] = x;
    // Guard against 0 * exp(x^2) = 0 * inf for far-tail nodes whose raw
    // weight underflows; the modified weight is exactly 0 there.
    const double w = sqrt_pi * v0 * v0;
    rule.weights[i] = (w == 0.0) ? 0.0 : w * std::exp(x * x);
  }
  return rule;
}

inline const GaussHermiteRule& gauss_hermite(int order) {
  static std::mutex mutex;
  static std::map<int, GaussHermiteRule> cache;
  std::scoped_lock lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end())
    it = cache.emplace(order, compute_gauss_hermite(order)).first;
  return it->second;
}

// Kahan-compensated accumulator: deterministic and accurate for the long
// ordered sums produced by tensor-product quadrature.
struct KahanSum {
  complex sum{0.0, 0.0};
  complex comp{0.0, 0.0};
  void add(complex value) {
    const complex y = value - comp;
    const complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

template <typename F>
complex integrate_at_order(F&& f, const QuadratureSpec& spec, int order) {
  const GaussHermiteRule& rule = gauss_hermite(order);
  const double scale_x = 1.0 / std::sqrt(spec.damping_x_eff());
  const double scale_y = 1.0 / std::sqrt(spec.damping_y_eff());
  KahanSum acc;
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      const complex alpha(rule.nodes[i] * scale_x, rule.nodes[j] * scale_y);
      const complex value = f(alpha);
      if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw EvaluationError("integrate_phase_plane: non-finite integrand",
                              alpha);
      acc.add(rule.weights[i] * rule.weights[j] * value);
    }
  }
  return acc.sum /
         (M_PI * std::sqrt(spec.damping_x_eff() * spec.damping_y_eff()));
}

}  // namespace detail

// (1/pi) * integral of f over the complex plane.  Self-validating: the order
// is doubled until two successive orders agree to 1e-9 relative.
template <typename F>
complex integrate_phase_plane(F&& f, const QuadratureSpec& spec = {}) {
  spec.validate();
  // exp(x_max^2) stays finite and the raw weights stay normal up to here.
  constexpr int kMaxOrder = 256;
  complex prev = detail::integrate_at_order(f, spec, spec.order);
  if (2 * spec.order > kMaxOrder) return prev;  // caller pinned the order
  for (int order = 2 * spec.order; order <= kMaxOrder; order *= 2) {
    const complex next = detail::integrate_at_order(f, spec, order);
    const double scale = std::max(1.0, std::abs(next));
    if (std::abs(next - prev) <= 1e-9 * scale) return next;
    prev = next;
  }
  throw NumericError(
      "integrate_phase_plane: order escalation exhausted without convergence");
}

// W(beta) = (1/pi^2) * integral of chi(alpha) e^{beta alpha* - beta* alpha}.
// The kernel is unimodular, so the result inherits chi's Gaussian envelope.
template <typename Chi>
double wigner_from_characteristic(Chi&& chi, complex beta,
                                  const QuadratureSpec& spec = {}) {
  const complex value = integrate_phase_plane(
      [&](complex alpha) {
        const complex phase = beta * std::conj(alpha) - std::conj(beta) * alpha;
        return chi(alpha) * std::exp(phase);
      },
      spec);
  const complex w = value / M_PI;
  if (std::abs(w.imag()) > 1e-8)
    throw InconsistencyError(
        "wigner_from_characteristic: imaginary residue " +
        std::to_string(w.imag()) + " exceeds 1e-8 (malformed characteristic "
        "function)");
  return w.real();
}

// Central-difference derivative of `order` 1 or 2 with Richardson
// extrapolation on step halving (error ratio 4 per level for both stencils).
template <typename F>
double derivative(F&& f, double x, int order, const DiffSpec& spec = {}) {
  spec.validate();
  if (order != 1 && order != 2)
    throw ValidationError("derivative: order must be 1 or 2");
  const int levels = spec.richardson_levels;
  std::vector<double> row(levels), prev_row(levels);
  for (int k = 0; k < levels; ++k) {
    const double h = spec.base_step / double(1 << k);
    double estimate;
    if (order == 1) {
      estimate = (f(x + h) - f(x - h)) / (2.0 * h);
    } else {
      estimate = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    }
    row[0] = estimate;
    for (int j = 1; j <= k; ++j) {
      const double factor = std::pow(4.0, j);
      row[j] = (factor * row[j - 1] - prev_row[j - 1]) / (factor - 1.0);
    }
    std::swap(row, prev_row);
  }
  return prev_row[levels - 1];
}

}  // namespace cvqt::numerics
