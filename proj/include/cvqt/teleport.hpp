#pragma once

// VBK teleportation at the characteristic-function level: output
// characteristic function chi_out = chi_in * chi_EPR, fidelities by integral
// and closed form (including the Gamma-hat operator that maps TMSV results to
// TPS results), output Wigner fields and the negativity threshold scans.

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "cvqt/errors.hpp"
#include "cvqt/numerics.hpp"
#include "cvqt/states.hpp"

namespace cvqt::teleport {

using complex = std::complex<double>;
using states::ResourceKind;
using states::SqueezeParams;

enum class FidelityRoute { ClosedForm, Integral, GammaOperator };

struct FidelityResult {
  double value = 0.0;
  FidelityRoute route = FidelityRoute::Integral;
  double est_error = 0.0;
  // Set when a printed closed form disagrees with the integral beyond
  // tolerance (the documented Table I squeezed-vacuum divergence).
  bool flagged = false;
};

// One teleportation request: input state, resource and numerical controls.
// The default resource phase phi = 0 is the optimal phase in this
// convention; it reproduces every headline value and is overridable.
struct TeleportJob {
  states::InputKind input = states::Coherent{};
  ResourceKind resource = ResourceKind::Tmsv;
  SqueezeParams sq{0.5, 0.0};
  numerics::QuadratureSpec quad{};
  numerics::Grid2D grid{3.0, 121};

  void validate() const {
    sq.validate();
    states::require_tps_domain(resource, sq);
    grid.validate();
  }
};

namespace detail {

// Gaussian envelope of |chi_in(alpha)|^2 = e^{-(dx x^2 + dy y^2)} in the
// frame rotated by `angle`: squeezed inputs decay like e^{+-2 rho} along
// their principal axes, so integrands must be sampled anisotropically.
struct InputEnvelope {
  double dx = 1.0;
  double dy = 1.0;
  double angle = 0.0;
};

inline InputEnvelope input_envelope(const states::InputKind& input) {
  return std::visit(
      [](const auto& in) -> InputEnvelope {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, states::Coherent>) {
          return {1.0, 1.0, 0.0};
        } else if constexpr (std::is_same_v<T, states::SqueezedVacuum>) {
          // chi uses the plus-sign map: the real axis of the rotated frame
          // decays fast (e^{2 rho}), the imaginary axis slowly.
          return {std::exp(2.0 * in.rho), std::exp(-2.0 * in.rho),
                  in.phi / 2.0};
        } else if constexpr (std::is_same_v<T, states::CatLike>) {
          // chi uses the minus-sign map: the axes are swapped.
          return {std::exp(-2.0 * in.rho), std::exp(2.0 * in.rho),
                  in.phi / 2.0};
        } else {
          throw DomainError(
              "teleport: the ideal cat input has no closed-form "
              "characteristic function (use the fock module)");
        }
      },
      input);
}

}  // namespace detail

// chi_out(alpha) = chi_in(alpha) * chi_EPR(alpha*, alpha).
inline complex chi_output(const TeleportJob& job, complex alpha) {
  job.validate();
  return states::chi_input(job.input, alpha) *
         states::chi_resource(job.resource, job.sq, std::conj(alpha), alpha);
}

// F = (1/pi) Integral d^2alpha chi_in(alpha) chi_in(-alpha) chi_EPR(-alpha*, -alpha).
inline FidelityResult fidelity_numeric(const TeleportJob& job) {
  job.validate();
  // Integrate in the input's rotated principal frame, where the integrand's
  // Gaussian envelope e^{-(gamma + e^{+-2 rho}) ...} is axis-aligned.
  const detail::InputEnvelope env = detail::input_envelope(job.input);
  numerics::QuadratureSpec spec = job.quad;
  spec.damping = job.sq.gamma() + env.dx;
  spec.damping_y = job.sq.gamma() + env.dy;
  const complex frame = std::polar(1.0, env.angle);
  const complex f = numerics::integrate_phase_plane(
      [&](complex u) {
        const complex alpha = frame * u;
        return states::chi_input(job.input, alpha) *
               states::chi_input(job.input, -alpha) *
               states::chi_resource(job.resource, job.sq, -std::conj(alpha),
                                    -alpha);
      },
      spec);
  if (std::abs(f.imag()) > 1e-8)
    throw InconsistencyError(
        "fidelity_numeric: imaginary residue exceeds 1e-8");
  return {f.real(), FidelityRoute::Integral, 1e-9, false};
}

// Gamma-hat applied to a scalar function of gamma:
// f + [g^2(1+g)^2/(2(1+g^2))] ( ((1-g)/(1+g))^2 f'' - 4(1-g)/(1+g)^2 f' ).
template <typename F>
double gamma_apply(F&& f, double gamma, const numerics::DiffSpec& spec = {}) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw DomainError("gamma_apply: gamma must lie strictly inside (0,1)");
  // Shrink the stencil near the domain edges so gamma +/- h stays in (0,1).
  numerics::DiffSpec eff = spec;
  eff.base_step = std::min({spec.base_step, 0.5 * gamma, 0.5 * (1.0 - gamma)});
  if (!(eff.base_step > 1e-6))
    throw DomainError(
        "gamma_apply: gamma too close to the (0,1) boundary for a stable "
        "differentiation stencil");
  eff.validate();
  const double f1 = numerics::derivative(f, gamma, 1, eff);
  const double f2 = numerics::derivative(f, gamma, 2, eff);
  const double g = gamma;
  const double pref = g * g * (1.0 + g) * (1.0 + g) / (2.0 * (1.0 + g * g));
  const double c2 = (1.0 - g) / (1.0 + g);
  return f(g) + pref * (c2 * c2 * f2 - 4.0 * (1.0 - g) / ((1.0 + g) * (1.0 + g)) * f1);
}

// ---- Table I / Eq. (32) closed forms ---------------------------------------

inline double coherent_f1(double gamma) { return 1.0 / (1.0 + gamma); }

inline double coherent_f2(double gamma) {
  const double g = gamma;
  return (1.0 + 2.0 * g + 5.0 * g * g) /
         ((1.0 + g) * (1.0 + g) * (1.0 + g) * (1.0 + g * g));
}

inline double sqv_f1(double rho, double gamma) {
  return 1.0 / std::sqrt(1.0 + 2.0 * gamma * std::cosh(2.0 * rho) +
                         gamma * gamma);
}

// The squeezed-vacuum F2 entry exactly as printed (the gamma^1 coefficient
// c1 appears without a factor of gamma); known to disagree with the
// integral -- reported with a consistency flag, never silently preferred.
inline double sqv_f2_printed(double rho, double gamma) {
  const double g = gamma;
  const double ch2 = std::cosh(2.0 * rho), ch4 = std::cosh(4.0 * rho);
  const double c4 = 3.0 * ch4 + 8.0 * ch2 + 9.0;
  const double c3 = 2.0 * ch4 + 32.0 * ch2 + 14.0;
  const double c2 = 11.0 * ch4 + 8.0 * ch2 + 21.0;
  const double c1 = 16.0 * ch2;
  const double c0 = 4.0;
  const double poly = c4 * g * g * g * g + c3 * g * g * g + c2 * g * g + c1 + c0;
  const double root = std::sqrt(1.0 + 2.0 * g * ch2 + g * g);
  return poly / (4.0 * (1.0 + g) * (1.0 + g) * root * root * root * root * root);
}

inline double cat_f1(double rho, double gamma) {
  const double g = gamma;
  const double ch2 = std::cosh(2.0 * rho), ch4 = std::cosh(4.0 * rho);
  const double d = 1.0 + 2.0 * g * ch2 + g * g;
  const double num = 2.0 + 4.0 * g * ch2 + (1.0 + 3.0 * ch4) * g * g +
                     4.0 * g * g * g * ch2 + 2.0 * g * g * g * g;
  return num / (2.0 * std::pow(d, 2.5));
}

inline double cat_f2(double rho, double gamma,
                     const numerics::DiffSpec& spec = {}) {
  return gamma_apply([&](double g) { return cat_f1(rho, g); }, gamma, spec);
}

// Closed-form (or Gamma-hat) fidelity for the implemented inputs.
inline FidelityResult fidelity_closed(const TeleportJob& job) {
  job.validate();
  const double g = job.sq.gamma();
  const bool tps = job.resource == ResourceKind::Tps;
  return std::visit(
      [&](const auto& in) -> FidelityResult {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, states::Coherent>) {
          return {tps ? coherent_f2(g) : coherent_f1(g),
                  FidelityRoute::ClosedForm, 0.0, false};
        } else if constexpr (std::is_same_v<T, states::SqueezedVacuum>) {
          if (!tps) return {sqv_f1(in.rho, g), FidelityRoute::ClosedForm, 0.0,
                            false};
          const double printed = sqv_f2_printed(in.rho, g);
          const double integral = fidelity_numeric(job).value;
          return {printed, FidelityRoute::ClosedForm,
                  std::abs(printed - integral),
                  std::abs(printed - integral) > 1e-6};
        } else if constexpr (std::is_same_v<T, states::CatLike>) {
          if (!tps) return {cat_f1(in.rho, g), FidelityRoute::ClosedForm, 0.0,
                            false};
          return {cat_f2(in.rho, g), FidelityRoute::GammaOperator, 1e-8,
                  false};
        } else {
          throw DomainError(
              "fidelity_closed: no closed form for the ideal cat input");
        }
      },
      job.input);
}

// ---- Output Wigner functions ------------------------------------------------

namespace detail {

// Closed-form W1 (cat-like input, TMSV resource at the optimal phase).
// Derived from the Gaussian moments of the Eq. (23) transform; matches the
// numeric Fourier route everywhere and integrates to 1, unlike the printed
// Eq. (36) bracket (see README).
inline double w1_catlike(complex alpha, double rho, double gamma) {
  const double a = std::exp(-2.0 * rho) / 2.0 + gamma;
  const double b = std::exp(2.0 * rho) / 2.0 + gamma;
  const double b1 = alpha.real(), b2 = alpha.imag();
  const double bracket =
      1.0 - std::exp(-2.0 * rho) * (0.5 / a - b2 * b2 / (a * a)) -
      std::exp(2.0 * rho) * (0.5 / b - b1 * b1 / (b * b));
  return (2.0 / (M_PI * std::sqrt(4.0 * a * b))) *
         std::exp(-b2 * b2 / a - b1 * b1 / b) * bracket;
}

}  // namespace detail

// Numeric route: Eq. (23) applied to chi_output.
inline double wigner_output_numeric(const TeleportJob& job, complex alpha) {
  job.validate();
  // chi_output carries one chi_in factor (envelope constants halved) and the
  // unimodular Fourier kernel; rotating the integration variable into the
  // input frame rotates the evaluation point the opposite way.
  const detail::InputEnvelope env = detail::input_envelope(job.input);
  numerics::QuadratureSpec spec = job.quad;
  spec.damping = job.sq.gamma() + 0.5 * env.dx;
  spec.damping_y = job.sq.gamma() + 0.5 * env.dy;
  const complex frame = std::polar(1.0, env.angle);
  return numerics::wigner_from_characteristic(
      [&](complex u) { return chi_output(job, frame * u); },
      std::conj(frame) * alpha, spec);
}

// Closed-form route for cat-like inputs at resource phase 0 (W2 = Gamma-hat
// of W1); numeric route otherwise.
inline double wigner_output(const TeleportJob& job, complex alpha) {
  job.validate();
  const auto* cat = std::get_if<states::CatLike>(&job.input);
  if (cat == nullptr || job.sq.phi != 0.0)
    return wigner_output_numeric(job, alpha);
  // A nonzero input phase rotates phase space: W(alpha; rho, phi) =
  // W(e^{-i phi/2} alpha; rho, 0).
  const complex rotated = std::polar(1.0, -cat->phi / 2.0) * alpha;
  const double g = job.sq.gamma();
  if (job.resource == ResourceKind::Tmsv)
    return detail::w1_catlike(rotated, cat->rho, g);
  return gamma_apply(
      [&](double gg) { return detail::w1_catlike(rotated, cat->rho, gg); }, g);
}

// ---- Threshold scans ---------------------------------------------------

struct ScanSeries {
  std::vector<double> r;
  std::vector<double> value;
};

// W_out(0) as a function of the resource squeezing r.
inline ScanSeries w0_scan(const states::CatLike& input, ResourceKind resource,
                          double r_min, double r_max, int steps) {
  if (!(r_min > 0.0 && r_max > r_min && steps >= 2))
    throw ValidationError("w0_scan: need 0 < r_min < r_max and steps >= 2");
  ScanSeries series;
  for (int i = 0; i < steps; ++i) {
    const double r = r_min + (r_max - r_min) * i / (steps - 1);
    TeleportJob job{input, resource, SqueezeParams{r, 0.0}};
    series.r.push_back(r);
    series.value.push_back(wigner_output(job, complex(0.0, 0.0)));
  }
  return series;
}

// Locate the sign change of a scan by bisection on the continuous function;
// absent crossing -> nullopt (not an error).
inline std::optional<double> zero_crossing(
    const ScanSeries& series, const std::function<double(double)>& f,
    double tol = 1e-3) {
  for (size_t i = 1; i < series.r.size(); ++i) {
    if (series.value[i - 1] == 0.0) return series.r[i - 1];
    if (series.value[i - 1] * series.value[i] < 0.0) {
      double lo = series.r[i - 1], hi = series.r[i];
      double flo = series.value[i - 1];
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if (flo * fmid < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fmid;
        }
      }
      return 0.5 * (lo + hi);
    }
  }
  return std::nullopt;
}

// Convenience: threshold r* where W_out(0) crosses zero for a cat-like input.
inline std::optional<double> threshold_r(const states::CatLike& input,
                                         ResourceKind resource,
                                         double r_min = 0.05,
                                         double r_max = 1.0, int steps = 40) {
  const ScanSeries series = w0_scan(input, resource, r_min, r_max, steps);
  return zero_crossing(series, [&](double r) {
    TeleportJob job{input, resource, SqueezeParams{r, 0.0}};
    return wigner_output(job, complex(0.0, 0.0));
  });
}

// Quantumness margin |chi_EPR(alpha*, alpha)|^2 - e^{-|alpha|^2/2}.
inline double benchmark_margin(ResourceKind resource, const SqueezeParams& sq,
                               complex alpha) {
  const complex chi =
      states::chi_resource(resource, sq, std::conj(alpha), alpha);
  return std::norm(chi) - std::exp(-0.5 * std::norm(alpha));
}

}  // namespace cvqt::teleport
