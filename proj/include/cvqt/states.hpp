#pragma once

// Closed-form state functions: characteristic functions, Wigner functions,
// quadrature amplitudes, photon-number distributions and squeezing for the
// TMSV / TPS resources and the coherent / squeezed-vacuum / cat-like inputs.

#include <cmath>
#include <complex>
#include <string>
#include <variant>

#include "cvqt/errors.hpp"

namespace cvqt::states {

using complex = std::complex<double>;

// Squeezing amplitude r and phase phi of the two-mode resource.
// gamma = e^{-2r} and eta = e^{i phi} tanh r are the derived forms the
// closed-form expressions are written in.
struct SqueezeParams {
  double r = 0.0;
  double phi = 0.0;

  SqueezeParams() = default;
  SqueezeParams(double r_, double phi_) : r(r_), phi(phi_) { validate(); }

  void validate() const {
    if (!(r >= 0.0)) throw ValidationError("SqueezeParams: r must be >= 0");
    if (r > 20.0)
      throw ValidationError("SqueezeParams: r > 20 is outside the supported "
                            "numerically stable range");
    if (!std::isfinite(phi))
      throw ValidationError("SqueezeParams: phi must be finite");
  }

  double gamma() const { return std::exp(-2.0 * r); }
  complex eta() const { return std::polar(std::tanh(r), phi); }
};

enum class ResourceKind { Tmsv, Tps };

inline void require_tps_domain(ResourceKind kind, const SqueezeParams& sq) {
  if (kind == ResourceKind::Tps && sq.r <= 0.0)
    throw DomainError(
        "TPS resource requires r > 0: photon subtraction from vacuum is "
        "impossible (heralding probability vanishes at r = 0)");
}

// ---- Input-state descriptors ------------------------------------------------

struct Coherent {
  complex alpha0{0.0, 0.0};
};

struct SqueezedVacuum {
  double rho = 0.0;
  double phi = 0.0;

  void validate() const {
    if (!(rho >= 0.0))
      throw ValidationError("SqueezedVacuum: rho must be >= 0");
  }
};

// Photon-subtracted squeezed vacuum a S(xi)|0>, the odd-cat approximation.
struct CatLike {
  double rho = 0.0;
  double phi = 0.0;

  void validate() const {
    if (!(rho >= 0.0)) throw ValidationError("CatLike: rho must be >= 0");
  }
};

// Ideal cat N^{-1}(|alpha0> + e^{i theta}|-alpha0>).
struct IdealCat {
  complex alpha0{1.0, 0.0};
  double theta = M_PI;

  // N^2 = 2(1 + e^{-2|alpha0|^2} cos theta); must be positive.
  double norm_squared() const {
    return 2.0 * (1.0 + std::exp(-2.0 * std::norm(alpha0)) * std::cos(theta));
  }
  void validate() const {
    if (!(norm_squared() > 1e-14))
      throw ValidationError(
          "IdealCat: vanishing normalization (alpha0 ~ 0 with theta ~ pi)");
  }
};

using InputKind = std::variant<Coherent, SqueezedVacuum, CatLike, IdealCat>;

// ---- Bogoliubov map ---------------------------------------------------------

// The symplectic map (alpha, beta*) -> (alpha~, beta~*) induced by two-mode
// squeezing; used by both resource Wigner functions.
struct BogoliubovMap {
  double ch, sh;
  complex phase;  // e^{i phi}

  explicit BogoliubovMap(const SqueezeParams& sq)
      : ch(std::cosh(sq.r)), sh(std::sinh(sq.r)), phase(std::polar(1.0, sq.phi)),
        r_(sq.r) {}

  std::pair<complex, complex> apply(complex alpha, complex beta) const {
    const complex at = alpha * ch - std::conj(beta) * phase * sh;
    const complex bt = beta * ch - std::conj(alpha) * phase * sh;
    return {at, bt};
  }

  // cosh^2 - sinh^2, evaluated as e^{-r} e^{r} to avoid catastrophic
  // cancellation at large r.
  double determinant() const { return std::exp(-r_) * std::exp(r_); }

 private:
  double r_;
};

// ---- Characteristic functions ----------------------------------------------

// chi(alpha1, alpha2) = <D(alpha1) (x) D(alpha2)> on the entangled resource.
// zeta_k = alpha_k cosh r - alpha_l* e^{i phi} sinh r.
inline complex chi_resource(ResourceKind kind, const SqueezeParams& sq,
                            complex a1, complex a2) {
  sq.validate();
  require_tps_domain(kind, sq);
  const double ch = std::cosh(sq.r), sh = std::sinh(sq.r);
  const complex phase = std::polar(1.0, sq.phi);
  const complex z1 = a1 * ch - std::conj(a2) * phase * sh;
  const complex z2 = a2 * ch - std::conj(a1) * phase * sh;
  const double gauss = std::exp(-0.5 * (std::norm(z1) + std::norm(z2)));
  if (kind == ResourceKind::Tmsv) return gauss;
  const double t = std::tanh(sq.r);
  const double bracket = 1.0 +
                         2.0 * t * std::real(std::conj(phase) * z1 * z2) +
                         t * t * (1.0 - std::norm(z1)) * (1.0 - std::norm(z2));
  return gauss * bracket / (1.0 + t * t);
}

// Single-mode input characteristic functions.  The ideal cat has no closed
// form in this module and is served numerically by the fock module.
inline complex chi_input(const InputKind& input, complex alpha) {
  return std::visit(
      [&](const auto& in) -> complex {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, Coherent>) {
          const complex cross = alpha * std::conj(in.alpha0);
          return std::exp(complex(-0.5 * std::norm(alpha), 2.0 * cross.imag()));
        } else if constexpr (std::is_same_v<T, SqueezedVacuum>) {
          in.validate();
          const complex at = std::conj(alpha) * std::cosh(in.rho) +
                             std::polar(1.0, -in.phi) * alpha *
                                 std::sinh(in.rho);
          return std::exp(complex(-0.5 * std::norm(at), 0.0));
        } else if constexpr (std::is_same_v<T, CatLike>) {
          in.validate();
          const complex at = alpha * std::cosh(in.rho) -
                             std::polar(1.0, in.phi) * std::conj(alpha) *
                                 std::sinh(in.rho);
          const double u = std::norm(at);
          return complex((1.0 - u) * std::exp(-0.5 * u), 0.0);
        } else {
          throw DomainError(
              "chi_input: the ideal cat has no closed-form characteristic "
              "function; use fock::numeric_characteristic");
        }
      },
      input);
}

// ---- Wigner functions -------------------------------------------------------

inline double wigner_resource(ResourceKind kind, const SqueezeParams& sq,
                              complex alpha, complex beta) {
  sq.validate();
  require_tps_domain(kind, sq);
  const BogoliubovMap map(sq);
  const auto [at, bt] = map.apply(alpha, beta);
  const double gauss =
      (4.0 / (M_PI * M_PI)) * std::exp(-2.0 * (std::norm(at) + std::norm(bt)));
  if (kind == ResourceKind::Tmsv) return gauss;
  const double t = std::tanh(sq.r);
  const double bracket =
      1.0 + 8.0 * t * std::real(std::conj(map.phase) * at * bt) +
      t * t * (4.0 * std::norm(at) - 1.0) * (4.0 * std::norm(bt) - 1.0);
  return gauss * bracket / (1.0 + t * t);
}

// Wigner function of the cat-like state: (2/pi)(4|alpha~|^2 - 1)e^{-2|alpha~|^2}.
inline double wigner_catlike(double rho, double phi, complex alpha) {
  CatLike in{rho, phi};
  in.validate();
  const complex at = alpha * std::cosh(rho) -
                     std::polar(1.0, phi) * std::conj(alpha) * std::sinh(rho);
  const double u = std::norm(at);
  return (2.0 / M_PI) * (4.0 * u - 1.0) * std::exp(-2.0 * u);
}

// ---- Quadrature amplitudes --------------------------------------------------

// Two-mode position-representation amplitude psi(x_a, x_b).  Rotated
// EPR coordinates are reached via x_a = (x1+x2)/sqrt(2), x_b = (x1-x2)/sqrt(2).
inline complex quadrature_amplitude(ResourceKind kind, const SqueezeParams& sq,
                                    double xa, double xb) {
  sq.validate();
  require_tps_domain(kind, sq);
  const complex eta = sq.eta();
  const complex eta2 = eta * eta;
  const double ch = std::cosh(sq.r);
  const complex one_minus = 1.0 - eta2;
  const double s2 = xa * xa + xb * xb;
  const complex pref = 1.0 / std::sqrt(one_minus * M_PI * ch * ch);
  const complex psi_xi =
      pref * std::exp(-0.5 * s2 + (2.0 * xa * xb * eta - s2 * eta2) / one_minus);
  if (kind == ResourceKind::Tmsv) return psi_xi;
  // Analytic eta-derivative of log psi_xi; the prefactor tanh(r)/N keeps the
  // amplitude (not just its modulus) aligned with the Fock expansion.
  const double t = std::tanh(sq.r);
  const double norm = std::sinh(sq.r) * ch * std::sqrt(1.0 + t * t);
  const complex dlog = eta / one_minus +
                       (2.0 * xa * xb * (1.0 + eta2) - 2.0 * s2 * eta) /
                           (one_minus * one_minus);
  return (t / norm) * (1.0 + eta * dlog) * psi_xi;
}

// ---- Photon statistics and squeezing ----------------------------------------

// P(n): probability of the |n,n> component.
inline double photon_number_prob(ResourceKind kind, const SqueezeParams& sq,
                                 int n) {
  sq.validate();
  require_tps_domain(kind, sq);
  if (n < 0) throw ValidationError("photon_number_prob: n must be >= 0");
  const double t = std::tanh(sq.r);
  const double ch = std::cosh(sq.r);
  // Evaluate in log space so large n at large r cannot overflow.
  const double log_tn = (n == 0) ? 0.0 : 2.0 * n * std::log(t);
  if (kind == ResourceKind::Tmsv) {
    if (sq.r == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(log_tn - 2.0 * std::log(ch));
  }
  return (n + 1.0) * (n + 1.0) *
         std::exp(log_tn - 6.0 * std::log(ch)) / (1.0 + t * t);
}

// Squeezing S_theta at the optimal angle theta = phi/2 + pi/2 of the
// collective mode d = (a+b)/sqrt(2); both forms are <= 0.
inline double squeezing_closed(ResourceKind kind, double r) {
  if (!(r >= 0.0)) throw DomainError("squeezing_closed: r must be >= 0");
  if (kind == ResourceKind::Tps && r <= 0.0)
    throw DomainError("squeezing_closed: TPS requires r > 0");
  const double tmsv = 0.5 * std::expm1(-2.0 * r);  // -(1 - e^{-2r})/2
  if (kind == ResourceKind::Tmsv) return tmsv;
  return tmsv * (2.0 - std::tanh(2.0 * r));
}

inline const char* kind_name(ResourceKind kind) {
  return kind == ResourceKind::Tmsv ? "tmsv" : "tps";
}

}  // namespace cvqt::states
