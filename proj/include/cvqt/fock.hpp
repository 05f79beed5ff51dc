#pragma once

// Independent truncated Fock-space oracle: state builders, the heralded
// photon-subtraction scheme, and numeric characteristic / Wigner / quadrature
// / squeezing / log-negativity evaluations used to cross-validate every
// closed form in the states and entanglement modules.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "cvqt/entanglement.hpp"
#include "cvqt/errors.hpp"
#include "cvqt/states.hpp"

namespace cvqt::fock {

using complex = std::complex<double>;
using states::ResourceKind;
using states::SqueezeParams;
using entanglement::LogNegativity;

inline constexpr int kMinCutoff = 20;
inline constexpr int kMaxCutoff = 400;
inline constexpr double kTailInvariant = 1e-8;  // mass in top two Fock levels

// A numeric result plus a truncation-reliability flag (the requested point
// was inside the window where the cutoff is trustworthy).
struct NumericSample {
  complex value;
  bool accurate = true;
};

// Truncated one- or two-mode state.  Two-mode amplitudes are stored as the
// (cutoff+1) x (cutoff+1) matrix psi(n, k); one-mode states as a column.
class FockState {
 public:
  static FockState one_mode(Eigen::VectorXcd amps) {
    FockState s;
    s.modes_ = 1;
    s.amps_ = std::move(amps);
    return s;
  }
  static FockState two_mode(Eigen::MatrixXcd amps) {
    if (amps.rows() != amps.cols())
      throw ValidationError("FockState: two-mode amplitudes must be square");
    FockState s;
    s.modes_ = 2;
    s.amps_ = std::move(amps);
    return s;
  }

  int modes() const { return modes_; }
  int cutoff() const { return int(amps_.rows()) - 1; }
  const Eigen::MatrixXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd vector() const { return amps_.col(0); }

  complex at(int n) const { return amps_(n, 0); }
  complex at(int n, int k) const { return amps_(n, k); }

  double norm() const { return amps_.norm(); }

  FockState& normalize() {
    const double n = norm();
    if (!(n > 0.0)) throw NumericError("FockState: cannot normalize null state");
    amps_ /= n;
    return *this;
  }

  // Probability mass in the top two Fock levels (per mode for two-mode states).
  double tail_mass() const {
    const int n = int(amps_.rows());
    if (n < 3) return amps_.squaredNorm();
    if (modes_ == 1) return amps_.bottomRows(2).squaredNorm();
    return amps_.bottomRows(2).squaredNorm() +
           amps_.rightCols(2).squaredNorm() -
           amps_.bottomRightCorner(2, 2).squaredNorm();
  }

 private:
  int modes_ = 1;
  Eigen::MatrixXcd amps_;
};

// ---- Cutoff selection ---------------------------------------------------

// Smallest N with TMSV tail mass tanh^{2N+2} r below `tail`, clamped to
// [20, 400].  (The geometric tail sums exactly to tanh^{2N+2} r.)
inline int auto_cutoff(double r, double tail = 1e-12) {
  if (r <= 0.0) return kMinCutoff;
  const double t = std::tanh(r);
  const int n = int(std::ceil(std::log(tail) / (2.0 * std::log(t)))) ;
  return std::clamp(n, kMinCutoff, kMaxCutoff);
}

// Cutoff for log-negativity cross-checks: the Schmidt-sum tail must be far
// below the 1e-6 agreement tolerance, which needs tanh^N r < 1e-10 (1-tanh r).
inline int logneg_cutoff(double r) {
  if (r <= 0.0) return kMinCutoff;
  const double t = std::tanh(r);
  const int n =
      int(std::ceil(std::log(1e-10 * (1.0 - t)) / std::log(t)));
  return std::clamp(n, kMinCutoff, kMaxCutoff);
}

namespace detail {

inline double lg(double x) { return std::lgamma(x); }

// Retry a builder with growing cutoff until the truncation-health invariant
// holds.  `fill(N)` returns the normalized state at cutoff N.
template <typename Fill>
FockState build_checked(int cutoff, Fill&& fill) {
  int n = std::clamp(cutoff, kMinCutoff, kMaxCutoff);
  for (;;) {
    FockState s = fill(n);
    if (s.tail_mass() < kTailInvariant) return s;
    if (n >= kMaxCutoff)
      throw TruncationError(
          "build_state: tail-mass invariant unsatisfiable at cutoff 400");
    n = std::min(kMaxCutoff, n * 2);
  }
}

inline Eigen::VectorXcd coherent_vec(complex alpha0, int n_levels) {
  Eigen::VectorXcd v(n_levels);
  const double log_pref = -0.5 * std::norm(alpha0);
  const double mag = std::abs(alpha0);
  const double arg = std::arg(alpha0);
  for (int k = 0; k < n_levels; ++k) {
    const double logmag =
        log_pref + (mag > 0.0 ? k * std::log(mag) : (k == 0 ? 0.0 : -1e308)) -
        0.5 * lg(k + 1.0);
    v(k) = (mag == 0.0 && k > 0) ? complex(0.0, 0.0)
                                 : std::polar(std::exp(logmag), k * arg);
  }
  return v;
}

// Single-mode squeezed vacuum S(rho e^{i phi})|0> in the convention whose
// characteristic function is e^{-|alpha cosh rho + e^{i phi} alpha* sinh rho|^2/2}:
// c_{2n} = (sign e^{i phi} tanh rho)^n sqrt((2n)!)/(2^n n!) / sqrt(cosh rho).
inline Eigen::VectorXcd squeezed_vec(double rho, double phi, int n_levels,
                                     double sign) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_levels);
  const double t = std::tanh(rho);
  for (int m = 0; m < n_levels; m += 2) {
    const int n = m / 2;
    const double logmag = (t > 0.0 ? n * std::log(t) : (n == 0 ? 0.0 : -1e308)) +
                          0.5 * lg(m + 1.0) - lg(n + 1.0) -
                          n * std::numbers::ln2 - 0.5 * std::log(std::cosh(rho));
    if (t == 0.0 && n > 0) continue;
    v(m) = std::polar(std::exp(logmag), n * phi) * std::pow(sign, n);
  }
  return v;
}

}  // namespace detail

// ---- Builders -------------------------------------------------------------

// Descriptor tags for the two entangled resources and the photon-added
// comparison state; single-mode inputs reuse the states-module descriptors.
struct Tmsv { SqueezeParams sq; };
struct Tps { SqueezeParams sq; };
struct PhotonAdded { SqueezeParams sq; };  // a^dagger applied to one TMSV mode

using StateDescriptor =
    std::variant<Tmsv, Tps, PhotonAdded, states::Coherent,
                 states::SqueezedVacuum, states::CatLike, states::IdealCat>;

inline FockState build_tmsv(const SqueezeParams& sq, int cutoff = 0) {
  sq.validate();
  if (cutoff == 0) cutoff = auto_cutoff(sq.r);
  return detail::build_checked(cutoff, [&](int n_max) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
    const double t = std::tanh(sq.r);
    for (int n = 0; n <= n_max; ++n) {
      if (t == 0.0 && n > 0) break;
      m(n, n) = std::polar(n == 0 ? 1.0 : std::pow(t, n), n * sq.phi);
    }
    return FockState::two_mode(std::move(m)).normalize();
  });
}

inline FockState build_tps(const SqueezeParams& sq, int cutoff = 0) {
  sq.validate();
  states::require_tps_domain(ResourceKind::Tps, sq);
  if (cutoff == 0) cutoff = auto_cutoff(sq.r);
  return detail::build_checked(cutoff, [&](int n_max) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
    const double t = std::tanh(sq.r);
    for (int n = 0; n <= n_max; ++n)
      m(n, n) = (n + 1.0) * std::polar(std::pow(t, n), n * sq.phi);
    return FockState::two_mode(std::move(m)).normalize();
  });
}

inline FockState build_photon_added(const SqueezeParams& sq, int cutoff = 0) {
  sq.validate();
  if (!(sq.r > 0.0))
    throw DomainError("build_photon_added: requires r > 0");
  if (cutoff == 0) cutoff = auto_cutoff(sq.r);
  return detail::build_checked(cutoff, [&](int n_max) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
    const double t = std::tanh(sq.r);
    // a^dagger on mode a: |n,n> -> sqrt(n+1) |n+1,n>.
    for (int n = 0; n + 1 <= n_max; ++n)
      m(n + 1, n) =
          std::sqrt(n + 1.0) * std::polar(std::pow(t, n), n * sq.phi);
    return FockState::two_mode(std::move(m)).normalize();
  });
}

inline FockState build_coherent(complex alpha0, int cutoff = 0) {
  if (cutoff == 0) {
    const double mean = std::norm(alpha0);
    cutoff = int(std::ceil(mean + 10.0 * std::sqrt(mean + 1.0) + 10.0));
  }
  return detail::build_checked(cutoff, [&](int n_max) {
    return FockState::one_mode(detail::coherent_vec(alpha0, n_max + 1))
        .normalize();
  });
}

inline FockState build_squeezed_vacuum(double rho, double phi,
                                       int cutoff = 0) {
  states::SqueezedVacuum{rho, phi}.validate();
  if (cutoff == 0) cutoff = 2 * auto_cutoff(rho);
  return detail::build_checked(cutoff, [&](int n_max) {
    return FockState::one_mode(detail::squeezed_vec(rho, phi, n_max + 1, -1.0))
        .normalize();
  });
}

// Cat-like state a S(xi)|0>, normalized.  The base squeezed vacuum carries
// the opposite squeeze sign so that the chi_input(CatLike) closed form
// (tilde map with the minus sign) describes exactly this state.
inline FockState build_catlike(double rho, double phi, int cutoff = 0) {
  states::CatLike{rho, phi}.validate();
  if (!(rho > 0.0))
    throw DomainError("build_catlike: rho must be > 0 (a S(0)|0> is null)");
  if (cutoff == 0) cutoff = 2 * auto_cutoff(rho);
  return detail::build_checked(cutoff, [&](int n_max) {
    Eigen::VectorXcd base = detail::squeezed_vec(rho, phi, n_max + 2, +1.0);
    Eigen::VectorXcd v(n_max + 1);
    for (int n = 0; n <= n_max; ++n) v(n) = std::sqrt(n + 1.0) * base(n + 1);
    return FockState::one_mode(std::move(v)).normalize();
  });
}

inline FockState build_ideal_cat(complex alpha0, double theta, int cutoff = 0) {
  states::IdealCat{alpha0, theta}.validate();
  if (cutoff == 0) {
    const double mean = std::norm(alpha0);
    cutoff = int(std::ceil(mean + 10.0 * std::sqrt(mean + 1.0) + 10.0));
  }
  return detail::build_checked(cutoff, [&](int n_max) {
    Eigen::VectorXcd v = detail::coherent_vec(alpha0, n_max + 1) +
                         std::polar(1.0, theta) *
                             detail::coherent_vec(-alpha0, n_max + 1);
    return FockState::one_mode(std::move(v)).normalize();
  });
}

inline FockState build_state(const StateDescriptor& desc, int cutoff = 0) {
  return std::visit(
      [&](const auto& d) -> FockState {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Tmsv>) return build_tmsv(d.sq, cutoff);
        else if constexpr (std::is_same_v<T, Tps>) return build_tps(d.sq, cutoff);
        else if constexpr (std::is_same_v<T, PhotonAdded>)
          return build_photon_added(d.sq, cutoff);
        else if constexpr (std::is_same_v<T, states::Coherent>)
          return build_coherent(d.alpha0, cutoff);
        else if constexpr (std::is_same_v<T, states::SqueezedVacuum>)
          return build_squeezed_vacuum(d.rho, d.phi, cutoff);
        else if constexpr (std::is_same_v<T, states::CatLike>)
          return build_catlike(d.rho, d.phi, cutoff);
        else
          return build_ideal_cat(d.alpha0, d.theta, cutoff);
      },
      desc);
}

// ---- Heralded photon subtraction -------------------------------------------

struct HeraldingSetup {
  double transmissivity = 0.99;  // intensity transmissivity T per tap
  int cutoff = 0;

  void validate() const {
    if (!(transmissivity > 0.5 && transmissivity < 1.0))
      throw ValidationError(
          "HeraldingSetup: transmissivity must lie in (0.5, 1)");
  }
};

// Couple each TMSV mode to a vacuum ancilla through a beamsplitter of
// transmissivity T and project both ancillas on |1>.  On the |n,n> component
// the tap amplitude per mode is sqrt(n) T^{(n-1)/2} sqrt(1-T), so the
// heralded amplitude is c_n n T^{n-1} (1-T) on |n-1, n-1>.
inline std::pair<FockState, double> herald_tps(const SqueezeParams& sq,
                                               const HeraldingSetup& setup) {
  sq.validate();
  setup.validate();
  if (!(sq.r > 0.0)) throw DomainError("herald_tps: requires r > 0");
  const int cutoff = setup.cutoff > 0 ? setup.cutoff : auto_cutoff(sq.r);
  const double t = std::tanh(sq.r), ch = std::cosh(sq.r);
  const double trans = setup.transmissivity;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff + 1; ++n) {
    const complex c_n = std::polar(std::pow(t, n) / ch, n * sq.phi);
    if (n - 1 <= cutoff)
      m(n - 1, n - 1) = c_n * double(n) * std::pow(trans, n - 1) * (1.0 - trans);
  }
  const double prob = m.squaredNorm();
  if (prob < 1e-30)
    throw NumericError("herald_tps: vanishing heralding probability");
  FockState s = FockState::two_mode(std::move(m));
  s.normalize();
  return {std::move(s), prob};
}

// ---- Displacement operator ---------------------------------------------

// <m|D(alpha)|n> via the associated-Laguerre closed form, with the factorial
// ratio taken in log space.
inline complex displacement_matrix_element(int m, int n, complex alpha) {
  if (m < 0 || n < 0)
    throw ValidationError("displacement_matrix_element: indices must be >= 0");
  const double u = std::norm(alpha);
  const int lo = std::min(m, n), hi = std::max(m, n);
  const int d = hi - lo;
  const double log_ratio = 0.5 * (detail::lg(lo + 1.0) - detail::lg(hi + 1.0));
  const double laguerre = std::assoc_laguerre(unsigned(lo), unsigned(d), u);
  const complex z = (m >= n) ? alpha : -std::conj(alpha);
  complex zpow(1.0, 0.0);
  for (int k = 0; k < d; ++k) zpow *= z;
  return std::exp(log_ratio - 0.5 * u) * zpow * laguerre;
}

inline Eigen::MatrixXcd displacement_matrix(complex alpha, int n_levels) {
  Eigen::MatrixXcd d(n_levels, n_levels);
  for (int m = 0; m < n_levels; ++m)
    for (int n = 0; n < n_levels; ++n)
      d(m, n) = displacement_matrix_element(m, n, alpha);
  return d;
}

// ---- Numeric evaluations ---------------------------------------------

// <psi| D(alpha) |psi> for one-mode states.
inline NumericSample numeric_characteristic(const FockState& s, complex alpha) {
  if (s.modes() != 1)
    throw ValidationError("numeric_characteristic: one-mode overload");
  const int n_levels = s.cutoff() + 1;
  const Eigen::VectorXcd v = s.vector();
  const complex value = v.dot(displacement_matrix(alpha, n_levels) * v);
  return {value, std::norm(alpha) <= 0.25 * s.cutoff()};
}

// <psi| D(alpha1) (x) D(alpha2) |psi> for two-mode states.
inline NumericSample numeric_characteristic(const FockState& s, complex alpha1,
                                            complex alpha2) {
  if (s.modes() != 2)
    throw ValidationError("numeric_characteristic: two-mode overload");
  const int n_levels = s.cutoff() + 1;
  const Eigen::MatrixXcd d1 = displacement_matrix(alpha1, n_levels);
  const Eigen::MatrixXcd d2 = displacement_matrix(alpha2, n_levels);
  const Eigen::MatrixXcd image = d1 * s.amplitudes() * d2.transpose();
  const complex value = (s.amplitudes().conjugate().cwiseProduct(image)).sum();
  const bool ok = std::norm(alpha1) <= 0.25 * s.cutoff() &&
                  std::norm(alpha2) <= 0.25 * s.cutoff();
  return {value, ok};
}

// Wigner via the displaced-parity expectation: W = (2/pi)^modes <Pi(alpha)>.
inline double numeric_wigner(const FockState& s, complex alpha) {
  if (s.modes() != 1)
    throw ValidationError("numeric_wigner: one-mode overload");
  const int n_levels = s.cutoff() + 1;
  const Eigen::VectorXcd u = displacement_matrix(-alpha, n_levels) * s.vector();
  double acc = 0.0;
  for (int n = 0; n < n_levels; ++n)
    acc += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(u(n));
  return (2.0 / M_PI) * acc;
}

inline double numeric_wigner(const FockState& s, complex alpha, complex beta) {
  if (s.modes() != 2)
    throw ValidationError("numeric_wigner: two-mode overload");
  const int n_levels = s.cutoff() + 1;
  const Eigen::MatrixXcd u = displacement_matrix(-alpha, n_levels) *
                             s.amplitudes() *
                             displacement_matrix(-beta, n_levels).transpose();
  double acc = 0.0;
  for (int n = 0; n < n_levels; ++n)
    for (int k = 0; k < n_levels; ++k)
      acc += ((n + k) % 2 == 0 ? 1.0 : -1.0) * std::norm(u(n, k));
  return (4.0 / (M_PI * M_PI)) * acc;
}

namespace detail {

// Hermite functions h_n(x) = <x|n> by upward recurrence.
inline Eigen::VectorXd hermite_functions(double x, int n_levels) {
  Eigen::VectorXd h(n_levels);
  h(0) = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (n_levels > 1) h(1) = std::sqrt(2.0) * x * h(0);
  for (int n = 1; n + 1 < n_levels; ++n)
    h(n + 1) = std::sqrt(2.0 / (n + 1.0)) * x * h(n) -
               std::sqrt(n / (n + 1.0)) * h(n - 1);
  return h;
}

}  // namespace detail

// Position-representation amplitude psi(x_a [, x_b]).
inline NumericSample numeric_quadrature(const FockState& s, double xa) {
  if (s.modes() != 1)
    throw ValidationError("numeric_quadrature: one-mode overload");
  const int n_levels = s.cutoff() + 1;
  const complex value =
      detail::hermite_functions(xa, n_levels).cast<complex>().dot(s.vector());
  return {value, xa * xa <= 2.0 * s.cutoff()};
}

inline NumericSample numeric_quadrature(const FockState& s, double xa,
                                        double xb) {
  if (s.modes() != 2)
    throw ValidationError("numeric_quadrature: two-mode overload");
  const int n_levels = s.cutoff() + 1;
  const Eigen::VectorXcd ha =
      detail::hermite_functions(xa, n_levels).cast<complex>();
  const Eigen::VectorXcd hb =
      detail::hermite_functions(xb, n_levels).cast<complex>();
  const complex value = (ha.transpose() * s.amplitudes() * hb)(0, 0);
  const bool ok =
      xa * xa <= 2.0 * s.cutoff() && xb * xb <= 2.0 * s.cutoff();
  return {value, ok};
}

// Squeezing S_theta = <X_theta^2> - <X_theta>^2 - 1/2 of the collective mode
// d = (a+b)/sqrt(2), from first and second ladder moments.
inline double numeric_squeezing(const FockState& s, double theta) {
  if (s.modes() != 2)
    throw ValidationError("numeric_squeezing: two-mode state required");
  const int n_levels = s.cutoff() + 1;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_levels, n_levels);
  for (int n = 1; n < n_levels; ++n) a(n - 1, n) = std::sqrt(double(n));
  const Eigen::MatrixXcd& psi = s.amplitudes();
  const Eigen::MatrixXcd pa = a * psi;        // a |psi>
  const Eigen::MatrixXcd pb = psi * a.transpose();  // b |psi>
  auto vdot = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    return (x.conjugate().cwiseProduct(y)).sum();
  };
  const complex ma = vdot(psi, pa), mb = vdot(psi, pb);
  const complex maa = vdot(psi, a * pa), mbb = vdot(psi, pb * a.transpose());
  const complex mab = vdot(psi, a * psi * a.transpose());
  const complex mada = vdot(pa, pa), mbdb = vdot(pb, pb), madb = vdot(pa, pb);
  const complex c1 = ma + mb;
  const complex c2 = maa + mbb + 2.0 * mab;
  const double cdc = (mada + mbdb).real() + 2.0 * madb.real();
  // X_theta = (d e^{-i theta} + d^dag e^{i theta})/sqrt(2) with the
  // collective mode d = (a+b)/sqrt(2), so <X> = Re(c1 e^{-i theta}) and
  // <X^2> = (2 Re(c2 e^{-2i theta}) + 2<d^dag d + d d^dag - 1> + 2)/4.
  const complex ph = std::polar(1.0, -theta);
  const double mean_x = std::real(c1 * ph);
  const double x2 = (2.0 * std::real(c2 * ph * ph) + 2.0 * cdc + 2.0) / 4.0;
  return x2 - mean_x * mean_x - 0.5;
}

// ---- Log-negativity ----------------------------------------------------

// Pure-state route: the partial-transpose spectrum of |psi><psi| is
// determined by the Schmidt coefficients (the singular values of the
// amplitude matrix), giving epsilon = log2((sum lambda)^2).
inline LogNegativity numeric_logneg(const FockState& s) {
  if (s.modes() != 2)
    throw ValidationError("numeric_logneg: two-mode state required");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(s.amplitudes());
  const double sum = svd.singularValues().sum();
  return LogNegativity{2.0 * std::log2(sum)};
}

// Dense density-matrix form over the truncated two-mode basis.
class DensityMatrix {
 public:
  explicit DensityMatrix(const FockState& s) {
    if (s.modes() != 2)
      throw ValidationError("DensityMatrix: two-mode state required");
    levels_ = s.cutoff() + 1;
    Eigen::VectorXcd flat(levels_ * levels_);
    for (int n = 0; n < levels_; ++n)
      for (int k = 0; k < levels_; ++k) flat(n * levels_ + k) = s.at(n, k);
    rho_ = flat * flat.adjoint();
    validate();
  }

  void validate() const {
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw ValidationError("DensityMatrix: not Hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > 1e-10)
      throw ValidationError("DensityMatrix: trace must be 1");
  }

  int levels() const { return levels_; }
  const Eigen::MatrixXcd& matrix() const { return rho_; }

  // Transpose mode b: rho^PT[(n,l),(m,k)] = rho[(n,k),(m,l)].
  Eigen::MatrixXcd partial_transpose() const {
    Eigen::MatrixXcd pt(rho_.rows(), rho_.cols());
    for (int n = 0; n < levels_; ++n)
      for (int k = 0; k < levels_; ++k)
        for (int m = 0; m < levels_; ++m)
          for (int l = 0; l < levels_; ++l)
            pt(n * levels_ + l, m * levels_ + k) =
                rho_(n * levels_ + k, m * levels_ + l);
    return pt;
  }

 private:
  int levels_ = 0;
  Eigen::MatrixXcd rho_;
};

// Dense route: full Hermitian eigensolve of the partial transpose,
// epsilon = log2(1 + 2 |sum of negative eigenvalues|).
inline LogNegativity numeric_logneg(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      rho.partial_transpose());
  if (solver.info() != Eigen::Success)
    throw NumericError("numeric_logneg: eigensolver failure");
  double neg = 0.0;
  for (int i = 0; i < solver.eigenvalues().size(); ++i) {
    const double ev = solver.eigenvalues()(i);
    if (ev < -1e-12) neg += ev;  // magnitudes below 1e-12 are truncation noise
  }
  return LogNegativity{std::log2(1.0 + 2.0 * std::abs(neg))};
}

// ---- Mode mixing ----------------------------------------------------------

// Apply the two-mode mixing unitary with Heisenberg images
// a -> m11 a + m12 b, b -> m21 a + m22 b (matrix unitary) to the state.
inline FockState mix_modes(const FockState& s, complex m11, complex m12,
                           complex m21, complex m22) {
  if (s.modes() != 2)
    throw ValidationError("mix_modes: two-mode state required");
  const int n_max = s.cutoff();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
  std::vector<double> lg(2 * n_max + 2);
  for (size_t i = 0; i < lg.size(); ++i) lg[i] = detail::lg(double(i) + 1.0);
  std::vector<complex> pol1, pol2, pol;
  for (int n = 0; n <= n_max; ++n) {
    for (int k = 0; k <= n_max; ++k) {
      const complex amp = s.at(n, k);
      if (std::abs(amp) < 1e-300) continue;
      // (m11 x + m12 y)^n and (m21 x + m22 y)^k expanded in x-degree.
      pol1.assign(n + 1, complex(0.0, 0.0));
      for (int j = 0; j <= n; ++j)
        pol1[j] = std::exp(lg[n] - lg[j] - lg[n - j]) *
                  std::pow(m11, j) * std::pow(m12, n - j);
      pol2.assign(k + 1, complex(0.0, 0.0));
      for (int l = 0; l <= k; ++l)
        pol2[l] = std::exp(lg[k] - lg[l] - lg[k - l]) *
                  std::pow(m21, l) * std::pow(m22, k - l);
      pol.assign(n + k + 1, complex(0.0, 0.0));
      for (int j = 0; j <= n; ++j)
        for (int l = 0; l <= k; ++l) pol[j + l] += pol1[j] * pol2[l];
      for (int p = 0; p <= n + k; ++p) {
        const int q = n + k - p;
        if (p <= n_max && q <= n_max)
          out(p, q) += amp * std::exp(0.5 * (lg[p] + lg[q] - lg[n] - lg[k])) *
                       pol[p];
      }
    }
  }
  return FockState::two_mode(std::move(out));
}

// 50:50 basis change a_pm = (a +/- b)/sqrt(2).
inline FockState basis_change_5050(const FockState& s) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return mix_modes(s, inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
}

// ---- Overlaps and the cat optimizer ------------------------------------

inline complex overlap(const FockState& s1, const FockState& s2) {
  if (s1.modes() != s2.modes())
    throw ValidationError("overlap: mode counts must match");
  const int rows = int(std::min(s1.amplitudes().rows(), s2.amplitudes().rows()));
  const int cols = int(std::min(s1.amplitudes().cols(), s2.amplitudes().cols()));
  return (s1.amplitudes().topLeftCorner(rows, cols).conjugate().cwiseProduct(
              s2.amplitudes().topLeftCorner(rows, cols)))
      .sum();
}

// Maximize |<Psi_cat(alpha0, theta) | Phi_cat(rho)>|^2 over rho in [0, 1]
// by golden-section search to 1e-4 in rho.
inline std::pair<double, double> optimize_cat_rho(complex alpha0,
                                                  double theta) {
  const int cutoff = 60;
  const FockState ideal = build_ideal_cat(alpha0, theta, cutoff);
  auto fid = [&](double rho) {
    if (rho <= 0.0) {
      // rho -> 0 limit of a S(rho)|0> is the single photon |1>.
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cutoff + 1);
      v(1) = 1.0;
      return std::norm(overlap(ideal, FockState::one_mode(std::move(v))));
    }
    return std::norm(overlap(ideal, build_catlike(rho, 0.0, cutoff)));
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 1.0;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = fid(x1), f2 = fid(x2);
  while (b - a > 1e-4) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fid(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fid(x1);
    }
  }
  const double rho_star = 0.5 * (a + b);
  return {rho_star, fid(rho_star)};
}

// ---- Debug/regression dump ----------------------------------------------

// One line per basis element: indices, real part, imaginary part,
// 17-significant-digit decimals.
inline void dump_state(const FockState& s, std::ostream& os) {
  char buf[128];
  const int n_levels = s.cutoff() + 1;
  if (s.modes() == 1) {
    for (int n = 0; n < n_levels; ++n) {
      std::snprintf(buf, sizeof buf, "%d %.17g %.17g\n", n, s.at(n).real(),
                    s.at(n).imag());
      os << buf;
    }
  } else {
    for (int n = 0; n < n_levels; ++n)
      for (int k = 0; k < n_levels; ++k) {
        std::snprintf(buf, sizeof buf, "%d %d %.17g %.17g\n", n, k,
                      s.at(n, k).real(), s.at(n, k).imag());
        os << buf;
      }
  }
}

}  // namespace cvqt::fock
