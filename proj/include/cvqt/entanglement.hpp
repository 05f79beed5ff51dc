#pragma once

// Logarithmic negativity: closed forms for the TMSV and TPS resources and the
// general Schmidt-coefficient formula epsilon = log2((sum c_n)^2).

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "cvqt/errors.hpp"
#include "cvqt/states.hpp"

namespace cvqt::entanglement {

using states::ResourceKind;
using states::SqueezeParams;

struct LogNegativity {
  double epsilon = 0.0;  // bits
};

// Schmidt coefficients c_n of a state sum_n c_n e^{i n phi} |u_n>|v_n>.
struct SchmidtCoeffs {
  std::vector<double> c;

  void validate() const {
    double sum_sq = 0.0;
    for (double v : c) {
      if (!(v >= 0.0))
        throw ValidationError("SchmidtCoeffs: coefficients must be >= 0");
      sum_sq += v * v;
    }
    if (std::abs(sum_sq - 1.0) > 1e-8)
      throw ValidationError("SchmidtCoeffs: sum of squares must be 1 (got " +
                            std::to_string(sum_sq) + ")");
  }
};

// Keep n up to the first index where cumulative probability exceeds
// 1 - 1e-14, capped at 400 terms.
inline constexpr int kMaxCoeffs = 400;
inline constexpr double kTailTolerance = 1e-14;

namespace detail {

template <typename CoeffFn>
SchmidtCoeffs truncate_coeffs(CoeffFn&& unnormalized) {
  std::vector<double> c;
  double cum = 0.0;
  for (int n = 0; n < kMaxCoeffs; ++n) {
    const double v = unnormalized(n);
    c.push_back(v);
    cum += v * v;
    if (n >= 1 && cum > 1.0 - kTailTolerance) break;
  }
  // Renormalize the truncated sequence so the SchmidtCoeffs invariant holds
  // exactly regardless of the residual tail.
  const double norm = std::sqrt(
      std::inner_product(c.begin(), c.end(), c.begin(), 0.0));
  for (double& v : c) v /= norm;
  return SchmidtCoeffs{std::move(c)};
}

}  // namespace detail

// c_n = tanh^n r / cosh r.
inline SchmidtCoeffs tmsv_coeffs(double r) {
  if (!(r >= 0.0)) throw DomainError("tmsv_coeffs: r must be >= 0");
  const double t = std::tanh(r), ch = std::cosh(r);
  return detail::truncate_coeffs(
      [&](int n) { return std::pow(t, n) / ch; });
}

// c_n = (n+1) tanh^n r / (cosh^3 r sqrt(1 + tanh^2 r)).
inline SchmidtCoeffs tps_coeffs(double r) {
  if (!(r > 0.0)) throw DomainError("tps_coeffs: TPS requires r > 0");
  const double t = std::tanh(r), ch = std::cosh(r);
  const double denom = ch * ch * ch * std::sqrt(1.0 + t * t);
  return detail::truncate_coeffs(
      [&](int n) { return (n + 1.0) * std::pow(t, n) / denom; });
}

// Schmidt coefficients of the single-photon-added TMSV (a^dagger on mode a):
// lambda_n proportional to sqrt(n+1) tanh^n r, over bases {|n+1>},{|n>}.
// No closed-form sum exists; the sequence itself is exact.
inline SchmidtCoeffs photon_added_coeffs(double r) {
  if (!(r > 0.0)) throw DomainError("photon_added_coeffs: requires r > 0");
  const double t = std::tanh(r);
  // a^dagger|xi> has squared weights (n+1) t^{2n} / cosh^4 r after dividing by
  // its norm cosh^2 r, so lambda_n = sqrt(n+1) t^n (1 - t^2) exactly.
  const double scale = 1.0 - t * t;
  return detail::truncate_coeffs(
      [&](int n) { return std::sqrt(n + 1.0) * std::pow(t, n) * scale; });
}

inline LogNegativity logneg_from_coeffs(const SchmidtCoeffs& coeffs) {
  coeffs.validate();
  const double sum = std::accumulate(coeffs.c.begin(), coeffs.c.end(), 0.0);
  return LogNegativity{2.0 * std::log2(sum)};
}

// TMSV: 2r log2 e.  TPS: log2(e^{4r}/cosh 2r), rearranged with log1p so it
// stays accurate at large r.
inline LogNegativity logneg_closed(ResourceKind kind, double r) {
  if (kind == ResourceKind::Tmsv) {
    if (!(r >= 0.0)) throw DomainError("logneg_closed: r must be >= 0");
    return LogNegativity{2.0 * r / std::numbers::ln2};
  }
  if (!(r > 0.0)) throw DomainError("logneg_closed: TPS requires r > 0");
  // log(e^{4r}/cosh 2r) = 2r + ln 2 - log1p(e^{-4r})
  return LogNegativity{
      (2.0 * r + std::numbers::ln2 - std::log1p(std::exp(-4.0 * r))) /
      std::numbers::ln2};
}

enum class EntangledKind { Tmsv, Tps, PhotonAdded };

// Ratio 2^epsilon / 2^epsilon_xi against the TMSV baseline at the same r.
// The photon-added entry has no paper closed form and is evaluated from its
// exact Schmidt sequence (numeric series).
inline double logneg_ratio(EntangledKind kind, double r) {
  if (!(r > 0.0)) throw DomainError("logneg_ratio: requires r > 0");
  const double eps_xi = logneg_closed(ResourceKind::Tmsv, r).epsilon;
  double eps = 0.0;
  switch (kind) {
    case EntangledKind::Tmsv:
      eps = eps_xi;
      break;
    case EntangledKind::Tps:
      eps = logneg_closed(ResourceKind::Tps, r).epsilon;
      break;
    case EntangledKind::PhotonAdded:
      eps = logneg_from_coeffs(photon_added_coeffs(r)).epsilon;
      break;
  }
  return std::exp2(eps - eps_xi);
}

}  // namespace cvqt::entanglement
