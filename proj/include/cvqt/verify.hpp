#pragma once

// Self-verification registry: every invariant the library promises, checked
// against the Fock-space oracle or an independent integral route, with a
// machine-readable report.  Two entries are documented expected divergences
// (printed formulas that disagree with the adjudicating integral); they are
// reported, never silently preferred, and never counted as failures.

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvqt/entanglement.hpp"
#include "cvqt/fock.hpp"
#include "cvqt/io.hpp"
#include "cvqt/states.hpp"
#include "cvqt/teleport.hpp"

namespace cvqt::verify {

using complex = std::complex<double>;
using json = nlohmann::json;
using states::ResourceKind;
using states::SqueezeParams;

enum class Tier { Fast, Full };

// Deliberate-mutation hook for the detection contract: the injected fault
// flips the sign of the closed-form resource Wigner function, which must make
// the run fail naming states.wigner_resource.
enum class Fault { None, WignerResourceSign };

struct CheckResult {
  std::string module;
  std::string name;
  bool pass = false;
  bool expected_divergence = false;
  double deviation = 0.0;
  std::string detail;
};

namespace detail {

struct Harness {
  Tier tier;
  Fault fault;
  std::vector<CheckResult> results;

  std::vector<double> r_grid() const {
    if (tier == Tier::Fast) return {0.5, 1.0};
    return {0.25, 0.5, 1.0, 1.5};
  }

  void record(const std::string& module, const std::string& name,
              double deviation, double tolerance, const std::string& detail) {
    results.push_back({module, name, deviation <= tolerance, false, deviation,
                       detail});
  }

  void record_divergence(const std::string& module, const std::string& name,
                         double deviation, const std::string& detail) {
    results.push_back({module, name, true, true, deviation, detail});
  }
};

inline void check_chi_normalization(Harness& h) {
  double worst = 0.0;
  for (double r : h.r_grid()) {
    const SqueezeParams sq{r, 0.0};
    for (ResourceKind kind : {ResourceKind::Tmsv, ResourceKind::Tps})
      worst = std::max(worst,
                       std::abs(states::chi_resource(kind, sq, 0.0, 0.0) -
                                1.0));
  }
  worst = std::max(worst, std::abs(states::chi_input(states::CatLike{0.313, 0.0},
                                                     0.0) - 1.0));
  worst = std::max(
      worst,
      std::abs(states::chi_input(states::Coherent{complex(1.0, 0.5)}, 0.0) -
               1.0));
  h.record("states", "chi_normalization", worst, 1e-10, "chi(0) = 1");
}

inline void check_wigner_resource(Harness& h) {
  const double flip = h.fault == Fault::WignerResourceSign ? -1.0 : 1.0;
  double worst = 0.0;
  for (double r : h.r_grid()) {
    const SqueezeParams sq{r, 0.0};
    const fock::FockState tmsv = fock::build_tmsv(sq);
    const fock::FockState tps = fock::build_tps(sq);
    const std::vector<std::pair<complex, complex>> points = {
        {complex(0.0, 0.0), complex(0.0, 0.0)},
        {complex(0.4, 0.1), complex(0.4, 0.1)},
        {complex(-0.6, 0.5), complex(0.2, -0.3)}};
    for (const auto& [a, b] : points) {
      worst = std::max(
          worst, std::abs(flip * states::wigner_resource(ResourceKind::Tmsv,
                                                         sq, a, b) -
                          fock::numeric_wigner(tmsv, a, b)));
      worst = std::max(
          worst, std::abs(flip * states::wigner_resource(ResourceKind::Tps, sq,
                                                         a, b) -
                          fock::numeric_wigner(tps, a, b)));
    }
  }
  h.record("states", "wigner_resource", worst, 1e-6,
           "closed form vs displaced-parity oracle");
}

inline void check_quadrature(Harness& h) {
  double worst = 0.0;
  for (double r : h.r_grid()) {
    const SqueezeParams sq{r, M_PI};
    // Slow geometric decay at large r: the truncation error of the oracle
    // must sit far below the 1e-6 comparison tolerance.
    const int cutoff = std::max(120, fock::auto_cutoff(r, 1e-24));
    const fock::FockState tmsv = fock::build_tmsv(sq, cutoff);
    const fock::FockState tps = fock::build_tps(sq, cutoff);
    for (double xa : {0.0, 0.8}) {
      for (double xb : {-0.5, 0.3}) {
        worst = std::max(
            worst, std::abs(fock::numeric_quadrature(tmsv, xa, xb).value -
                            states::quadrature_amplitude(ResourceKind::Tmsv,
                                                         sq, xa, xb)));
        worst = std::max(
            worst, std::abs(fock::numeric_quadrature(tps, xa, xb).value -
                            states::quadrature_amplitude(ResourceKind::Tps, sq,
                                                         xa, xb)));
      }
    }
  }
  h.record("states", "quadrature_amplitude", worst, 1e-6,
           "closed form vs Hermite-function oracle");
}

inline void check_photon_number(Harness& h) {
  double worst = 0.0;
  for (ResourceKind kind : {ResourceKind::Tmsv, ResourceKind::Tps}) {
    double sum = 0.0;
    for (int n = 0; n < 400; ++n)
      sum += states::photon_number_prob(kind, SqueezeParams{1.0, 0.0}, n);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  h.record("states", "photon_number_sum", worst, 1e-10, "sum P(n) = 1");

  auto ratio = [](double r) {
    const SqueezeParams sq{r, 0.0};
    return states::photon_number_prob(ResourceKind::Tps, sq, 1) /
           states::photon_number_prob(ResourceKind::Tmsv, sq, 1);
  };
  const double r5 = ratio(5.0);
  h.record("states", "pnd_ratio_r5",
           (r5 >= 5e-8 && r5 <= 8e-8) ? 0.0 : 1.0, 0.5,
           "P_TPS(1)/P_TMSV(1) at r=5 in [5e-8, 8e-8], got " +
               io::format_double(r5));

  // Expected divergence: the formula gives ~0.447 at r=1 while the narrative
  // quotes "about 0.3"; the formula is the adjudicated value.
  const double r1 = ratio(1.0);
  const double ch = std::cosh(1.0), t = std::tanh(1.0);
  const double formula = 4.0 / (ch * ch * ch * ch * (1.0 + t * t));
  if (std::abs(r1 - formula) > 1e-12) {
    h.record("states", "pnd_ratio_r1", std::abs(r1 - formula), 1e-12,
             "ratio disagrees with its own closed form");
  } else {
    h.record_divergence("states", "pnd_ratio_r1", std::abs(r1 - 0.3),
                        "formula value " + io::format_double(r1) +
                            " vs narrative value 0.3 (formula adjudicated)");
  }
}

inline void check_squeezing(Harness& h) {
  double worst = 0.0;
  for (double r : h.r_grid()) {
    const SqueezeParams sq{r, 0.0};
    worst = std::max(
        worst, std::abs(fock::numeric_squeezing(fock::build_tmsv(sq, 150),
                                                M_PI / 2.0) -
                        states::squeezing_closed(ResourceKind::Tmsv, r)));
    worst = std::max(
        worst, std::abs(fock::numeric_squeezing(fock::build_tps(sq, 150),
                                                M_PI / 2.0) -
                        states::squeezing_closed(ResourceKind::Tps, r)));
  }
  h.record("states", "squeezing_closed", worst, 1e-6,
           "closed form vs ladder-moment oracle");

  bool ordered = true;
  for (int i = 1; i <= 20; ++i) {
    const double r = 2.0 * i / 20.0;
    if (std::abs(states::squeezing_closed(ResourceKind::Tps, r)) <
        std::abs(states::squeezing_closed(ResourceKind::Tmsv, r)) - 1e-14)
      ordered = false;
  }
  h.record("states", "squeezing_ordering", ordered ? 0.0 : 1.0, 0.5,
           "|S_TPS| >= |S_TMSV| on the r-grid");
}

inline void check_logneg(Harness& h) {
  double worst = 0.0;
  for (double r : h.r_grid()) {
    const int cutoff = fock::logneg_cutoff(r);
    const fock::FockState tmsv = fock::build_tmsv(SqueezeParams{r, 0.0},
                                                  cutoff);
    const fock::FockState tps = fock::build_tps(SqueezeParams{r, 0.0}, cutoff);
    double num_tmsv, num_tps;
    if (h.tier == Tier::Full && r <= 0.5) {
      // Dense partial-transpose eigensolve route at tractable cutoffs.
      num_tmsv = fock::numeric_logneg(fock::DensityMatrix(tmsv)).epsilon;
      num_tps = fock::numeric_logneg(fock::DensityMatrix(tps)).epsilon;
    } else {
      num_tmsv = fock::numeric_logneg(tmsv).epsilon;
      num_tps = fock::numeric_logneg(tps).epsilon;
    }
    worst = std::max(
        worst, std::abs(num_tmsv -
                        entanglement::logneg_closed(ResourceKind::Tmsv, r)
                            .epsilon));
    worst = std::max(
        worst,
        std::abs(num_tps -
                 entanglement::logneg_closed(ResourceKind::Tps, r).epsilon));
  }
  h.record("entanglement", "logneg_closed", worst, 1e-6,
           "closed forms vs partial-transpose oracle");

  const double e_tmsv = entanglement::logneg_closed(ResourceKind::Tmsv, 1.0)
                            .epsilon;
  const double e_tps = entanglement::logneg_closed(ResourceKind::Tps, 1.0)
                           .epsilon;
  const double e_pa = entanglement::logneg_from_coeffs(
                          entanglement::photon_added_coeffs(1.0))
                          .epsilon;
  h.record("entanglement", "logneg_ordering",
           (e_tps > e_pa && e_pa > e_tmsv) ? 0.0 : 1.0, 0.5,
           "eps_TPS > eps_PhotonAdded > eps_TMSV at r=1");
}

inline void check_fidelity_routes(Harness& h) {
  double worst = 0.0;
  for (double r : h.r_grid()) {
    for (double rho : {0.0, 0.313}) {
      for (ResourceKind kind : {ResourceKind::Tmsv, ResourceKind::Tps}) {
        teleport::TeleportJob job;
        job.resource = kind;
        job.sq = SqueezeParams{r, 0.0};
        if (rho == 0.0) {
          job.input = states::Coherent{complex(0.8, -0.3)};
        } else {
          job.input = states::CatLike{rho, 0.0};
        }
        const teleport::FidelityResult closed = teleport::fidelity_closed(job);
        const teleport::FidelityResult integral =
            teleport::fidelity_numeric(job);
        worst = std::max(worst, std::abs(closed.value - integral.value));
        if (closed.value < 0.0 || closed.value > 1.0) worst = 1.0;
      }
    }
  }
  h.record("teleport", "fidelity_routes", worst, 1e-6,
           "closed / Gamma-hat routes vs the chi integral");

  // F -> 1 for every pure input as r -> infinity.
  double limit_worst = 0.0;
  for (ResourceKind kind : {ResourceKind::Tmsv, ResourceKind::Tps}) {
    teleport::TeleportJob job;
    job.resource = kind;
    job.sq = SqueezeParams{5.0, 0.0};
    job.input = states::Coherent{complex(0.0, 0.0)};
    limit_worst = std::max(limit_worst,
                           std::abs(teleport::fidelity_closed(job).value - 1.0));
    job.input = states::CatLike{0.313, 0.0};
    limit_worst = std::max(limit_worst,
                           std::abs(teleport::fidelity_closed(job).value - 1.0));
  }
  h.record("teleport", "fidelity_limit", limit_worst, 1e-3,
           "F(r=5) = 1 within 1e-3");

  // Coherent fidelity independent of alpha0.
  double indep_worst = 0.0;
  for (ResourceKind kind : {ResourceKind::Tmsv, ResourceKind::Tps}) {
    double ref = 0.0;
    bool first = true;
    for (complex a0 : {complex(0.0, 0.0), complex(1.0, 0.0),
                       complex(2.0, 1.0)}) {
      teleport::TeleportJob job;
      job.resource = kind;
      job.sq = SqueezeParams{0.5, 0.0};
      job.input = states::Coherent{a0};
      const double f = teleport::fidelity_numeric(job).value;
      if (first) {
        ref = f;
        first = false;
      } else {
        indep_worst = std::max(indep_worst, std::abs(f - ref));
      }
    }
  }
  h.record("teleport", "coherent_amplitude_independence", indep_worst, 1e-9,
           "F independent of alpha0");

  // Squeezed-vacuum F1 at rho=0 reduces to the coherent F1.
  double reduce_worst = 0.0;
  for (double g : {0.2, 0.6, 1.0})
    reduce_worst = std::max(reduce_worst, std::abs(teleport::sqv_f1(0.0, g) -
                                                   teleport::coherent_f1(g)));
  h.record("teleport", "sqv_rho0_reduction", reduce_worst, 1e-12,
           "sqv F1(rho=0) = coherent F1");

  // Expected divergence: the printed squeezed-vacuum F2 entry vs the
  // integral; the Gamma-hat image of F1 agrees with the integral instead.
  teleport::TeleportJob sqv_job;
  sqv_job.resource = ResourceKind::Tps;
  sqv_job.sq = SqueezeParams{0.5, 0.0};
  sqv_job.input = states::SqueezedVacuum{0.3, 0.0};
  const double printed = teleport::sqv_f2_printed(0.3, sqv_job.sq.gamma());
  const double integral = teleport::fidelity_numeric(sqv_job).value;
  const double gamma_route = teleport::gamma_apply(
      [](double g) { return teleport::sqv_f1(0.3, g); }, sqv_job.sq.gamma());
  if (std::abs(gamma_route - integral) > 1e-6) {
    h.record("teleport", "sqv_f2_printed", std::abs(gamma_route - integral),
             1e-6, "Gamma-hat route disagrees with the integral");
  } else {
    h.record_divergence(
        "teleport", "sqv_f2_printed", std::abs(printed - integral),
        "printed F2 " + io::format_double(printed) + " vs integral " +
            io::format_double(integral) + " (integral adjudicated)");
  }
}

inline void check_output_wigner(Harness& h) {
  const double rho = 0.313, r = 0.5;
  const double g = std::exp(-2.0 * r);
  const double a_const = std::exp(-2.0 * rho) / 2.0 + g;
  const double b_const = std::exp(2.0 * rho) / 2.0 + g;
  double worst = 0.0;
  for (ResourceKind kind : {ResourceKind::Tmsv, ResourceKind::Tps}) {
    teleport::TeleportJob job;
    job.resource = kind;
    job.sq = SqueezeParams{r, 0.0};
    job.input = states::CatLike{rho, 0.0};
    const complex total = numerics::integrate_phase_plane(
        [&](complex z) {
          return complex(teleport::wigner_output(job, z), 0.0);
        },
        numerics::QuadratureSpec{64, 1.0 / b_const, 1.0 / a_const});
    worst = std::max(worst, std::abs(total.real() * M_PI - 1.0));
  }
  h.record("teleport", "wigner_normalization", worst, 1e-6,
           "output Wigner integrates to 1");

  const auto r_tmsv = teleport::threshold_r(states::CatLike{rho, 0.0},
                                            ResourceKind::Tmsv);
  const auto r_tps = teleport::threshold_r(states::CatLike{rho, 0.0},
                                           ResourceKind::Tps);
  const double dev =
      std::max(r_tmsv ? std::abs(*r_tmsv - 0.35) : 1.0,
               r_tps ? std::abs(*r_tps - 0.20) : 1.0);
  h.record("teleport", "negativity_thresholds", dev, 0.02,
           "W(0) crossings at r = 0.35 (TMSV) / 0.20 (TPS)");

  bool ordered = true;
  for (int i = 1; i <= 20; ++i) {
    const double ri = 2.0 * i / 20.0;
    const double gi = std::exp(-2.0 * ri);
    if (teleport::cat_f2(rho, gi) < teleport::cat_f1(rho, gi) - 1e-9)
      ordered = false;
  }
  h.record("teleport", "cat_f2_dominates", ordered ? 0.0 : 1.0, 0.5,
           "F2 >= F1 for the rho=0.313 cat on the r-grid");
}

inline void check_fock_structure(Harness& h) {
  const SqueezeParams sq{0.8, 0.0};
  const fock::FockState ideal = fock::build_tps(sq, 100);
  double prev = 0.0;
  bool monotone = true;
  for (double t : {0.6, 0.7, 0.9, 0.99}) {
    const auto [heralded, prob] =
        fock::herald_tps(sq, fock::HeraldingSetup{t, 100});
    const double fid = std::norm(fock::overlap(ideal, heralded));
    if (fid < prev) monotone = false;
    prev = fid;
  }
  h.record("fock", "heralding_limit",
           (prev >= 0.999 && monotone) ? 0.0 : 1.0, 0.5,
           "herald fidelity >= 0.999 at T=0.99 and monotone in T");

  const int n_max = 60;
  const fock::FockState img =
      fock::basis_change_5050(fock::build_tps(sq, n_max));
  Eigen::VectorXcd plus = fock::detail::squeezed_vec(sq.r, sq.phi, n_max + 1,
                                                     +1.0);
  Eigen::VectorXcd minus =
      fock::detail::squeezed_vec(sq.r, sq.phi + M_PI, n_max + 1, +1.0);
  const fock::FockState prod =
      fock::FockState::two_mode(plus * minus.transpose());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
  Eigen::MatrixXcd con =
      (a * a * prod.amplitudes() - prod.amplitudes() * (a * a).transpose()) /
      2.0;
  con /= con.norm();
  const double deficit =
      1.0 - std::norm(fock::overlap(img, fock::FockState::two_mode(
                                             std::move(con))));
  h.record("fock", "basis_change_identity", deficit, 1e-8,
           "50:50 image of TPS matches the two-mode construction");

  const auto [rho_star, fid] = fock::optimize_cat_rho(complex(1.0, 0.0), M_PI);
  const double dev = std::max(std::abs(rho_star - 0.313) / 0.005,
                              std::abs(fid - 0.997) / 0.001);
  h.record("fock", "cat_rho_optimum", dev, 1.0,
           "rho* = 0.313 +/- 0.005 with fidelity 0.997 +/- 0.001");
}

}  // namespace detail

inline std::vector<CheckResult> run_checks(Tier tier,
                                           Fault fault = Fault::None) {
  detail::Harness h{tier, fault, {}};
  detail::check_chi_normalization(h);
  detail::check_wigner_resource(h);
  detail::check_quadrature(h);
  detail::check_photon_number(h);
  detail::check_squeezing(h);
  detail::check_logneg(h);
  detail::check_fidelity_routes(h);
  detail::check_output_wigner(h);
  detail::check_fock_structure(h);
  return h.results;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& check : results)
    if (!check.pass) return false;
  return true;
}

inline json report(Tier tier, const std::vector<CheckResult>& results) {
  json checks = json::array();
  int failed = 0, divergences = 0;
  for (const auto& check : results) {
    checks.push_back({{"module", check.module},
                      {"name", check.name},
                      {"pass", check.pass},
                      {"expected_divergence", check.expected_divergence},
                      {"deviation", check.deviation},
                      {"detail", check.detail}});
    if (!check.pass) ++failed;
    if (check.expected_divergence) ++divergences;
  }
  json out;
  out["tier"] = tier == Tier::Fast ? "fast" : "full";
  out["checks"] = checks;
  out["total"] = results.size();
  out["failed"] = failed;
  out["expected_divergences"] = divergences;
  out["version"] = std::string(kVersion);
  return out;
}

}  // namespace cvqt::verify
