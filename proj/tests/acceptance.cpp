// Acceptance suite: one pass/fail line per criterion.  Exit code is the
// number of failed criteria.

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>

#include "cvqt/entanglement.hpp"
#include "cvqt/fock.hpp"
#include "cvqt/states.hpp"
#include "cvqt/teleport.hpp"
#include "cvqt/verify.hpp"

namespace {

using complex = std::complex<double>;
using cvqt::states::ResourceKind;
using cvqt::states::SqueezeParams;

int failures = 0;

void criterion(int id, const std::string& description,
               const std::function<bool()>& body) {
  bool pass = false;
  std::string note;
  try {
    pass = body();
  } catch (const std::exception& e) {
    note = std::string(" (exception: ") + e.what() + ")";
  }
  std::printf("%s %2d %s%s\n", pass ? "PASS" : "FAIL", id, description.c_str(),
              note.c_str());
  if (!pass) ++failures;
}

bool check_logneg_oracle() {
  for (double r : {0.25, 0.5, 1.0, 1.5}) {
    const int cutoff = cvqt::fock::logneg_cutoff(r);
    const auto tmsv = cvqt::fock::build_tmsv(SqueezeParams{r, 0.0}, cutoff);
    const auto tps = cvqt::fock::build_tps(SqueezeParams{r, 0.0}, cutoff);
    double num_tmsv, num_tps;
    if (r <= 0.25) {
      // Dense partial-transpose eigensolve at the tractable cutoff.
      num_tmsv =
          cvqt::fock::numeric_logneg(cvqt::fock::DensityMatrix(tmsv)).epsilon;
      num_tps =
          cvqt::fock::numeric_logneg(cvqt::fock::DensityMatrix(tps)).epsilon;
    } else {
      // Pure-state route: identical partial-transpose spectrum via Schmidt.
      num_tmsv = cvqt::fock::numeric_logneg(tmsv).epsilon;
      num_tps = cvqt::fock::numeric_logneg(tps).epsilon;
    }
    if (std::abs(num_tmsv - cvqt::entanglement::logneg_closed(
                                ResourceKind::Tmsv, r)
                                .epsilon) > 1e-6)
      return false;
    if (std::abs(num_tps -
                 cvqt::entanglement::logneg_closed(ResourceKind::Tps, r)
                     .epsilon) > 1e-6)
      return false;
  }
  return true;
}

bool check_fidelity_oracle() {
  for (double r : {0.25, 0.5, 1.0, 1.5}) {
    for (double rho : {0.0, 0.313}) {
      for (ResourceKind kind : {ResourceKind::Tmsv, ResourceKind::Tps}) {
        cvqt::teleport::TeleportJob job;
        job.resource = kind;
        job.sq = SqueezeParams{r, 0.0};
        if (rho == 0.0) {
          job.input = cvqt::states::Coherent{complex(1.0, 0.0)};
        } else {
          job.input = cvqt::states::CatLike{rho, 0.0};
        }
        const double closed = cvqt::teleport::fidelity_closed(job).value;
        const double integral = cvqt::teleport::fidelity_numeric(job).value;
        if (std::abs(closed - integral) > 1e-6) return false;
      }
    }
  }
  return true;
}

bool check_cat_optimum() {
  const auto [rho_star, fid] =
      cvqt::fock::optimize_cat_rho(complex(1.0, 0.0), M_PI);
  return std::abs(rho_star - 0.313) <= 0.005 && std::abs(fid - 0.997) <= 0.001;
}

bool check_thresholds() {
  const cvqt::states::CatLike input{0.313, 0.0};
  const auto r_tmsv = cvqt::teleport::threshold_r(input, ResourceKind::Tmsv);
  const auto r_tps = cvqt::teleport::threshold_r(input, ResourceKind::Tps);
  return r_tmsv && r_tps && std::abs(*r_tmsv - 0.35) <= 0.02 &&
         std::abs(*r_tps - 0.20) <= 0.02;
}

bool check_negativity_depth() {
  cvqt::teleport::TeleportJob j1, j2;
  j1.input = j2.input = cvqt::states::CatLike{0.313, 0.0};
  j1.sq = j2.sq = SqueezeParams{0.5, 0.0};
  j1.resource = ResourceKind::Tmsv;
  j2.resource = ResourceKind::Tps;
  double min1 = 0.0, min2 = 0.0;
  for (int iy = 0; iy < 121; ++iy) {
    for (int ix = 0; ix < 121; ++ix) {
      const complex a(-3.0 + 6.0 * ix / 120.0, -3.0 + 6.0 * iy / 120.0);
      min1 = std::min(min1, cvqt::teleport::wigner_output(j1, a));
      min2 = std::min(min2, cvqt::teleport::wigner_output(j2, a));
    }
  }
  return std::abs(min1 - (-0.05)) <= 0.02 && std::abs(min2 - (-0.20)) <= 0.03;
}

bool check_photon_statistics() {
  auto ratio = [](double r) {
    const SqueezeParams sq{r, 0.0};
    return cvqt::states::photon_number_prob(ResourceKind::Tps, sq, 1) /
           cvqt::states::photon_number_prob(ResourceKind::Tmsv, sq, 1);
  };
  const double r5 = ratio(5.0);
  if (!(r5 >= 5e-8 && r5 <= 8e-8)) return false;
  const double ch = std::cosh(1.0), t = std::tanh(1.0);
  const double formula = 4.0 / (ch * ch * ch * ch * (1.0 + t * t));
  if (std::abs(ratio(1.0) - formula) > 1e-12) return false;
  std::printf("  note: r=1 ratio %.5f vs narrative value 0.3 "
              "(documented discrepancy, formula adjudicated)\n",
              ratio(1.0));
  return true;
}

bool check_heralding() {
  const SqueezeParams sq{0.8, 0.0};
  const auto ideal = cvqt::fock::build_tps(sq, 100);
  double prev = 0.0;
  for (double t : {0.5 + 1e-9, 0.7, 0.9, 0.99}) {
    const auto [heralded, prob] =
        cvqt::fock::herald_tps(sq, cvqt::fock::HeraldingSetup{t, 100});
    const double fid = std::norm(cvqt::fock::overlap(ideal, heralded));
    if (fid < prev) return false;
    prev = fid;
  }
  return prev >= 0.999;
}

bool check_basis_change() {
  const SqueezeParams sq{0.8, 0.0};
  const int n_max = 60;
  const auto img =
      cvqt::fock::basis_change_5050(cvqt::fock::build_tps(sq, n_max));
  Eigen::VectorXcd plus =
      cvqt::fock::detail::squeezed_vec(sq.r, sq.phi, n_max + 1, +1.0);
  Eigen::VectorXcd minus =
      cvqt::fock::detail::squeezed_vec(sq.r, sq.phi + M_PI, n_max + 1, +1.0);
  const auto prod = cvqt::fock::FockState::two_mode(plus * minus.transpose());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
  Eigen::MatrixXcd con =
      (a * a * prod.amplitudes() - prod.amplitudes() * (a * a).transpose()) /
      2.0;
  con /= con.norm();
  const double overlap = std::norm(cvqt::fock::overlap(
      img, cvqt::fock::FockState::two_mode(std::move(con))));
  return overlap >= 1.0 - 1e-8;
}

bool check_orderings() {
  const double rho = 0.313;
  for (int i = 1; i <= 20; ++i) {
    const double r = 2.0 * i / 20.0;
    const double g = std::exp(-2.0 * r);
    if (cvqt::teleport::cat_f2(rho, g) < cvqt::teleport::cat_f1(rho, g) - 1e-9)
      return false;
    if (std::abs(cvqt::states::squeezing_closed(ResourceKind::Tps, r)) <
        std::abs(cvqt::states::squeezing_closed(ResourceKind::Tmsv, r)) -
            1e-14)
      return false;
  }
  const double e_tmsv =
      cvqt::entanglement::logneg_closed(ResourceKind::Tmsv, 1.0).epsilon;
  const double e_tps =
      cvqt::entanglement::logneg_closed(ResourceKind::Tps, 1.0).epsilon;
  const double e_pa = cvqt::entanglement::logneg_from_coeffs(
                          cvqt::entanglement::photon_added_coeffs(1.0))
                          .epsilon;
  if (!(e_tps > e_pa && e_pa > e_tmsv)) return false;
  double ref = -1.0;
  for (complex a0 :
       {complex(0.0, 0.0), complex(1.0, 0.0), complex(2.0, 1.0)}) {
    cvqt::teleport::TeleportJob job;
    job.input = cvqt::states::Coherent{a0};
    job.sq = SqueezeParams{0.5, 0.0};
    const double f = cvqt::teleport::fidelity_numeric(job).value;
    if (ref < 0.0) ref = f;
    if (std::abs(f - ref) > 1e-9) return false;
  }
  return true;
}

bool check_normalization_battery() {
  // Input cat Wigner field integrates to 1.
  const double rho = 0.313;
  const complex cat_norm = cvqt::numerics::integrate_phase_plane(
      [&](complex z) {
        return complex(cvqt::states::wigner_catlike(rho, 0.0, z), 0.0);
      },
      cvqt::numerics::QuadratureSpec{64, 2.0 * std::exp(-2.0 * rho),
                                     2.0 * std::exp(2.0 * rho)});
  if (std::abs(cat_norm.real() * M_PI - 1.0) > 1e-6) return false;
  // Both output Wigner fields integrate to 1.
  const double r = 0.5, g = std::exp(-2.0 * r);
  const double a_const = std::exp(-2.0 * rho) / 2.0 + g;
  const double b_const = std::exp(2.0 * rho) / 2.0 + g;
  for (ResourceKind kind : {ResourceKind::Tmsv, ResourceKind::Tps}) {
    cvqt::teleport::TeleportJob job;
    job.input = cvqt::states::CatLike{rho, 0.0};
    job.resource = kind;
    job.sq = SqueezeParams{r, 0.0};
    const complex total = cvqt::numerics::integrate_phase_plane(
        [&](complex z) {
          return complex(cvqt::teleport::wigner_output(job, z), 0.0);
        },
        cvqt::numerics::QuadratureSpec{64, 1.0 / b_const, 1.0 / a_const});
    if (std::abs(total.real() * M_PI - 1.0) > 1e-6) return false;
  }
  // chi(0) = 1 and photon-number normalization.
  for (double rr : {0.25, 1.0}) {
    const SqueezeParams sq{rr, 0.0};
    for (ResourceKind kind : {ResourceKind::Tmsv, ResourceKind::Tps}) {
      if (std::abs(cvqt::states::chi_resource(kind, sq, 0.0, 0.0) - 1.0) >
          1e-10)
        return false;
      double sum = 0.0;
      for (int n = 0; n < 400; ++n)
        sum += cvqt::states::photon_number_prob(kind, sq, n);
      if (std::abs(sum - 1.0) > 1e-10) return false;
    }
  }
  return std::abs(cvqt::states::chi_input(cvqt::states::CatLike{rho, 0.0},
                                          0.0) -
                  1.0) < 1e-10;
}

bool check_divergence_report() {
  const auto results = cvqt::verify::run_checks(cvqt::verify::Tier::Full);
  int divergences = 0;
  for (const auto& check : results) {
    if (!check.pass) return false;
    if (check.expected_divergence) {
      ++divergences;
      const bool known =
          (check.module == "teleport" && check.name == "sqv_f2_printed") ||
          (check.module == "states" && check.name == "pnd_ratio_r1");
      if (!known) return false;
    }
  }
  return divergences == 2;
}

}  // namespace

int main() {
  criterion(1, "log-negativity closed forms match the Fock oracle (1e-6)",
            check_logneg_oracle);
  criterion(2, "fidelity closed forms match the chi integral (1e-6)",
            check_fidelity_oracle);
  criterion(3, "cat optimum rho* = 0.313 +/- 0.005, fidelity 0.997 +/- 0.001",
            check_cat_optimum);
  criterion(4, "W(0) thresholds r* = 0.20 +/- 0.02 (TPS), 0.35 +/- 0.02 (TMSV)",
            check_thresholds);
  criterion(5, "output Wigner minima -0.20 +/- 0.03 (W2), -0.05 +/- 0.02 (W1)",
            check_negativity_depth);
  criterion(6, "photon-statistics ratio at r=5 in [5e-8, 8e-8]",
            check_photon_statistics);
  criterion(7, "heralded TPS fidelity >= 0.999 at T=0.99, monotone in T",
            check_heralding);
  criterion(8, "50:50 basis-change identity overlap >= 1 - 1e-8",
            check_basis_change);
  criterion(9, "ordering properties (F2 >= F1, logneg, squeezing, alpha0)",
            check_orderings);
  criterion(10, "normalization battery (Wigner, chi(0), photon numbers)",
            check_normalization_battery);
  criterion(11, "verify report: exactly two expected divergences, no failures",
            check_divergence_report);
  std::printf("%s: %d/11 criteria passed\n",
              failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              11 - failures);
  return failures;
}
