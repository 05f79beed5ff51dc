#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "cvqt/teleport.hpp"

using namespace cvqt::teleport;
using cvqt::numerics::QuadratureSpec;
using cvqt::states::CatLike;
using cvqt::states::Coherent;
using cvqt::states::IdealCat;
using cvqt::states::SqueezedVacuum;
using complex = std::complex<double>;

namespace {

TeleportJob make_job(cvqt::states::InputKind input, ResourceKind resource,
                     double r) {
  TeleportJob job;
  job.input = input;
  job.resource = resource;
  job.sq = SqueezeParams{r, 0.0};
  return job;
}

}  // namespace

TEST_CASE("coherent input: Table I closed forms vs the integral") {
  for (double r : {0.3, 0.5, 1.0}) {
    const double g = SqueezeParams{r, 0.0}.gamma();
    const TeleportJob j1 = make_job(Coherent{complex(0.7, -0.4)},
                                    ResourceKind::Tmsv, r);
    const TeleportJob j2 = make_job(Coherent{complex(0.7, -0.4)},
                                    ResourceKind::Tps, r);
    CHECK(std::abs(fidelity_numeric(j1).value - coherent_f1(g)) < 1e-8);
    CHECK(std::abs(fidelity_numeric(j2).value - coherent_f2(g)) < 1e-8);
    // Fidelity is independent of the coherent amplitude.
    const TeleportJob j1b = make_job(Coherent{complex(0.0, 0.0)},
                                     ResourceKind::Tmsv, r);
    CHECK(std::abs(fidelity_numeric(j1b).value - coherent_f1(g)) < 1e-8);
    // The closed route reports the same values.
    CHECK(fidelity_closed(j1).value == doctest::Approx(coherent_f1(g)));
    CHECK(fidelity_closed(j2).value == doctest::Approx(coherent_f2(g)));
    CHECK_FALSE(fidelity_closed(j2).flagged);
    // TPS beats TMSV at fixed r.
    CHECK(coherent_f2(g) > coherent_f1(g));
  }
  // r = 0.5 headline value and the classical r -> 0 limit.
  CHECK(coherent_f1(std::exp(-1.0)) ==
        doctest::Approx(1.0 / (1.0 + std::exp(-1.0))).epsilon(1e-12));
  CHECK(coherent_f1(1.0) == doctest::Approx(0.5));
}

TEST_CASE("gamma_apply: polynomial oracle and the F2 = Gamma-hat F1 law") {
  // f(g) = g^3: f' = 3g^2, f'' = 6g.
  auto cube = [](double g) { return g * g * g; };
  const double g = 0.4;
  const double pref = g * g * (1 + g) * (1 + g) / (2 * (1 + g * g));
  const double c = (1 - g) / (1 + g);
  const double expected =
      cube(g) + pref * (c * c * 6 * g - 4 * (1 - g) / ((1 + g) * (1 + g)) *
                        3 * g * g);
  CHECK(gamma_apply(cube, g) == doctest::Approx(expected).epsilon(1e-9));

  // Gamma-hat maps every TMSV fidelity to its TPS counterpart.
  for (double gamma : {0.2, 0.45, 0.7}) {
    CHECK(std::abs(gamma_apply(coherent_f1, gamma) - coherent_f2(gamma)) <
          1e-8);
    CHECK(std::abs(gamma_apply([](double x) { return sqv_f1(0.3, x); },
                               gamma) -
                   fidelity_numeric(make_job(SqueezedVacuum{0.3, 0.0},
                                             ResourceKind::Tps,
                                             -0.5 * std::log(gamma)))
                       .value) < 1e-6);
  }

  // Near-edge gammas shrink the stencil instead of failing outright.
  CHECK(gamma_apply(coherent_f1, 0.005) ==
        doctest::Approx(coherent_f2(0.005)).epsilon(1e-6));
  CHECK_THROWS_AS(gamma_apply(cube, 1e-6), cvqt::DomainError);
  CHECK_THROWS_AS(gamma_apply(cube, 1.2), cvqt::DomainError);
}

TEST_CASE("squeezed-vacuum input: F1 exact, printed F2 flagged") {
  const double rho = 0.3, r = 0.5;
  const double g = std::exp(-2.0 * r);
  const TeleportJob j1 = make_job(SqueezedVacuum{rho, 0.0},
                                  ResourceKind::Tmsv, r);
  CHECK(std::abs(fidelity_numeric(j1).value - sqv_f1(rho, g)) < 1e-8);

  const TeleportJob j2 = make_job(SqueezedVacuum{rho, 0.0},
                                  ResourceKind::Tps, r);
  const FidelityResult printed = fidelity_closed(j2);
  CHECK(printed.flagged);
  CHECK(printed.est_error > 1e-6);
  CHECK(printed.value == doctest::Approx(sqv_f2_printed(rho, g)));
  // The integral and the Gamma-hat image of F1 agree with each other.
  CHECK(std::abs(fidelity_numeric(j2).value -
                 gamma_apply([&](double x) { return sqv_f1(rho, x); }, g)) <
        1e-6);
}

TEST_CASE("cat-like input: closed forms vs the integral") {
  const double rho = 0.313;
  for (double r : {0.4, 0.8}) {
    const double g = std::exp(-2.0 * r);
    const TeleportJob j1 = make_job(CatLike{rho, 0.0}, ResourceKind::Tmsv, r);
    const TeleportJob j2 = make_job(CatLike{rho, 0.0}, ResourceKind::Tps, r);
    CHECK(std::abs(fidelity_numeric(j1).value - cat_f1(rho, g)) < 1e-8);
    CHECK(std::abs(fidelity_numeric(j2).value - cat_f2(rho, g)) < 1e-6);
    CHECK(fidelity_closed(j2).route == FidelityRoute::GammaOperator);
    CHECK(std::abs(fidelity_closed(j2).value - cat_f2(rho, g)) < 1e-12);
  }
  // Perfect teleportation limit: F -> 1 as gamma -> 0.
  CHECK(cat_f1(rho, 1e-8) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("chi_output: identity at the origin and damping by the resource") {
  const TeleportJob job = make_job(CatLike{0.313, 0.0}, ResourceKind::Tmsv,
                                   0.5);
  CHECK(std::abs(chi_output(job, complex(0.0, 0.0)) - 1.0) < 1e-14);
  // |chi_out| <= |chi_in| pointwise (the EPR factor never amplifies).
  for (double x : {0.3, 1.0, 2.0}) {
    const complex a(x, -0.5 * x);
    CHECK(std::abs(chi_output(job, a)) <=
          std::abs(cvqt::states::chi_input(job.input, a)) + 1e-14);
  }
  CHECK_THROWS_AS(
      fidelity_numeric(make_job(IdealCat{complex(1.0, 0.0), M_PI},
                                ResourceKind::Tmsv, 0.5)),
      cvqt::DomainError);
}

TEST_CASE("wigner_output: closed W1/W2 match the Fourier route") {
  const double rho = 0.313, r = 0.5;
  const TeleportJob j1 = make_job(CatLike{rho, 0.0}, ResourceKind::Tmsv, r);
  const TeleportJob j2 = make_job(CatLike{rho, 0.0}, ResourceKind::Tps, r);
  for (double x : {0.0, 0.6, -1.1}) {
    for (double y : {0.0, 0.8}) {
      const complex a(x, y);
      CHECK(std::abs(wigner_output(j1, a) - wigner_output_numeric(j1, a)) <
            1e-7);
      CHECK(std::abs(wigner_output(j2, a) - wigner_output_numeric(j2, a)) <
            1e-6);
    }
  }
  // Headline origin values at r = 0.5.
  CHECK(wigner_output(j1, complex(0.0, 0.0)) ==
        doctest::Approx(-0.05).epsilon(0.05));
  CHECK(wigner_output(j2, complex(0.0, 0.0)) ==
        doctest::Approx(-0.20).epsilon(0.05));
  CHECK(wigner_output(j2, complex(0.0, 0.0)) <
        wigner_output(j1, complex(0.0, 0.0)));

  // W1 integrates to 1 (the corrected closed form is a unit-mass field).
  const double g = std::exp(-2.0 * r);
  const double a_const = std::exp(-2.0 * rho) / 2.0 + g;
  const double b_const = std::exp(2.0 * rho) / 2.0 + g;
  const complex total = cvqt::numerics::integrate_phase_plane(
      [&](complex z) {
        return complex(wigner_output(j1, z), 0.0);
      },
      QuadratureSpec{64, 1.0 / b_const, 1.0 / a_const});
  CHECK(std::abs(total.real() * M_PI - 1.0) < 1e-8);
}

TEST_CASE("wigner_output: nonzero input phase uses the rotation rule") {
  const TeleportJob job = make_job(CatLike{0.313, 0.6}, ResourceKind::Tmsv,
                                   0.5);
  for (complex a : {complex(0.4, 0.2), complex(-0.9, 0.5)}) {
    CHECK(std::abs(wigner_output(job, a) - wigner_output_numeric(job, a)) <
          1e-7);
  }
}

TEST_CASE("threshold scans: negativity transfer thresholds") {
  const CatLike input{0.313, 0.0};
  const auto r1 = threshold_r(input, ResourceKind::Tmsv);
  const auto r2 = threshold_r(input, ResourceKind::Tps);
  REQUIRE(r1.has_value());
  REQUIRE(r2.has_value());
  CHECK(*r1 == doctest::Approx(0.35).epsilon(0.06));
  CHECK(*r2 == doctest::Approx(0.20).epsilon(0.08));
  CHECK(*r2 < *r1);

  // Scans bracket the crossing: negative at the high end, positive early.
  const ScanSeries scan = w0_scan(input, ResourceKind::Tmsv, 0.05, 1.0, 20);
  CHECK(scan.value.front() > 0.0);
  CHECK(scan.value.back() < 0.0);

  // A sign-definite series has no crossing.
  ScanSeries flat;
  flat.r = {0.1, 0.2, 0.3};
  flat.value = {1.0, 0.5, 0.25};
  CHECK_FALSE(zero_crossing(flat, [](double) { return 1.0; }).has_value());
}

TEST_CASE("benchmark_margin: classical fails, strong squeezing passes") {
  const complex a(1.0, 0.0);
  CHECK(benchmark_margin(ResourceKind::Tmsv, SqueezeParams{1e-12, 0.0}, a) <
        0.0);
  CHECK(benchmark_margin(ResourceKind::Tmsv, SqueezeParams{2.0, 0.0}, a) >
        0.0);
  // TPS crosses the benchmark at smaller r than TMSV.
  double r_tmsv = 0.0, r_tps = 0.0;
  for (double r = 0.01; r < 2.0; r += 0.01) {
    if (r_tmsv == 0.0 &&
        benchmark_margin(ResourceKind::Tmsv, SqueezeParams{r, 0.0}, a) > 0.0)
      r_tmsv = r;
    if (r_tps == 0.0 &&
        benchmark_margin(ResourceKind::Tps, SqueezeParams{r, 0.0}, a) > 0.0)
      r_tps = r;
  }
  CHECK(r_tps > 0.0);
  CHECK(r_tmsv > 0.0);
  CHECK(r_tps <= r_tmsv);
}

TEST_CASE("job validation") {
  TeleportJob job;
  job.resource = ResourceKind::Tps;
  job.sq = SqueezeParams{0.0, 0.0};
  CHECK_THROWS_AS(job.validate(), cvqt::DomainError);
  job.sq = SqueezeParams{0.5, 0.0};
  job.grid = cvqt::numerics::Grid2D{-1.0, 121};
  CHECK_THROWS_AS(job.validate(), cvqt::ValidationError);
}
