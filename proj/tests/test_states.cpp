#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "cvqt/numerics.hpp"
#include "cvqt/states.hpp"

using namespace cvqt::states;
using cvqt::numerics::QuadratureSpec;
using complex = std::complex<double>;

TEST_CASE("chi_resource: normalization and the Appendix C reduction") {
  const SqueezeParams sq{0.5, 0.0};
  CHECK(std::abs(chi_resource(ResourceKind::Tmsv, sq, 0.0, 0.0) - 1.0) <
        1e-15);
  CHECK(std::abs(chi_resource(ResourceKind::Tps, sq, 0.0, 0.0) - 1.0) < 1e-15);

  // chi_TMSV(-a*, -a) = e^{-gamma |a|^2} at the optimal phase.
  const complex a(1.0, 0.0);
  const complex chi =
      chi_resource(ResourceKind::Tmsv, sq, -std::conj(a), -a);
  CHECK(chi.real() == doctest::Approx(std::exp(-std::exp(-1.0))).epsilon(1e-12));
  CHECK(std::abs(chi.imag()) < 1e-15);

  // Appendix C bracket for TPS, same reduction.
  const double g = sq.gamma(), t = std::tanh(0.5), u = std::norm(a);
  const double bracket =
      (1.0 + 2.0 * g * t * u + t * t * (1.0 - g * u) * (1.0 - g * u)) /
      (1.0 + t * t);
  const complex chi_tps = chi_resource(ResourceKind::Tps, sq, -std::conj(a), -a);
  CHECK(chi_tps.real() ==
        doctest::Approx(std::exp(-g * u) * bracket).epsilon(1e-12));
}

TEST_CASE("chi_resource: TPS -> TMSV continuity at small r; r=0 domain error") {
  const complex a1(0.4, -0.2), a2(-0.3, 0.5);
  // The bracket deviates from 1 by O(tanh r), so the gap shrinks linearly.
  const SqueezeParams tiny{1e-6, 0.7};
  CHECK(std::abs(chi_resource(ResourceKind::Tps, tiny, a1, a2) -
                 chi_resource(ResourceKind::Tmsv, tiny, a1, a2)) < 1e-6);
  const SqueezeParams tinier{1e-8, 0.7};
  CHECK(std::abs(chi_resource(ResourceKind::Tps, tinier, a1, a2) -
                 chi_resource(ResourceKind::Tmsv, tinier, a1, a2)) < 1e-7);
  CHECK_THROWS_AS(
      chi_resource(ResourceKind::Tps, SqueezeParams{0.0, 0.0}, a1, a2),
      cvqt::DomainError);
}

TEST_CASE("chi_input: closed forms") {
  CHECK(std::abs(chi_input(CatLike{0.313, 0.0}, 0.0) - 1.0) < 1e-15);

  const complex v = chi_input(Coherent{complex(2.0, 0.0)}, complex(0.0, 1.0));
  CHECK(std::abs(v) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(std::arg(v) == doctest::Approx(4.0 - 2.0 * M_PI).epsilon(1e-9));

  const complex a(0.7, -0.3);
  CHECK(std::abs(chi_input(SqueezedVacuum{0.0, 1.3}, a) -
                 std::exp(-0.5 * std::norm(a))) < 1e-14);

  CHECK_THROWS_AS(chi_input(IdealCat{complex(1.0, 0.0), M_PI}, a),
                  cvqt::DomainError);
}

TEST_CASE("wigner_resource: origin values and TPS negativity") {
  const SqueezeParams sq{1.0, 0.0};
  CHECK(wigner_resource(ResourceKind::Tmsv, sq, 0.0, 0.0) ==
        doctest::Approx(4.0 / (M_PI * M_PI)).epsilon(1e-12));
  CHECK(wigner_resource(ResourceKind::Tps, sq, 0.0, 0.0) ==
        doctest::Approx(4.0 / (M_PI * M_PI)).epsilon(1e-12));

  double min_w = 1.0;
  for (double x = -2.0; x <= 2.0; x += 0.25)
    for (double y = -2.0; y <= 2.0; y += 0.25)
      min_w = std::min(min_w, wigner_resource(ResourceKind::Tps, sq,
                                              complex(x, y), complex(y, x)));
  CHECK(min_w < 0.0);
}

TEST_CASE("wigner closed forms match the Fourier route") {
  // 5x5 sample of (alpha, beta) points for the resources, and a single-mode
  // sample for the cat-like state.
  const SqueezeParams sq{0.7, 1.1};
  QuadratureSpec spec{64, 0.1};
  for (double x : {-0.8, 0.0, 0.9}) {
    for (double y : {-0.5, 0.4}) {
      const complex beta(x, y);
      const double closed = wigner_catlike(0.313, 0.0, beta);
      // Worst-direction decay of chi_cat is e^{-2 rho}/2 = 0.267.
      const double fourier = cvqt::numerics::wigner_from_characteristic(
          [&](complex a) { return chi_input(CatLike{0.313, 0.0}, a); }, beta,
          QuadratureSpec{64, 0.25});
      CHECK(std::abs(closed - fourier) < 1e-6);
    }
  }
  (void)sq;
}

TEST_CASE("wigner_catlike: trivial values") {
  CHECK(wigner_catlike(0.5, 0.2, 0.0) ==
        doctest::Approx(-2.0 / M_PI).epsilon(1e-12));
  CHECK(std::abs(wigner_catlike(0.0, 0.0, complex(0.5, 0.0))) < 1e-14);
}

TEST_CASE("quadrature_amplitude: EPR peak, dip, and normalization") {
  // phi = pi: psi_xi(0,0) = 1/sqrt(pi).
  const SqueezeParams sq{1.0, M_PI};
  const complex peak = quadrature_amplitude(ResourceKind::Tmsv, sq, 0.0, 0.0);
  CHECK(std::abs(peak) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-12));

  // TPS dip at x2 = 0 along x1 = 0 in rotated coordinates.
  auto tps_sq = [&](double x1, double x2) {
    const double xa = (x1 + x2) / std::sqrt(2.0);
    const double xb = (x1 - x2) / std::sqrt(2.0);
    return std::norm(quadrature_amplitude(ResourceKind::Tps, sq, xa, xb));
  };
  CHECK(tps_sq(0.0, 0.0) < tps_sq(0.0, 0.8));

  // Normalization of |psi|^2, integrated in the rotated EPR coordinates
  // where the Gaussian is axis-aligned (decay e^{2r} / e^{-2r} at phi = pi).
  for (ResourceKind kind : {ResourceKind::Tmsv, ResourceKind::Tps}) {
    const complex total = cvqt::numerics::integrate_phase_plane(
        [&](complex z) {
          const double xa = (z.real() + z.imag()) / std::sqrt(2.0);
          const double xb = (z.real() - z.imag()) / std::sqrt(2.0);
          return complex(std::norm(quadrature_amplitude(kind, sq, xa, xb)),
                         0.0);
        },
        QuadratureSpec{64, std::exp(2.0 * sq.r), std::exp(-2.0 * sq.r)});
    CHECK(std::abs(total.real() * M_PI - 1.0) < 1e-8);
  }
}

TEST_CASE("photon_number_prob: values, ratios and normalization") {
  const SqueezeParams r1{1.0, 0.0};
  CHECK(photon_number_prob(ResourceKind::Tmsv, r1, 0) ==
        doctest::Approx(1.0 / (std::cosh(1.0) * std::cosh(1.0)))
            .epsilon(1e-12));

  auto ratio = [](double r) {
    const SqueezeParams sq{r, 0.0};
    return photon_number_prob(ResourceKind::Tps, sq, 1) /
           photon_number_prob(ResourceKind::Tmsv, sq, 1);
  };
  // 4 / (cosh^4 r (1 + tanh^2 r)).
  auto formula = [](double r) {
    const double ch = std::cosh(r), t = std::tanh(r);
    return 4.0 / (ch * ch * ch * ch * (1.0 + t * t));
  };
  CHECK(ratio(1.0) == doctest::Approx(formula(1.0)).epsilon(1e-12));
  CHECK(ratio(1.0) == doctest::Approx(0.447).epsilon(2e-3));
  CHECK(ratio(5.0) > 5e-8);
  CHECK(ratio(5.0) < 8e-8);

  for (ResourceKind kind : {ResourceKind::Tmsv, ResourceKind::Tps}) {
    double sum = 0.0;
    for (int n = 0; n < 400; ++n) sum += photon_number_prob(kind, r1, n);
    CHECK(std::abs(sum - 1.0) < 1e-10);
  }
}

TEST_CASE("squeezing_closed: values, ratio and the large-r limit") {
  CHECK(squeezing_closed(ResourceKind::Tmsv, 1.0) ==
        doctest::Approx(-(1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-14));
  CHECK(squeezing_closed(ResourceKind::Tps, 1.0) ==
        doctest::Approx(-0.44788).epsilon(1e-4));
  for (double r : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    const double s_tmsv = squeezing_closed(ResourceKind::Tmsv, r);
    const double s_tps = squeezing_closed(ResourceKind::Tps, r);
    CHECK(std::abs(s_tps) >= std::abs(s_tmsv));
    CHECK(std::abs(s_tps / s_tmsv - (2.0 - std::tanh(2.0 * r))) < 1e-12);
    CHECK(s_tps <= 0.0);
    CHECK(s_tmsv <= 0.0);
  }
  CHECK(std::abs(squeezing_closed(ResourceKind::Tmsv, 5.0) + 0.5) < 1e-4);
  CHECK(std::abs(squeezing_closed(ResourceKind::Tps, 5.0) + 0.5) < 1e-4);
  CHECK_THROWS_AS(squeezing_closed(ResourceKind::Tps, 0.0), cvqt::DomainError);
}

TEST_CASE("BogoliubovMap: symplectic determinant") {
  for (double r : {0.3, 1.0, 20.0}) {
    const BogoliubovMap map(SqueezeParams{r, 0.4});
    CHECK(std::abs(map.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SqueezeParams(-0.1, 0.0), cvqt::ValidationError);
  CHECK_THROWS_AS(SqueezeParams(25.0, 0.0), cvqt::ValidationError);
  CHECK_THROWS_AS((IdealCat{complex(0.0, 0.0), M_PI}).validate(),
                  cvqt::ValidationError);
  CHECK_NOTHROW((IdealCat{complex(1.0, 0.0), M_PI}).validate());
}
