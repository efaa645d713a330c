#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dgo/constants.hpp"
#include "dgo/errors.hpp"
#include "dgo/response.hpp"

namespace c = dgo::constants;
using complexd = std::complex<double>;

namespace {

constexpr double kOmegaCav = 3.139448399734729e15;  // 600 nm
constexpr double kKappaC = 6.283185307179586e6;     // 2 pi x 1 MHz
constexpr double kKappaE = 2.827433388230814e8;     // 2 pi x 45 MHz

dgo::ResponseParams fig3_response() {
  dgo::ResponseParams params;
  params.area_ratio = 0.01;
  return params;
}

}  // namespace

TEST_CASE("pump amplitude at the 5 uW / 600 nm anchor") {
  const double omega_p = kOmegaCav;
  const double e = dgo::pump_amplitude(5e-6, kKappaC, omega_p);
  CHECK(e == doctest::Approx(1.37760e10).epsilon(1e-4));

  CHECK(dgo::pump_amplitude(0.0, kKappaC, omega_p) == 0.0);

  // |E|^2 linear in P
  const double e2 = dgo::pump_amplitude(1e-5, kKappaC, omega_p);
  CHECK(e2 * e2 == doctest::Approx(2.0 * e * e).epsilon(1e-13));

  CHECK_THROWS_AS(dgo::pump_amplitude(1e-6, 0.0, omega_p), std::domain_error);
  CHECK_THROWS_AS(dgo::pump_amplitude(1e-6, kKappaC, -1.0), std::domain_error);
}

TEST_CASE("sigma response at the paper scale") {
  const double n_photon = 2.3e3;
  const complexd abar = std::sqrt(n_photon);
  const complexd sigma = dgo::sigma_response(abar, kKappaE, fig3_response());
  CHECK(std::abs(sigma) == doctest::Approx(0.759639).epsilon(1e-4));
  CHECK(std::abs(sigma) > 0.7);
  CHECK(std::abs(sigma) < 0.8);

  CHECK(dgo::sigma_response(0.0, kKappaE, fig3_response()) == complexd(0.0, 0.0));
  CHECK(dgo::sigma_response(abar, 0.0, fig3_response()) == complexd(0.0, 0.0));
}

TEST_CASE("sigma response is linear in |abar|^2 and phase independent") {
  const dgo::ResponseParams params = fig3_response();
  const complexd base = dgo::sigma_response(10.0, kKappaE, params);
  CHECK(dgo::sigma_response(complexd(10.0, 0.0) * std::sqrt(2.0), kKappaE, params).real() ==
        doctest::Approx(2.0 * base.real()).epsilon(1e-13));
  // |abar|^2 only: the phase of abar does not enter
  const complexd rotated = dgo::sigma_response(complexd(0.0, 10.0), kKappaE, params);
  CHECK(rotated.real() == doctest::Approx(base.real()).epsilon(1e-13));
  CHECK(rotated.imag() == 0.0);
}

TEST_CASE("steady state decouples at kappa_e = 0") {
  const dgo::DriveSpec drive = dgo::DriveSpec::from_power(5e-6, kKappaC, kOmegaCav, 0.0);
  const dgo::SteadyState state = dgo::steady_state(drive, kKappaC, 0.0, fig3_response());
  CHECK(state.converged);
  CHECK(state.iterations == 1);
  CHECK(state.sigma_bar == complexd(0.0, 0.0));
  CHECK(state.abar.real() ==
        doctest::Approx(std::abs(drive.amplitude) / kKappaC).epsilon(1e-14));
  CHECK(state.abar.imag() == 0.0);
}

TEST_CASE("steady state with negligible response reduces to E/(i Delta + kappa)") {
  dgo::ResponseParams tiny = fig3_response();
  tiny.area_ratio = 1e-30;
  const double delta = c::angular_from_hz(-55e6);
  const dgo::DriveSpec drive = dgo::DriveSpec::from_power(5e-6, kKappaC, kOmegaCav, delta);
  const dgo::SteadyState state = dgo::steady_state(drive, kKappaC, kKappaE, tiny);
  const complexd bare = drive.amplitude / complexd(kKappaC + kKappaE, delta);
  CHECK(std::abs(state.abar - bare) <= 1e-12 * std::abs(bare));
}

TEST_CASE("steady state at the Fig. 3 set: residual closes and shift is tiny") {
  const dgo::DriveSpec drive = dgo::DriveSpec::from_power(5e-6, kKappaC, kOmegaCav, 0.0);
  const dgo::SteadyState state = dgo::steady_state(drive, kKappaC, kKappaE, fig3_response());
  CHECK(state.converged);

  // Eq.-9 residual
  const complexd residual = state.abar * complexd(state.kappa_total, drive.detuning) -
                            drive.amplitude - std::sqrt(2.0 * kKappaE) * state.sigma_bar;
  CHECK(std::abs(residual) / std::abs(drive.amplitude) < 1e-12);

  // photon number ~2.3e3 and the self-consistent shift below 0.1%
  CHECK(state.n_photon == doctest::Approx(2.27e3).epsilon(2e-2));
  const double bare = std::norm(drive.amplitude / complexd(state.kappa_total, 0.0));
  CHECK(std::abs(state.n_photon - bare) / bare < 1e-3);

  // drive dominates the response feed by >= 1e4
  const double feed = std::sqrt(2.0 * kKappaE) * std::abs(state.sigma_bar);
  CHECK(std::abs(drive.amplitude) / feed > 1e4);
}

TEST_CASE("steady state at zero power is dark") {
  const dgo::DriveSpec drive = dgo::DriveSpec::from_power(0.0, kKappaC, kOmegaCav, 0.0);
  const dgo::SteadyState state = dgo::steady_state(drive, kKappaC, kKappaE, fig3_response());
  CHECK(state.abar == complexd(0.0, 0.0));
  CHECK(state.sigma_bar == complexd(0.0, 0.0));
  CHECK(state.n_photon == 0.0);
}

TEST_CASE("effective couplings close against the stored steady state") {
  const double delta = c::angular_from_hz(-30e6);
  const dgo::DriveSpec drive = dgo::DriveSpec::from_power(5e-6, kKappaC, kOmegaCav, delta);
  const dgo::SteadyState state = dgo::steady_state(drive, kKappaC, kKappaE, fig3_response());
  const double eta = 2.2e-3;
  const dgo::EffectiveCouplings gg =
      dgo::effective_couplings(state, eta, kKappaE, fig3_response());

  const double sqrt_2ke = std::sqrt(2.0 * kKappaE);
  const complexd g_expected = (2.0 * state.abar * kKappaE - sqrt_2ke * state.sigma_bar) * eta;
  const complexd ge_expected = sqrt_2ke * state.sigma_bar * eta;
  CHECK(std::abs(gg.g - g_expected) == 0.0);
  CHECK(std::abs(gg.g_e - ge_expected) == 0.0);

  // definition closure: G - 2 abar kappa_e eta + sqrt(2ke) sigma eta = 0
  const complexd closure = gg.g - 2.0 * state.abar * kKappaE * eta + ge_expected;
  CHECK(std::abs(closure) <= 1e-12 * std::abs(gg.g));

  CHECK(dgo::effective_couplings(state, 0.0, kKappaE, fig3_response()).g == complexd(0.0, 0.0));
  CHECK(dgo::effective_couplings(state, 0.0, kKappaE, fig3_response()).g_e == complexd(0.0, 0.0));

  dgo::SteadyState bad = state;
  bad.converged = false;
  CHECK_THROWS_AS(dgo::effective_couplings(bad, eta, kKappaE, fig3_response()),
                  dgo::validity_error);
}

TEST_CASE("sigma forced to zero gives pure absorptive-profile coupling") {
  dgo::ResponseParams tiny = fig3_response();
  tiny.area_ratio = 1e-30;
  const dgo::DriveSpec drive = dgo::DriveSpec::from_power(5e-6, kKappaC, kOmegaCav, 0.0);
  const dgo::SteadyState state = dgo::steady_state(drive, kKappaC, kKappaE, tiny);
  const dgo::EffectiveCouplings gg = dgo::effective_couplings(state, 2.2e-3, kKappaE, tiny);
  CHECK(std::abs(gg.g_e) < 1e-20 * std::abs(gg.g));
  CHECK(std::abs(gg.g - 2.0 * state.abar * kKappaE * 2.2e-3) < 1e-9 * std::abs(gg.g));
}

TEST_CASE("drive construction validates and stores the pump relation") {
  const dgo::DriveSpec drive = dgo::DriveSpec::from_power(5e-6, kKappaC, kOmegaCav, 1e7);
  CHECK(drive.pump_frequency == doctest::Approx(kOmegaCav - 1e7));
  const double expected = std::sqrt(2.0 * 5e-6 * kKappaC / (c::hbar * drive.pump_frequency));
  CHECK(std::abs(drive.amplitude) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(drive.amplitude.imag() == 0.0);
  CHECK(drive.amplitude.real() > 0.0);
}
