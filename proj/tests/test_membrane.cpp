#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dgo/constants.hpp"
#include "dgo/membrane.hpp"

namespace c = dgo::constants;

namespace {

dgo::MembraneSpec paper_spec() {
  dgo::MembraneSpec spec;
  spec.diameter = 30e-6;
  spec.strain = 0.01;
  spec.stiffness2d = 340.0;
  spec.areal_density = 7.4e-7;  // 7.4e-19 kg/um^2
  spec.intrinsic_damping = c::angular_from_hz(10.0);
  spec.temperature = 0.26;
  return spec;
}

}  // namespace

TEST_CASE("fundamental frequency reproduces the 55 MHz anchor within 2%") {
  const double omega = dgo::fundamental_frequency(paper_spec());
  CHECK(std::abs(c::hz_from_angular(omega) - 55e6) < 0.02 * 55e6);
}

TEST_CASE("fundamental frequency follows the exact 1/D law") {
  dgo::MembraneSpec spec = paper_spec();
  const double base = dgo::fundamental_frequency(spec);
  spec.diameter *= 2.0;
  CHECK(dgo::fundamental_frequency(spec) == doctest::Approx(0.5 * base).epsilon(1e-14));

  // omega * D constant across diameters
  dgo::MembraneSpec other = paper_spec();
  other.diameter = 7.3e-6;
  CHECK(dgo::fundamental_frequency(other) * other.diameter ==
        doctest::Approx(base * 30e-6).epsilon(1e-12));
}

TEST_CASE("10 um membrane: direct formula evaluation and 3x scaling") {
  dgo::MembraneSpec spec = paper_spec();
  spec.diameter = 10e-6;
  const double omega = dgo::fundamental_frequency(spec);
  const double direct =
      c::two_pi * 0.766 * std::sqrt(340.0 * 0.01 / 7.4e-7) / 10e-6;
  CHECK(omega == doctest::Approx(direct).epsilon(1e-14));
  CHECK(omega == doctest::Approx(3.0 * dgo::fundamental_frequency(paper_spec())).epsilon(1e-13));
}

TEST_CASE("frequency scales as sqrt(strain)") {
  dgo::MembraneSpec spec = paper_spec();
  const double base = dgo::fundamental_frequency(spec);
  spec.strain *= 2.0;
  CHECK(dgo::fundamental_frequency(spec) ==
        doctest::Approx(std::sqrt(2.0) * base).epsilon(1e-14));
}

TEST_CASE("effective mass of the 30 um sheet") {
  const double m = dgo::effective_mass(paper_spec());
  CHECK(m == doctest::Approx(1.412303e-16).epsilon(1e-5));

  dgo::MembraneSpec spec = paper_spec();
  spec.areal_density *= 2.0;
  CHECK(dgo::effective_mass(spec) == doctest::Approx(2.0 * m).epsilon(1e-14));

  for (const double d : {5e-6, 12e-6, 48e-6}) {
    spec = paper_spec();
    spec.diameter = d;
    const double sheet_mass = spec.areal_density * M_PI * 0.25 * d * d;
    CHECK(dgo::effective_mass(spec) / sheet_mass == doctest::Approx(0.27).epsilon(1e-14));
  }
}

TEST_CASE("zero point amplitude at the paper scale") {
  const double omega = c::angular_from_hz(55e6);
  const double x = dgo::zero_point_amplitude(omega, 1.41e-16);
  CHECK(x == doctest::Approx(3.2896e-14).epsilon(1e-4));

  CHECK(dgo::zero_point_amplitude(omega, 4.0 * 1.41e-16) ==
        doctest::Approx(0.5 * x).epsilon(1e-14));
}

TEST_CASE("x_zpf closure identity holds to machine precision") {
  for (const double d : {8e-6, 30e-6, 90e-6}) {
    dgo::MembraneSpec spec = paper_spec();
    spec.diameter = d;
    const dgo::MechanicalMode mode = dgo::mechanical_mode(spec);
    const double closure = mode.x_zpf * mode.x_zpf * 2.0 * mode.m_eff * mode.omega_m;
    CHECK(closure == doctest::Approx(c::hbar).epsilon(1e-14));
  }
}

TEST_CASE("thermal occupancy anchor: 0.26 K at 2 pi x 55 MHz gives ~100") {
  const double n = dgo::thermal_occupancy(0.26, c::angular_from_hz(55e6));
  CHECK(std::abs(n - 100.0) < 5.0);
  CHECK(n == doctest::Approx(98.0004).epsilon(1e-4));
}

TEST_CASE("thermal occupancy limits") {
  const double omega = c::angular_from_hz(55e6);
  CHECK(dgo::thermal_occupancy(0.0, omega) == 0.0);

  for (const double ratio : {50.0, 200.0, 1e4}) {
    const double t = ratio * c::hbar * omega / c::k_boltzmann;
    const double n = dgo::thermal_occupancy(t, omega);
    CHECK(std::abs(n - ratio) / ratio < 0.01);
  }
}

TEST_CASE("thermal occupancy is monotone in T and omega") {
  const double omega = c::angular_from_hz(55e6);
  double previous = 0.0;
  for (const double t : {0.01, 0.1, 0.26, 1.0, 4.2}) {
    const double n = dgo::thermal_occupancy(t, omega);
    CHECK(n > previous);
    previous = n;
  }
  previous = dgo::thermal_occupancy(0.26, 0.5 * omega);
  for (const double scale : {1.0, 2.0, 5.0}) {
    const double n = dgo::thermal_occupancy(0.26, scale * omega);
    CHECK(n < previous);
    previous = n;
  }
}

TEST_CASE("mechanical mode bundles the derived quantities") {
  const dgo::MechanicalMode mode = dgo::mechanical_mode(paper_spec());
  CHECK(mode.omega_m > 0.0);
  CHECK(mode.m_eff > 0.0);
  CHECK(mode.x_zpf == doctest::Approx(3.295e-14).epsilon(1e-3));
  CHECK(mode.n_th > 90.0);

  dgo::MembraneSpec cold = paper_spec();
  cold.temperature = 0.0;
  CHECK(dgo::mechanical_mode(cold).n_th == 0.0);
}

TEST_CASE("domain errors on invalid inputs") {
  dgo::MembraneSpec spec = paper_spec();
  spec.diameter = -1.0;
  CHECK_THROWS_AS(dgo::fundamental_frequency(spec), std::domain_error);
  CHECK_THROWS_AS(spec.validate(), std::domain_error);

  spec = paper_spec();
  spec.strain = 0.2;  // above the 10% bound
  CHECK_THROWS_AS(spec.validate(), std::domain_error);
  spec.strain = 5e-5;  // below the 0.01% bound
  CHECK_THROWS_AS(spec.validate(), std::domain_error);

  CHECK_THROWS_AS(dgo::zero_point_amplitude(-1.0, 1e-16), std::domain_error);
  CHECK_THROWS_AS(dgo::zero_point_amplitude(1e8, 0.0), std::domain_error);
  CHECK_THROWS_AS(dgo::thermal_occupancy(-0.1, 1e8), std::domain_error);
  CHECK_THROWS_AS(dgo::thermal_occupancy(0.26, 0.0), std::domain_error);
}
