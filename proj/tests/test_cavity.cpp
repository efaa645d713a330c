#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dgo/cavity.hpp"
#include "dgo/constants.hpp"
#include "dgo/errors.hpp"

namespace c = dgo::constants;

namespace {

dgo::CavitySpec paper_cavity() {
  dgo::CavitySpec spec;
  spec.length = 30e-6;
  spec.wavelength = 600e-9;
  spec.kappa_c = c::angular_from_hz(1e6);
  return spec;
}

constexpr double kXzpf = 3.295e-14;

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  // composite Simpson, `panels` must be even
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    sum += f(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// integral of exp(-2 r^2 / w2) over the transverse plane, by quadrature
double transverse_integral(double w2, int panels = 400) {
  const double rmax = 8.0 * std::sqrt(w2);
  return simpson([&](double r) { return std::exp(-2.0 * r * r / w2) * c::two_pi * r; }, 0.0,
                 rmax, panels);
}

// Direct quadrature of kappa_e = W_max A_eff / integral(u dV), amplitude
// convention: the independent oracle for the closed form.
double kappa_e_by_quadrature(const dgo::CavitySpec& spec, const dgo::BeamGeometry& geom,
                             double x0, double fermi, double volume_integral) {
  const double s = std::sin(geom.wavenumber * x0);
  const double w_max = M_PI * c::fine_structure * c::c_light * fermi * s * s;
  const double a_eff = transverse_integral(geom.width_sq(x0));
  return 0.5 * w_max * a_eff / volume_integral;
}

double volume_integral_by_quadrature(const dgo::CavitySpec& spec,
                                     const dgo::BeamGeometry& geom) {
  const double w0_2 = geom.waist * geom.waist;
  return simpson(
      [&](double x) {
        const double s = std::sin(geom.wavenumber * x);
        const double w2 = geom.width_sq(x);
        return s * s * (w0_2 / w2) * transverse_integral(w2, 200);
      },
      -0.5 * spec.length, 0.5 * spec.length, 20000);
}

}  // namespace

TEST_CASE("near-confocal default waist and Rayleigh range") {
  const dgo::BeamGeometry geom = dgo::beam_waist(paper_cavity());
  CHECK(geom.waist == doctest::Approx(1.6925688e-6).epsilon(1e-6));
  // z_R = pi w0^2 / lambda = L/2 exactly for the confocal default
  CHECK(geom.rayleigh_range == doctest::Approx(15e-6).epsilon(1e-12));
}

TEST_CASE("waist override passes through; inconsistent waist rejected") {
  dgo::CavitySpec spec = paper_cavity();
  spec.waist_override = 2e-6;
  CHECK(dgo::beam_waist(spec).waist == 2e-6);

  spec.waist_override = 0.5e-6;  // z_R ~ 1.3 um, far below L/2
  CHECK_THROWS_AS(dgo::beam_waist(spec), std::domain_error);
}

TEST_CASE("energy density: node, antinode, transverse falloff") {
  const dgo::CavitySpec spec = paper_cavity();
  const dgo::BeamGeometry geom = dgo::beam_waist(spec);
  CHECK(dgo::energy_density(geom, 0.0, 0.0) == 0.0);
  CHECK(dgo::energy_density(geom, 0.0, 1e-6) == 0.0);

  const double quarter = 0.25 * spec.wavelength;
  CHECK(dgo::energy_density(geom, quarter, 0.0) == doctest::Approx(1.0).epsilon(1e-4));
  const double ratio =
      dgo::energy_density(geom, quarter, geom.waist) / dgo::energy_density(geom, quarter, 0.0);
  CHECK(ratio == doctest::Approx(std::exp(-2.0)).epsilon(1e-3));
}

TEST_CASE("effective area: closed form equals lambda L / 4 at the waist") {
  const dgo::CavitySpec spec = paper_cavity();
  const dgo::BeamGeometry geom = dgo::beam_waist(spec);
  // pi w0^2/2 with w0^2 = lambda L / (2 pi) collapses to lambda L / 4
  CHECK(dgo::effective_area(geom, 0.0) == doctest::Approx(4.5e-12).epsilon(1e-12));

  for (const double x : {1e-6, 5e-6, 12e-6}) {
    CHECK(dgo::effective_area(geom, x) / dgo::effective_area(geom, 0.0) ==
          doctest::Approx(geom.width_sq(x) / (geom.waist * geom.waist)).epsilon(1e-14));
  }
}

TEST_CASE("effective area matches 2-D quadrature within 1e-6") {
  const dgo::BeamGeometry geom = dgo::beam_waist(paper_cavity());
  for (const double x : {0.0, 150e-9, 4e-6, 11e-6}) {
    const double closed = dgo::effective_area(geom, x);
    const double quad = transverse_integral(geom.width_sq(x), 2000);
    CHECK(std::abs(quad - closed) / closed < 1e-6);
  }
}

TEST_CASE("fermi factor limits") {
  const double photon = c::hbar * paper_cavity().omega_cav();  // ~2.07 eV

  CHECK(dgo::fermi_factor(0.0, 0.0, photon) == 1.0);
  CHECK(dgo::fermi_factor(300.0, 0.0, photon) == doctest::Approx(1.0).epsilon(1e-3));

  // Pauli blocking once the Fermi level passes half the photon energy
  CHECK(dgo::fermi_factor(0.0, 0.6 * photon, photon) == 0.0);
  CHECK(dgo::fermi_factor(1.0, 0.6 * photon, photon) < 1e-6);

  // bounded and monotone decreasing in mu >= 0
  double previous = 1.1;
  for (const double mu : {0.0, 0.2, 0.45, 0.5, 0.55, 0.8}) {
    const double f = dgo::fermi_factor(300.0, mu * photon, photon);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(f <= previous);
    previous = f;
  }
  CHECK_THROWS_AS(dgo::fermi_factor(300.0, 0.0, -1.0), std::domain_error);
}

TEST_CASE("absorption rate: node zero, antinode maximum, symmetry") {
  const dgo::CavitySpec spec = paper_cavity();
  const dgo::BeamGeometry geom = dgo::beam_waist(spec);
  CHECK(dgo::absorption_rate(spec, geom, 0.0, 1.0) == 0.0);

  const double quarter = 0.25 * spec.wavelength;
  const double peak = dgo::absorption_rate(spec, geom, quarter, 1.0);
  for (const double x : {0.1 * quarter, 0.5 * quarter, 0.9 * quarter, 1.5 * quarter}) {
    CHECK(dgo::absorption_rate(spec, geom, x, 1.0) < peak);
  }
  for (const double x : {3e-9, 80e-9, 140e-9}) {
    CHECK(dgo::absorption_rate(spec, geom, -x, 1.0) ==
          doctest::Approx(dgo::absorption_rate(spec, geom, x, 1.0)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(dgo::absorption_rate(spec, geom, 20e-6, 1.0), std::domain_error);
}

TEST_CASE("closed-form kappa_e matches 3-D quadrature within 1e-4 at 20 points") {
  const dgo::CavitySpec spec = paper_cavity();
  const dgo::BeamGeometry geom = dgo::beam_waist(spec);
  const double fermi = 1.0;
  const double volume = volume_integral_by_quadrature(spec, geom);

  // sample from a few nm off the node out to L/4 where the beam widens
  std::vector<double> samples;
  for (int i = 0; i < 20; ++i) {
    samples.push_back(30e-9 * std::pow(7.5e-6 / 30e-9, i / 19.0));
  }
  for (const double x0 : samples) {
    const double closed = dgo::absorption_rate(spec, geom, x0, fermi);
    const double quad = kappa_e_by_quadrature(spec, geom, x0, fermi, volume);
    CHECK(std::abs(quad - closed) / closed < 1e-4);
  }
}

TEST_CASE("operating point for kappa_e = 2 pi x 45 MHz sits a few nm from the node") {
  const dgo::CavitySpec spec = paper_cavity();
  const dgo::BeamGeometry geom = dgo::beam_waist(spec);
  const double target = c::angular_from_hz(45e6);
  const double x0 = dgo::position_for_absorption(spec, geom, 1.0, target);
  CHECK(x0 > 2e-9);
  CHECK(x0 < 5e-9);
  CHECK(dgo::absorption_rate(spec, geom, x0, 1.0) == doctest::Approx(target).epsilon(1e-10));
}

TEST_CASE("eta product matches central finite differences within 1e-6") {
  const dgo::CavitySpec spec = paper_cavity();
  const dgo::BeamGeometry geom = dgo::beam_waist(spec);
  const double fermi = 1.0;
  const double h = 1e-12;
  const double lo = 0.5e-9;
  const double hi = spec.wavelength / 8.0;
  for (int i = 0; i < 25; ++i) {
    const double x0 = lo * std::pow(hi / lo, i / 24.0);
    const double analytic = dgo::eta_product(spec, geom, fermi, x0, kXzpf);
    const double fplus = std::sqrt(2.0 * dgo::absorption_rate(spec, geom, x0 + h, fermi));
    const double fminus = std::sqrt(2.0 * dgo::absorption_rate(spec, geom, x0 - h, fermi));
    const double fd = kXzpf * (fplus - fminus) / (2.0 * h);
    CHECK(std::abs(analytic - fd) / std::abs(fd) < 1e-6);
  }
}

TEST_CASE("eta behaves as X_ZPF/x0 near the node and errors at the node") {
  const dgo::CavitySpec spec = paper_cavity();
  const dgo::BeamGeometry geom = dgo::beam_waist(spec);
  const auto eta = dgo::coupling_eta(spec, geom, 1.0, 1e-9, kXzpf);
  CHECK(eta.eta_kappa == doctest::Approx(kXzpf / 1e-9).epsilon(1e-4));
  CHECK_THROWS_AS(dgo::coupling_eta(spec, geom, 1.0, 0.0, kXzpf), dgo::validity_error);
}

TEST_CASE("eta product is small at the antinode where the profile peaks") {
  const dgo::CavitySpec spec = paper_cavity();
  const dgo::BeamGeometry geom = dgo::beam_waist(spec);
  const double at_node = dgo::eta_product(spec, geom, 1.0, 0.0, kXzpf);
  const double at_antinode = dgo::eta_product(spec, geom, 1.0, 0.25 * spec.wavelength, kXzpf);
  // only the slow waist-variation term survives at the antinode
  CHECK(std::abs(at_antinode) < 1e-4 * std::abs(at_node));
  CHECK(std::isfinite(at_node));
}

TEST_CASE("coupling profile over half a wavelength: zeros at ends, one maximum") {
  const dgo::CavitySpec spec = paper_cavity();
  const dgo::BeamGeometry geom = dgo::beam_waist(spec);
  const auto profile =
      dgo::coupling_profile(spec, geom, 1.0, kXzpf, 0.0, 0.5 * spec.wavelength, 201);
  REQUIRE(profile.size() == 201);
  CHECK(profile.front().kappa_e == 0.0);
  CHECK(profile.back().kappa_e == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(std::isnan(profile.front().eta_kappa));
  CHECK(std::isfinite(profile.front().eta_sqrt_2ke));

  std::size_t argmax = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i].kappa_e > profile[argmax].kappa_e) argmax = i;
  }
  CHECK(argmax > 0);
  CHECK(argmax < profile.size() - 1);
  // rises to the antinode, falls after it
  for (std::size_t i = 1; i <= argmax; ++i) CHECK(profile[i].kappa_e >= profile[i - 1].kappa_e);
  for (std::size_t i = argmax + 1; i < profile.size(); ++i) {
    CHECK(profile[i].kappa_e <= profile[i - 1].kappa_e);
  }

  // consistency of the stored fields: eta*sqrt(2ke) = dke/dx * X / sqrt(2ke)
  for (const auto& p : profile) {
    if (p.kappa_e > 1e3) {
      CHECK(p.eta_sqrt_2ke ==
            doctest::Approx(p.dkappa_e_dx * kXzpf / std::sqrt(2.0 * p.kappa_e)).epsilon(1e-10));
    }
  }
}
