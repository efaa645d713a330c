#include "dgo/cavity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dgo/constants.hpp"
#include "dgo/errors.hpp"

namespace dgo {

namespace c = constants;

double CavitySpec::omega_cav() const { return c::two_pi * c::c_light / wavelength; }

double CavitySpec::wavenumber() const { return c::two_pi / wavelength; }

void CavitySpec::validate() const {
  if (!(length > 0.0)) throw std::domain_error("cavity: length must be positive");
  if (!(wavelength > 0.0)) throw std::domain_error("cavity: wavelength must be positive");
  if (!(kappa_c > 0.0)) throw std::domain_error("cavity: kappa_c must be positive");
  if (!(wavelength * 10.0 <= length)) {
    throw std::domain_error("cavity: wavelength must be at least 10x smaller than length");
  }
  if (waist_override && !(*waist_override > 0.0)) {
    throw std::domain_error("cavity: waist_override must be positive");
  }
}

double BeamGeometry::width_sq(double x) const {
  const double ratio = x / rayleigh_range;
  return waist * waist * (1.0 + ratio * ratio);
}

BeamGeometry beam_waist(const CavitySpec& spec, double confocal_slack) {
  spec.validate();
  BeamGeometry geom;
  geom.wavenumber = spec.wavenumber();
  geom.waist = spec.waist_override
                   ? *spec.waist_override
                   : std::sqrt(spec.wavelength * spec.length / c::two_pi);
  geom.rayleigh_range = M_PI * geom.waist * geom.waist / spec.wavelength;
  if (geom.rayleigh_range * confocal_slack < 0.5 * spec.length) {
    throw std::domain_error(
        "cavity: Rayleigh range shorter than L/2 beyond tolerance; waist is "
        "inconsistent with the cavity length");
  }
  return geom;
}

double energy_density(const BeamGeometry& geom, double x, double r) {
  const double s = std::sin(geom.wavenumber * x);
  const double w2 = geom.width_sq(x);
  const double w0_2 = geom.waist * geom.waist;
  return s * s * (w0_2 / w2) * std::exp(-2.0 * r * r / w2);
}

double effective_area(const BeamGeometry& geom, double x) {
  return 0.5 * M_PI * geom.width_sq(x);
}

double fermi_factor(double temperature, double chemical_potential, double photon_energy) {
  if (!(photon_energy > 0.0)) {
    throw std::domain_error("fermi_factor: photon energy must be positive");
  }
  if (temperature < 0.0) throw std::domain_error("fermi_factor: temperature must be >= 0");
  const double e_c = 0.5 * photon_energy;
  const double e_v = -0.5 * photon_energy;
  if (temperature == 0.0) {
    const double f_v = e_v < chemical_potential ? 1.0 : 0.0;
    const double f_c = e_c < chemical_potential ? 1.0 : 0.0;
    return f_v - f_c;
  }
  const double beta = 1.0 / (c::k_boltzmann * temperature);
  const auto fermi = [&](double e) { return 1.0 / (std::exp((e - chemical_potential) * beta) + 1.0); };
  return fermi(e_v) - fermi(e_c);
}

namespace {

void check_inside_cavity(const CavitySpec& spec, double x0) {
  if (std::abs(x0) > 0.5 * spec.length) {
    throw std::domain_error("cavity: x0 outside [-L/2, L/2]");
  }
}

void check_fermi(double fermi) {
  if (!(fermi >= 0.0 && fermi <= 1.0)) {
    throw std::domain_error("cavity: fermi factor must lie in [0, 1]");
  }
}

// Prefactor C in kappa_e(x) = C sin^2(kx) W(x); W(x) = w(x)^2/w0^2.
double rate_prefactor(const CavitySpec& spec, double fermi) {
  return fermi * M_PI * c::fine_structure * c::c_light / spec.length;
}

}  // namespace

double absorption_rate(const CavitySpec& spec, const BeamGeometry& geom, double x0,
                       double fermi) {
  check_inside_cavity(spec, x0);
  check_fermi(fermi);
  const double s = std::sin(geom.wavenumber * x0);
  const double w_ratio_sq = geom.width_sq(x0) / (geom.waist * geom.waist);
  return rate_prefactor(spec, fermi) * s * s * w_ratio_sq;
}

double absorption_rate_slope(const CavitySpec& spec, const BeamGeometry& geom, double x0,
                             double fermi) {
  check_inside_cavity(spec, x0);
  check_fermi(fermi);
  const double k = geom.wavenumber;
  const double zr2 = geom.rayleigh_range * geom.rayleigh_range;
  const double s = std::sin(k * x0);
  const double big_w = 1.0 + x0 * x0 / zr2;
  return rate_prefactor(spec, fermi) *
         (k * std::sin(2.0 * k * x0) * big_w + s * s * 2.0 * x0 / zr2);
}

bool at_field_node(const BeamGeometry& geom, double x0, double node_floor) {
  return std::abs(std::sin(geom.wavenumber * x0)) < node_floor;
}

double eta_product(const CavitySpec& spec, const BeamGeometry& geom, double fermi, double x0,
                   double x_zpf) {
  check_inside_cavity(spec, x0);
  check_fermi(fermi);
  if (!(x_zpf > 0.0)) throw std::domain_error("eta_product: x_zpf must be positive");
  const double k = geom.wavenumber;
  const double zr2 = geom.rayleigh_range * geom.rayleigh_range;
  const double s = std::sin(k * x0);
  const double big_w = 1.0 + x0 * x0 / zr2;
  const double sqrt_2c = std::sqrt(2.0 * rate_prefactor(spec, fermi));
  // X_ZPF d/dx [sqrt(2C) |sin(kx)| sqrt(W)]; sign(sin) resolves the |.|
  // derivative, one-sided limit (+) exactly at a node.
  const double sign_s = s >= 0.0 ? 1.0 : -1.0;
  return x_zpf * sqrt_2c *
         (k * std::cos(k * x0) * sign_s * std::sqrt(big_w) +
          std::abs(s) * x0 / (zr2 * std::sqrt(big_w)));
}

EtaCoupling coupling_eta(const CavitySpec& spec, const BeamGeometry& geom, double fermi,
                         double x0, double x_zpf, double node_floor) {
  EtaCoupling out;
  out.eta_sqrt_2ke = eta_product(spec, geom, fermi, x0, x_zpf);
  if (at_field_node(geom, x0, node_floor)) {
    throw validity_error("coupling_eta: eta_kappa is singular at a field node");
  }
  const double k = geom.wavenumber;
  const double zr2 = geom.rayleigh_range * geom.rayleigh_range;
  out.eta_kappa = x_zpf * (k / std::tan(k * x0) + x0 / (zr2 + x0 * x0));
  return out;
}

std::vector<CouplingPoint> coupling_profile(const CavitySpec& spec, const BeamGeometry& geom,
                                            double fermi, double x_zpf, double x_min,
                                            double x_max, int n_points) {
  if (n_points < 2) throw std::domain_error("coupling_profile: need at least 2 points");
  if (!(x_min < x_max)) throw std::domain_error("coupling_profile: x_min must be < x_max");
  std::vector<CouplingPoint> profile;
  profile.reserve(static_cast<std::size_t>(n_points));
  const double step = (x_max - x_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double x0 = x_min + step * i;
    CouplingPoint p;
    p.x0 = x0;
    p.kappa_e = absorption_rate(spec, geom, x0, fermi);
    p.dkappa_e_dx = absorption_rate_slope(spec, geom, x0, fermi);
    p.a_eff = effective_area(geom, x0);
    p.eta_sqrt_2ke = eta_product(spec, geom, fermi, x0, x_zpf);
    p.eta_kappa = at_field_node(geom, x0)
                      ? std::numeric_limits<double>::quiet_NaN()
                      : coupling_eta(spec, geom, fermi, x0, x_zpf).eta_kappa;
    profile.push_back(p);
  }
  return profile;
}

double position_for_absorption(const CavitySpec& spec, const BeamGeometry& geom, double fermi,
                               double target_kappa_e) {
  if (!(target_kappa_e >= 0.0)) {
    throw std::domain_error("position_for_absorption: target must be >= 0");
  }
  // kappa_e rises monotonically from the node at x0 = 0 to the first
  // antinode at lambda/4; bisect there.
  double lo = 0.0;
  double hi = 0.25 * c::two_pi / geom.wavenumber;
  if (absorption_rate(spec, geom, hi, fermi) < target_kappa_e) {
    throw std::domain_error("position_for_absorption: target exceeds the profile maximum");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (absorption_rate(spec, geom, mid, fermi) < target_kappa_e) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace dgo
