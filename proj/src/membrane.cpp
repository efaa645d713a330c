#include "dgo/membrane.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dgo/constants.hpp"

namespace dgo {

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0)) {
    throw std::domain_error(std::string("membrane: ") + field + " must be positive");
  }
}

}  // namespace

void MembraneSpec::validate() const {
  require_positive(diameter, "diameter");
  require_positive(stiffness2d, "stiffness2d");
  require_positive(areal_density, "areal_density");
  if (intrinsic_damping < 0.0) {
    throw std::domain_error("membrane: intrinsic_damping must be >= 0");
  }
  if (temperature < 0.0) {
    throw std::domain_error("membrane: temperature must be >= 0");
  }
  if (!(strain >= 1e-4 && strain <= 0.1)) {
    throw std::domain_error("membrane: strain must lie in [1e-4, 0.1]");
  }
}

double fundamental_frequency(const MembraneSpec& spec) {
  require_positive(spec.diameter, "diameter");
  require_positive(spec.stiffness2d, "stiffness2d");
  require_positive(spec.strain, "strain");
  require_positive(spec.areal_density, "areal_density");
  const double wave_speed = std::sqrt(spec.stiffness2d * spec.strain / spec.areal_density);
  return constants::two_pi * 0.766 * wave_speed / spec.diameter;
}

double effective_mass(const MembraneSpec& spec) {
  require_positive(spec.diameter, "diameter");
  require_positive(spec.areal_density, "areal_density");
  const double radius = 0.5 * spec.diameter;
  return 0.27 * spec.areal_density * M_PI * radius * radius;
}

double zero_point_amplitude(double omega_m, double m_eff) {
  if (!(omega_m > 0.0)) throw std::domain_error("zero_point_amplitude: omega_m must be positive");
  if (!(m_eff > 0.0)) throw std::domain_error("zero_point_amplitude: m_eff must be positive");
  return std::sqrt(constants::hbar / (2.0 * m_eff * omega_m));
}

double thermal_occupancy(double temperature, double omega) {
  if (!(omega > 0.0)) throw std::domain_error("thermal_occupancy: omega must be positive");
  if (temperature < 0.0) throw std::domain_error("thermal_occupancy: temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  const double x = constants::hbar * omega / (constants::k_boltzmann * temperature);
  // expm1 keeps the classical limit accurate when x is tiny.
  return 1.0 / std::expm1(x);
}

MechanicalMode mechanical_mode(const MembraneSpec& spec) {
  spec.validate();
  MechanicalMode mode;
  mode.omega_m = fundamental_frequency(spec);
  mode.m_eff = effective_mass(spec);
  mode.x_zpf = zero_point_amplitude(mode.omega_m, mode.m_eff);
  mode.n_th = thermal_occupancy(spec.temperature, mode.omega_m);
  return mode;
}

}  // namespace dgo
