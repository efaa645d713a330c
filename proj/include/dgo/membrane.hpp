#ifndef DGO_MEMBRANE_HPP
#define DGO_MEMBRANE_HPP

namespace dgo {

/// Suspended circular single-layer graphene sheet. SI units throughout:
/// diameter in m, stiffness2d in N/m, areal_density in kg/m^2, damping in
/// rad/s, temperature in K.
struct MembraneSpec {
  double diameter = 30e-6;
  double strain = 0.01;
  double stiffness2d = 340.0;          // 2D elastic stiffness, ~1 TPa bulk modulus
  double areal_density = 7.4e-7;       // 7.4e-19 kg/um^2
  double intrinsic_damping = 0.0;      // gamma_m, rad/s
  double temperature = 0.0;            // bath temperature, K

  // Throws std::domain_error naming the offending field.
  void validate() const;
};

/// Fundamental flexural mode as a harmonic oscillator plus its thermal bath.
struct MechanicalMode {
  double omega_m = 0.0;  // rad/s
  double m_eff = 0.0;    // kg
  double x_zpf = 0.0;    // m
  double n_th = 0.0;     // Bose-Einstein occupancy at the bath temperature
};

// omega_m = 2*pi*0.766*sqrt(E2d*strain/rho)/D, first radially symmetric
// mode of a tensioned circular membrane.
double fundamental_frequency(const MembraneSpec& spec);

// 0.27 * (membrane mass) for the fundamental mode of a circular membrane.
double effective_mass(const MembraneSpec& spec);

// sqrt(hbar / (2 m_eff omega_m))
double zero_point_amplitude(double omega_m, double m_eff);

// Bose-Einstein occupancy 1/(exp(hbar*omega/kT) - 1); exactly 0 at T = 0.
double thermal_occupancy(double temperature, double omega);

// Bundles the four derived quantities for a validated spec.
MechanicalMode mechanical_mode(const MembraneSpec& spec);

}  // namespace dgo

#endif  // DGO_MEMBRANE_HPP
