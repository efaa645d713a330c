#ifndef DGO_CAVITY_HPP
#define DGO_CAVITY_HPP

#include <optional>
#include <vector>

namespace dgo {

/// Fabry-Perot cavity hosting a Gaussian standing-wave mode. x = 0 sits at a
/// field node at the center of the cavity.
struct CavitySpec {
  double length = 30e-6;               // m
  double wavelength = 600e-9;          // resonant wavelength, m
  double kappa_c = 6.283185307179586e6;  // input-coupling decay (half-width), rad/s
  std::optional<double> waist_override;  // m

  double omega_cav() const;   // 2 pi c / wavelength
  double wavenumber() const;  // 2 pi / wavelength
  void validate() const;
};

struct BeamGeometry {
  double waist = 0.0;           // w0, m
  double rayleigh_range = 0.0;  // z_R = pi w0^2 / lambda, m
  double wavenumber = 0.0;      // 1/m

  // w(x)^2 = w0^2 (1 + (x/z_R)^2)
  double width_sq(double x) const;
};

// Near-confocal default waist sqrt(lambda L / (2 pi)) unless overridden.
// Throws std::domain_error when the override makes z_R fall short of L/2 by
// more than `confocal_slack` (geometrically inconsistent cavity).
BeamGeometry beam_waist(const CavitySpec& spec, double confocal_slack = 1.5);

// Relative EM energy density, normalized to the on-axis antinode peak at the
// waist: sin^2(kx) * (w0^2/w(x)^2) * exp(-2 r^2 / w(x)^2).
double energy_density(const BeamGeometry& geom, double x, double r);

// A_eff(x) = integral of the transverse profile over y,z divided by the
// on-axis value: pi w(x)^2 / 2.
double effective_area(const BeamGeometry& geom, double x);

// Interband blocking factor f(E_v) - f(E_c) with E_{c,v} = +-photon_energy/2
// measured from the Dirac point and the chemical potential shifting the
// Fermi level. 1 for cold undoped graphene, 0 when Pauli-blocked.
double fermi_factor(double temperature, double chemical_potential, double photon_energy);

// Absorptive cavity decay rate from the graphene sheet at x0, amplitude
// (half-width) convention:
//   kappa_e(x0) = fermi * pi*alpha * (c/L) * sin^2(k x0) * (w(x0)^2/w0^2)
// This is W_max * A_eff / (2 * integral u dV) with W_max = pi*alpha*c*fermi*
// sin^2(k x0), A_eff = pi w(x0)^2/2 and integral u dV = (pi w0^2/2)(L/2).
double absorption_rate(const CavitySpec& spec, const BeamGeometry& geom, double x0,
                       double fermi);

// d kappa_e / dx at x0, same convention.
double absorption_rate_slope(const CavitySpec& spec, const BeamGeometry& geom, double x0,
                             double fermi);

struct EtaCoupling {
  double eta_kappa = 0.0;     // dimensionless, singular at field nodes
  double eta_sqrt_2ke = 0.0;  // eta * sqrt(2 kappa_e) = X_ZPF d sqrt(2 kappa_e)/dx, finite
};

// True when x0 sits within the singularity floor of a field node.
bool at_field_node(const BeamGeometry& geom, double x0, double node_floor = 1e-12);

// Node-regular product form eta * sqrt(2 kappa_e) = X_ZPF d sqrt(2 kappa_e)/dx;
// finite on the whole axis (one-sided limit exactly at a node). The
// recommended quantity for sweeps.
double eta_product(const CavitySpec& spec, const BeamGeometry& geom, double fermi, double x0,
                   double x_zpf);

// Dissipative coupling parameter eta = X_ZPF * d/dx ln sqrt(2 kappa_e(x))
//   = X_ZPF * [k cot(k x0) + x0/(z_R^2 + x0^2)]
// plus the product form. Throws dgo::validity_error when |sin(k x0)| is
// below node_floor (eta itself is singular there).
EtaCoupling coupling_eta(const CavitySpec& spec, const BeamGeometry& geom, double fermi,
                         double x0, double x_zpf, double node_floor = 1e-12);

struct CouplingPoint {
  double x0 = 0.0;            // m
  double kappa_e = 0.0;       // rad/s
  double dkappa_e_dx = 0.0;   // rad/s per m
  double a_eff = 0.0;         // m^2
  double eta_kappa = 0.0;     // NaN at guarded nodes
  double eta_sqrt_2ke = 0.0;  // finite everywhere
};

// Samples the absorptive channel on a uniform grid over [x_min, x_max].
std::vector<CouplingPoint> coupling_profile(const CavitySpec& spec, const BeamGeometry& geom,
                                            double fermi, double x_zpf, double x_min,
                                            double x_max, int n_points);

// Smallest x0 > 0 with kappa_e(x0) = target; used to locate operating points
// near the node. Throws std::domain_error if the target exceeds the profile
// maximum.
double position_for_absorption(const CavitySpec& spec, const BeamGeometry& geom, double fermi,
                               double target_kappa_e);

}  // namespace dgo

#endif  // DGO_CAVITY_HPP
