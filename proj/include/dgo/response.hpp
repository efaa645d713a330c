#ifndef DGO_RESPONSE_HPP
#define DGO_RESPONSE_HPP

#include <complex>

#include "dgo/constants.hpp"

namespace dgo {

/// Pump field in the rotating frame. detuning = omega_cav - omega_p, so
/// blue detuning (pump above resonance) is negative.
struct DriveSpec {
  double power = 0.0;           // W
  double pump_frequency = 0.0;  // rad/s
  double detuning = 0.0;        // rad/s
  std::complex<double> amplitude{0.0, 0.0};  // E, s^-1 sqrt(photon), real positive

  static DriveSpec from_power(double power, double kappa_c, double omega_cav,
                              double detuning);
};

/// Knobs of the graphene electronic response.
struct ResponseParams {
  double area_ratio = 0.01;  // A_eff / A, in (0, 1]
  double fermi_velocity_ratio = constants::fermi_velocity_ratio_default;

  void validate() const;
};

// |E| = sqrt(2 P kappa_c / (hbar omega_p)); phase convention E real positive.
double pump_amplitude(double power, double kappa_c, double omega_p);

// Electronic linear response to the mean intracavity field:
//   sigma_bar = (1/8) sqrt(2 kappa_e) (v_F/c)^2 (A_eff/A) |abar|^2
// as a rotating-frame constant. The magnitude is the interband Kubo result;
// the sign is fixed so the optically induced damping cools on the blue side
// (see README on phase conventions).
std::complex<double> sigma_response(std::complex<double> abar, double kappa_e,
                                    const ResponseParams& params);

struct SteadyState {
  std::complex<double> abar{0.0, 0.0};       // sqrt(photon)
  std::complex<double> sigma_bar{0.0, 0.0};  // sqrt(photon) sqrt(rad/s)
  double kappa_total = 0.0;                  // kappa_c + kappa_e
  double n_photon = 0.0;                     // |abar|^2
  int iterations = 0;
  bool converged = false;
};

// Fixed point of  abar = (E + sqrt(2 kappa_e) sigma_bar) / (i Delta + kappa)
// with sigma_bar = sigma_response(abar). The response is suppressed by
// (v_F/c)^2 so plain iteration contracts immediately. Throws
// dgo::convergence_error after max_iterations.
SteadyState steady_state(const DriveSpec& drive, double kappa_c, double kappa_e,
                         const ResponseParams& params, double rel_tol = 1e-12,
                         int max_iterations = 1000);

struct EffectiveCouplings {
  std::complex<double> g{0.0, 0.0};    // (2 abar kappa_e - sqrt(2 kappa_e) sigma_bar) eta
  std::complex<double> g_e{0.0, 0.0};  // sqrt(2 kappa_e) sigma_bar eta
  double area_ratio = 0.0;
  double fermi_velocity_ratio = 0.0;
};

// Requires a converged steady state (throws dgo::validity_error otherwise).
EffectiveCouplings effective_couplings(const SteadyState& state, double eta_kappa,
                                       double kappa_e, const ResponseParams& params);

}  // namespace dgo

#endif  // DGO_RESPONSE_HPP
