#include "dgo/response.hpp"

#include <cmath>
#include <stdexcept>

#include "dgo/errors.hpp"

namespace dgo {

namespace c = constants;

DriveSpec DriveSpec::from_power(double power, double kappa_c, double omega_cav,
                                double detuning) {
  DriveSpec drive;
  drive.power = power;
  drive.detuning = detuning;
  drive.pump_frequency = omega_cav - detuning;
  if (!(drive.pump_frequency > 0.0)) {
    throw std::domain_error("drive: omega_cav - detuning must stay positive");
  }
  drive.amplitude = power == 0.0 ? 0.0 : pump_amplitude(power, kappa_c, drive.pump_frequency);
  return drive;
}

void ResponseParams::validate() const {
  if (!(area_ratio > 0.0 && area_ratio <= 1.0)) {
    throw std::domain_error("response: area_ratio must lie in (0, 1]");
  }
  if (!(fermi_velocity_ratio > 0.0 && fermi_velocity_ratio < 1.0)) {
    throw std::domain_error("response: fermi_velocity_ratio must lie in (0, 1)");
  }
}

double pump_amplitude(double power, double kappa_c, double omega_p) {
  if (power < 0.0) throw std::domain_error("pump_amplitude: power must be >= 0");
  if (!(kappa_c > 0.0)) throw std::domain_error("pump_amplitude: kappa_c must be positive");
  if (!(omega_p > 0.0)) throw std::domain_error("pump_amplitude: omega_p must be positive");
  return std::sqrt(2.0 * power * kappa_c / (c::hbar * omega_p));
}

std::complex<double> sigma_response(std::complex<double> abar, double kappa_e,
                                    const ResponseParams& params) {
  if (kappa_e < 0.0) throw std::domain_error("sigma_response: kappa_e must be >= 0");
  params.validate();
  const double vr = params.fermi_velocity_ratio;
  return 0.125 * std::sqrt(2.0 * kappa_e) * vr * vr * params.area_ratio * std::norm(abar);
}

SteadyState steady_state(const DriveSpec& drive, double kappa_c, double kappa_e,
                         const ResponseParams& params, double rel_tol, int max_iterations) {
  if (!(kappa_c > 0.0)) throw std::domain_error("steady_state: kappa_c must be positive");
  if (kappa_e < 0.0) throw std::domain_error("steady_state: kappa_e must be >= 0");
  params.validate();

  SteadyState state;
  state.kappa_total = kappa_c + kappa_e;
  const std::complex<double> denom(state.kappa_total, drive.detuning);
  const double sqrt_2ke = std::sqrt(2.0 * kappa_e);

  std::complex<double> abar = drive.amplitude / denom;
  if (kappa_e == 0.0) {
    state.abar = abar;
    state.sigma_bar = 0.0;
    state.n_photon = std::norm(abar);
    state.iterations = 1;
    state.converged = true;
    return state;
  }

  for (int i = 1; i <= max_iterations; ++i) {
    const std::complex<double> sigma = sigma_response(abar, kappa_e, params);
    const std::complex<double> next = (drive.amplitude + sqrt_2ke * sigma) / denom;
    const double change = std::abs(next - abar);
    abar = next;
    if (change <= rel_tol * std::abs(next)) {
      state.abar = abar;
      state.sigma_bar = sigma_response(abar, kappa_e, params);
      state.n_photon = std::norm(abar);
      state.iterations = i;
      state.converged = true;
      return state;
    }
  }
  throw convergence_error(
      "steady_state: fixed point did not converge; parameters are outside the "
      "linear-response regime");
}

EffectiveCouplings effective_couplings(const SteadyState& state, double eta_kappa,
                                       double kappa_e, const ResponseParams& params) {
  if (!state.converged) {
    throw validity_error("effective_couplings: steady state not converged");
  }
  const double sqrt_2ke = std::sqrt(2.0 * kappa_e);
  EffectiveCouplings out;
  out.g = (2.0 * state.abar * kappa_e - sqrt_2ke * state.sigma_bar) * eta_kappa;
  out.g_e = sqrt_2ke * state.sigma_bar * eta_kappa;
  out.area_ratio = params.area_ratio;
  out.fermi_velocity_ratio = params.fermi_velocity_ratio;
  return out;
}

}  // namespace dgo
