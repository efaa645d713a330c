#ifndef DGO_SWEEP_HPP
#define DGO_SWEEP_HPP

#include <string>
#include <vector>

#include "dgo/cavity.hpp"
#include "dgo/langevin.hpp"
#include "dgo/response.hpp"

namespace dgo {

/// One sweep axis. Only delta, power, kappa_e, x0 and diameter are
/// sweepable; log axes require a positive range.
struct AxisSpec {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int count = 2;
  bool log_scale = false;

  void validate() const;
  std::vector<double> points() const;
};

/// Fixed parameter block for the detuning / phonon-number sweeps; the
/// figure-caption pathway where kappa_e and eta_kappa are direct inputs.
struct SweepParameters {
  double power = 5e-6;  // W, used by detuning scans
  double omega_cav = 3.139448399734729e15;  // 600 nm
  double kappa_c = 6.283185307179586e6;
  double kappa_e = 2.827433388230814e8;  // 2 pi x 45 MHz
  double eta_kappa = 2.2e-3;
  double omega_m = 3.455751918948773e8;  // 2 pi x 55 MHz
  double gamma_m = 62.83185307179586;    // 2 pi x 10 Hz
  double n_th = 100.0;
  double x_zpf = 3.3e-14;
  ResponseParams response;
  double weak_coupling_threshold = 0.01;
  double power_cap = 1e-3;  // linear-response validity cap, W
  int threads = 1;
};

// Full pipeline at one operating point: pump -> steady state -> couplings.
LinearizedSystem system_at(const SweepParameters& params, double detuning, double power,
                           double kappa_e);

struct DetuningPoint {
  double detuning = 0.0;
  double gamma_o = 0.0;
  double omega_o = 0.0;
};

// Per-detuning steady state and optical spring at the fixed pump power.
std::vector<DetuningPoint> detuning_scan(const SweepParameters& params,
                                         const AxisSpec& detuning_axis);

struct PhononCell {
  double detuning = 0.0;
  double power = 0.0;
  double n_ss = 0.0;  // NaN when no steady state exists
  double term_thermal = 0.0;
  double term_sigma_noise = 0.0;
  double term_light_noise = 0.0;
  bool weak_coupling = false;
  bool damped = false;  // gamma_m_eff > 0
  bool valid = false;   // both of the above and power <= cap
};

// Dense (detuning x power) occupancy grid; cells carry validity flags
// instead of aborting.
std::vector<PhononCell> phonon_map(const SweepParameters& params, const AxisSpec& detuning_axis,
                                   const AxisSpec& power_axis);

struct OptimumRecord {
  double kappa_e = 0.0;
  double detuning_opt = 0.0;
  double power_opt = 0.0;
  double n_min = 0.0;
  int iterations = 0;
  bool converged = false;
  bool at_power_cap = false;
};

/// Nested optimizer defaults: coarse grid then axis-wise local refinement.
struct OptimizerConfig {
  AxisSpec detuning_axis{"delta", 0.0, 0.0, 64, false};  // filled from omega_m when empty
  AxisSpec power_axis{"power", 1e-9, 1e-3, 64, true};
  int refine_points = 17;
  int max_iterations = 60;
  double rel_tol = 1e-4;
};

// Minimizes n_ss over (detuning, power) for each kappa_e, excluding cells
// that fail the validity guards. Deterministic: fixed grids, improvements
// only.
std::vector<OptimumRecord> optimal_cooling(const SweepParameters& params,
                                           const AxisSpec& kappa_e_axis,
                                           const OptimizerConfig& opt = {});

// CSV emission, column order fixed.
void write_detuning_csv(const std::string& path, const std::vector<DetuningPoint>& rows);
void write_phonon_csv(const std::string& path, const std::vector<PhononCell>& rows);
void write_optimum_csv(const std::string& path, const std::vector<OptimumRecord>& rows);

void write_coupling_csv(const std::string& path, const std::vector<CouplingPoint>& rows);

void write_spectrum_csv(const std::string& path, const SpectrumResult& spectrum);

}  // namespace dgo

#endif  // DGO_SWEEP_HPP
