#ifndef DGO_LANGEVIN_HPP
#define DGO_LANGEVIN_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "dgo/membrane.hpp"
#include "dgo/response.hpp"

namespace dgo {

/// Coefficient set of the linearized quantum Langevin equations around the
/// self-consistent steady state. Frequencies angular; couplings follow the
/// shorthand
///   G   = (2 abar kappa_e - sqrt(2 kappa_e) sigma_bar) eta
///   G_e = sqrt(2 kappa_e) sigma_bar eta.
struct LinearizedSystem {
  double detuning = 0.0;
  double kappa_c = 0.0;
  double kappa_e = 0.0;
  double kappa = 0.0;  // kappa_c + kappa_e
  double omega_m = 0.0;
  double gamma_m = 0.0;
  double n_th = 0.0;
  double x_zpf = 0.0;
  double eta_kappa = 0.0;
  std::complex<double> g{0.0, 0.0};
  std::complex<double> g_e{0.0, 0.0};
  std::complex<double> pump{0.0, 0.0};       // E
  std::complex<double> sigma_bar{0.0, 0.0};  // mean electronic response
  std::complex<double> abar{0.0, 0.0};       // mean intracavity field
  double weak_coupling_threshold = 0.01;     // |G|,|G_e| <= threshold * kappa

  bool weak_coupling() const;
};

// Assembles a LinearizedSystem from the physical pipeline.
LinearizedSystem linearize(const SteadyState& state, const DriveSpec& drive,
                           const MechanicalMode& mode, double gamma_m, double kappa_c,
                           double kappa_e, double eta_kappa,
                           double weak_coupling_threshold = 0.01);

/// Pump-induced shift of the mechanical frequency and damping.
/// gamma_o > 0 adds damping (cooling side).
struct OpticalSpring {
  double omega_o = 0.0;
  double gamma_o = 0.0;
  double omega_m_eff = 0.0;  // omega_m + omega_o
  double gamma_m_eff = 0.0;  // gamma_m + gamma_o
  double drive_response_ratio = 0.0;  // |E| / (sqrt(2 kappa_e) |sigma_bar|)
  bool validity_ok = true;            // ratio >= 1e3
};

// Mechanical self-energy from the cavity backaction,
//   Sigma(w) = G_e G* chi(w)~ - G_e* G chi(w),  chi(w) = 1/(-iw + i Delta + kappa),
// evaluated at omega_eval: omega_o = Im Sigma, gamma_o = Re Sigma. Reduces to
// the textbook (E, sigma_bar) bracket once abar = E/(i Delta + kappa) is
// substituted, but stays consistent when the response term matters.
OpticalSpring optical_spring(const LinearizedSystem& sys, double omega_eval);
OpticalSpring optical_spring(const LinearizedSystem& sys);  // omega_eval = omega_m

/// Steady-state phonon occupancy, analytic weak-coupling form, with the
/// three noise-channel addends kept separate.
struct PhononResult {
  double n_ss = 0.0;
  double term_thermal = 0.0;      // (gamma_m / gamma_eff) n_th
  double term_sigma_noise = 0.0;  // |G|^2 / (4 kappa_e gamma_eff)
  double term_light_noise = 0.0;  // (gamma_eff+kappa) kappa_c |G_e|^2 / (...)
};

// Throws dgo::validity_error when the weak-coupling flag is false or when
// gamma_m_eff <= 0 (anti-damped, no steady state).
PhononResult phonon_number_analytic(const LinearizedSystem& sys, const OpticalSpring& spring);

using Matrix4c = Eigen::Matrix4cd;
using InputMatrix4x6 = Eigen::Matrix<std::complex<double>, 4, 6>;

/// Frequency-domain linear system M(w) x = N xi for x = (a, a+, b, b+) and
/// xi = (a_in, a_in+, sigma_in, sigma_in+, b_in, b_in+).
struct LinearSystemAt {
  Matrix4c coefficients;
  InputMatrix4x6 inputs;
};

// Rows: cavity equation, its conjugate, mechanics with the radiation force
// G_e a+ - G_e* a + sqrt(2 kappa_e) eta (abar* sigma_in - abar sigma_in+),
// and its conjugate. The eta factor on the direct sigma_in force follows
// from linearizing the coupling term; without it the noise feed would be
// off by 1/eta^2 against the analytic occupancy.
LinearSystemAt build_linear_system(const LinearizedSystem& sys, double omega);

/// Transfer coefficients of the approximate weak-coupling solution b(w).
struct WeakCouplingCoeffs {
  std::complex<double> b_in{0.0, 0.0};
  std::complex<double> sigma_in{0.0, 0.0};
  std::complex<double> sigma_in_dag{0.0, 0.0};
  std::complex<double> a_in{0.0, 0.0};
  std::complex<double> a_in_dag{0.0, 0.0};
};

WeakCouplingCoeffs weak_coupling_b(const LinearizedSystem& sys, const OpticalSpring& spring,
                                   double omega);

/// Piecewise frequency grid: dense linear windows around the mechanical
/// resonances, log-spaced tails, and a linear background across the cavity
/// band. One refinement doubling acts as the convergence check.
struct SpectrumGridConfig {
  double dense_halfwidth_factor = 50.0;  // window half-width in units of gamma_eff
  int dense_points = 2000;               // per window
  int tail_points_per_decade = 200;
  double background_span_factor = 10.0;  // background edge ~ factor * kappa
  int background_points = 2000;
  double max_rel_change = 0.005;  // refinement stability required for success
  int threads = 1;
};

/// Phonon noise spectrum S_nm(w) >= 0 sampled on the grid, its quadrature,
/// and the per-channel breakdown. The input correlators are the vacuum /
/// thermal table <a_in a_in+> = <s_in s_in+> = delta, <b_in b_in+> =
/// (n_th+1) delta, <b_in+ b_in> = n_th delta.
struct SpectrumResult {
  std::vector<double> omega;
  std::vector<double> s_nm;
  double integrated_n = 0.0;         // refined value
  double integrated_n_coarse = 0.0;  // pre-refinement value
  double channel_thermal = 0.0;
  double channel_sigma = 0.0;
  double channel_light = 0.0;
  double corr_a_in = 1.0;      // <a_in a_in+>
  double corr_sigma_in = 1.0;  // <sigma_in sigma_in+>
  double corr_b_in_up = 0.0;   // <b_in+ b_in> = n_th
  double corr_b_in_down = 1.0; // <b_in b_in+> = n_th + 1
};

// Full-matrix noise-spectrum integration; the independent oracle for the
// analytic occupancy. Throws dgo::validity_error when gamma_m_eff <= 0 and
// dgo::convergence_error when refinement does not stabilize the integral.
SpectrumResult spectrum_oracle(const LinearizedSystem& sys, const SpectrumGridConfig& config);

}  // namespace dgo

#endif  // DGO_LANGEVIN_HPP
