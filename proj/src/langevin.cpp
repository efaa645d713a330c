#include "dgo/langevin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "dgo/constants.hpp"
#include "dgo/errors.hpp"

namespace dgo {

namespace {

using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};

// chi(w) = 1/(-i w + i Delta + kappa); the a+ equation carries chi_dag.
complexd cavity_susceptibility(const LinearizedSystem& sys, double omega) {
  return 1.0 / complexd(sys.kappa, sys.detuning - omega);
}

complexd cavity_susceptibility_dag(const LinearizedSystem& sys, double omega) {
  return 1.0 / complexd(sys.kappa, -(sys.detuning + omega));
}

}  // namespace

bool LinearizedSystem::weak_coupling() const {
  const double cap = weak_coupling_threshold * kappa;
  return std::abs(g) <= cap && std::abs(g_e) <= cap;
}

LinearizedSystem linearize(const SteadyState& state, const DriveSpec& drive,
                           const MechanicalMode& mode, double gamma_m, double kappa_c,
                           double kappa_e, double eta_kappa, double weak_coupling_threshold) {
  if (!state.converged) throw validity_error("linearize: steady state not converged");
  LinearizedSystem sys;
  sys.detuning = drive.detuning;
  sys.kappa_c = kappa_c;
  sys.kappa_e = kappa_e;
  sys.kappa = kappa_c + kappa_e;
  sys.omega_m = mode.omega_m;
  sys.gamma_m = gamma_m;
  sys.n_th = mode.n_th;
  sys.x_zpf = mode.x_zpf;
  sys.eta_kappa = eta_kappa;
  const double sqrt_2ke = std::sqrt(2.0 * kappa_e);
  sys.g = (2.0 * state.abar * kappa_e - sqrt_2ke * state.sigma_bar) * eta_kappa;
  sys.g_e = sqrt_2ke * state.sigma_bar * eta_kappa;
  sys.pump = drive.amplitude;
  sys.sigma_bar = state.sigma_bar;
  sys.abar = state.abar;
  sys.weak_coupling_threshold = weak_coupling_threshold;
  return sys;
}

OpticalSpring optical_spring(const LinearizedSystem& sys, double omega_eval) {
  if (!(omega_eval > 0.0)) throw std::domain_error("optical_spring: omega_eval must be positive");
  const complexd sigma = sys.g_e * std::conj(sys.g) * cavity_susceptibility_dag(sys, omega_eval) -
                         std::conj(sys.g_e) * sys.g * cavity_susceptibility(sys, omega_eval);
  OpticalSpring spring;
  spring.gamma_o = sigma.real();
  spring.omega_o = sigma.imag();
  spring.omega_m_eff = sys.omega_m + spring.omega_o;
  spring.gamma_m_eff = sys.gamma_m + spring.gamma_o;
  const double response_feed = std::sqrt(2.0 * sys.kappa_e) * std::abs(sys.sigma_bar);
  spring.drive_response_ratio = response_feed > 0.0
                                    ? std::abs(sys.pump) / response_feed
                                    : std::numeric_limits<double>::infinity();
  spring.validity_ok = spring.drive_response_ratio >= 1e3;
  return spring;
}

OpticalSpring optical_spring(const LinearizedSystem& sys) {
  return optical_spring(sys, sys.omega_m);
}

PhononResult phonon_number_analytic(const LinearizedSystem& sys, const OpticalSpring& spring) {
  if (!sys.weak_coupling()) {
    throw validity_error("phonon_number_analytic: |G| or |G_e| exceeds the weak-coupling cap");
  }
  const double gamma_eff = spring.gamma_m_eff;
  if (!(gamma_eff > 0.0)) {
    throw validity_error("phonon_number_analytic: gamma_m_eff <= 0, no steady state");
  }
  PhononResult out;
  out.term_thermal = sys.gamma_m * sys.n_th / gamma_eff;

  const double g_sq = std::norm(sys.g);
  out.term_sigma_noise = g_sq == 0.0 ? 0.0 : g_sq / (4.0 * sys.kappa_e * gamma_eff);

  const double ge_sq = std::norm(sys.g_e);
  if (ge_sq == 0.0) {
    out.term_light_noise = 0.0;
  } else {
    const double broad = gamma_eff + sys.kappa;
    const double lorentz = broad * broad +
                           (sys.detuning + spring.omega_m_eff) * (sys.detuning + spring.omega_m_eff);
    out.term_light_noise = broad * sys.kappa_c * ge_sq / (gamma_eff * sys.kappa * lorentz);
  }
  out.n_ss = out.term_thermal + out.term_sigma_noise + out.term_light_noise;
  return out;
}

LinearSystemAt build_linear_system(const LinearizedSystem& sys, double omega) {
  LinearSystemAt out;
  Matrix4c& m = out.coefficients;
  InputMatrix4x6& n = out.inputs;
  m.setZero();
  n.setZero();

  const complexd g = sys.g;
  const complexd ge = sys.g_e;
  const double sqrt_2kc = std::sqrt(2.0 * sys.kappa_c);
  const double sqrt_2ke = std::sqrt(2.0 * sys.kappa_e);
  const double sqrt_2gm = std::sqrt(2.0 * sys.gamma_m);

  // cavity: (-iw + i Delta + kappa) a + G (b + b+) = sqrt(2kc) a_in + sqrt(2ke) s_in
  m(0, 0) = complexd(sys.kappa, sys.detuning - omega);
  m(0, 2) = g;
  m(0, 3) = g;
  n(0, 0) = sqrt_2kc;
  n(0, 2) = sqrt_2ke;

  // conjugate cavity mode
  m(1, 1) = complexd(sys.kappa, -(sys.detuning + omega));
  m(1, 2) = std::conj(g);
  m(1, 3) = std::conj(g);
  n(1, 1) = sqrt_2kc;
  n(1, 3) = sqrt_2ke;

  // mechanics: (-iw + i w_m + gamma_m) b - G_e a+ + G_e* a
  //            = sqrt(2 gm) b_in + sqrt(2ke) eta (abar* s_in - abar s_in+)
  m(2, 2) = complexd(sys.gamma_m, sys.omega_m - omega);
  m(2, 0) = std::conj(ge);
  m(2, 1) = -ge;
  n(2, 4) = sqrt_2gm;
  n(2, 2) = sqrt_2ke * sys.eta_kappa * std::conj(sys.abar);
  n(2, 3) = -sqrt_2ke * sys.eta_kappa * sys.abar;

  // conjugate mechanics
  m(3, 3) = complexd(sys.gamma_m, -(sys.omega_m + omega));
  m(3, 0) = -std::conj(ge);
  m(3, 1) = ge;
  n(3, 5) = sqrt_2gm;
  n(3, 2) = -sqrt_2ke * sys.eta_kappa * std::conj(sys.abar);
  n(3, 3) = sqrt_2ke * sys.eta_kappa * sys.abar;

  return out;
}

WeakCouplingCoeffs weak_coupling_b(const LinearizedSystem& sys, const OpticalSpring& spring,
                                   double omega) {
  if (!sys.weak_coupling()) {
    throw validity_error("weak_coupling_b: |G| or |G_e| exceeds the weak-coupling cap");
  }
  if (!(spring.gamma_m_eff > 0.0)) {
    throw validity_error("weak_coupling_b: gamma_m_eff <= 0, no steady state");
  }
  const complexd mech = complexd(spring.gamma_m_eff, spring.omega_m_eff - omega);
  const double sqrt_2k = std::sqrt(2.0 * sys.kappa);
  const double sqrt_2kc = std::sqrt(2.0 * sys.kappa_c);

  WeakCouplingCoeffs out;
  out.b_in = std::sqrt(2.0 * sys.gamma_m) / mech;
  out.sigma_in = sys.g / (sqrt_2k * mech);
  out.sigma_in_dag = -out.sigma_in;
  out.a_in_dag = sys.g_e * sqrt_2kc / (complexd(sys.kappa, -(sys.detuning + omega)) * mech);
  out.a_in = -sys.g_e * sqrt_2kc / (complexd(sys.kappa, sys.detuning - omega) * mech);
  return out;
}

namespace {

// Union of dense windows around the mechanical resonances, log tails, and a
// linear background over the cavity band.
std::vector<double> spectrum_grid(double omega_eff, double gamma_eff, double kappa,
                                  double detuning, const SpectrumGridConfig& cfg,
                                  int refine) {
  std::vector<double> grid;
  const double halfwidth = cfg.dense_halfwidth_factor * gamma_eff;
  const double edge =
      cfg.background_span_factor * kappa + std::abs(detuning) + std::abs(omega_eff);

  const int n_background = cfg.background_points * refine;
  grid.reserve(static_cast<std::size_t>(n_background) + 16384);
  for (int i = 0; i <= n_background; ++i) {
    grid.push_back(-edge + 2.0 * edge * i / n_background);
  }

  for (const double center : {omega_eff, -omega_eff}) {
    const int n_dense = cfg.dense_points * refine;
    for (int i = 0; i <= n_dense; ++i) {
      grid.push_back(center - halfwidth + 2.0 * halfwidth * i / n_dense);
    }
    // log tails from the window edge out past the background edge
    const double outer = 2.0 * edge;
    const double decades = std::log10(outer / halfwidth);
    const int n_tail = std::max(8, static_cast<int>(std::ceil(
                                       decades * cfg.tail_points_per_decade * refine)));
    for (int i = 0; i <= n_tail; ++i) {
      const double dist = halfwidth * std::pow(outer / halfwidth, double(i) / n_tail);
      grid.push_back(center + dist);
      grid.push_back(center - dist);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

struct ChannelSamples {
  std::vector<double> total;
  std::vector<double> light;
  std::vector<double> sigma;
  std::vector<double> thermal;
};

ChannelSamples sample_channels(const LinearizedSystem& sys, const std::vector<double>& grid,
                               int threads) {
  ChannelSamples s;
  const std::size_t n = grid.size();
  s.total.resize(n);
  s.light.resize(n);
  s.sigma.resize(n);
  s.thermal.resize(n);

  const auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const LinearSystemAt at = build_linear_system(sys, grid[i]);
      const InputMatrix4x6 transfer = at.coefficients.partialPivLu().solve(at.inputs);
      s.light[i] = std::norm(transfer(2, 1));
      s.sigma[i] = std::norm(transfer(2, 3));
      s.thermal[i] = (sys.n_th + 1.0) * std::norm(transfer(2, 5)) +
                     sys.n_th * std::norm(transfer(2, 4));
      s.total[i] = s.light[i] + s.sigma[i] + s.thermal[i];
    }
  };

  if (threads <= 1 || n < 256) {
    worker(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(n, chunk * static_cast<std::size_t>(t));
      const std::size_t end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return s;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    sum += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  }
  return sum;
}

}  // namespace

SpectrumResult spectrum_oracle(const LinearizedSystem& sys, const SpectrumGridConfig& config) {
  const OpticalSpring spring = optical_spring(sys);
  if (!(spring.gamma_m_eff > 0.0)) {
    throw validity_error("spectrum_oracle: gamma_m_eff <= 0, integral diverges");
  }

  SpectrumResult result;
  result.corr_b_in_up = sys.n_th;
  result.corr_b_in_down = sys.n_th + 1.0;

  const double inv_2pi = 1.0 / constants::two_pi;
  double coarse = 0.0;
  for (int refine = 1; refine <= 2; refine *= 2) {
    const std::vector<double> grid = spectrum_grid(spring.omega_m_eff, spring.gamma_m_eff,
                                                   sys.kappa, sys.detuning, config, refine);
    const ChannelSamples samples = sample_channels(sys, grid, config.threads);
    const double integral = trapezoid(grid, samples.total) * inv_2pi;
    if (refine == 1) {
      coarse = integral;
    } else {
      result.omega = grid;
      result.s_nm = samples.total;
      result.integrated_n = integral;
      result.integrated_n_coarse = coarse;
      result.channel_light = trapezoid(grid, samples.light) * inv_2pi;
      result.channel_sigma = trapezoid(grid, samples.sigma) * inv_2pi;
      result.channel_thermal = trapezoid(grid, samples.thermal) * inv_2pi;
    }
  }

  const double change = std::abs(result.integrated_n - result.integrated_n_coarse);
  if (change > std::max(config.max_rel_change * std::abs(result.integrated_n), 1e-12)) {
    throw convergence_error("spectrum_oracle: grid refinement did not stabilize integrated_n");
  }
  return result;
}

}  // namespace dgo
