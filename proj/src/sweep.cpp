#include "dgo/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "dgo/errors.hpp"

namespace dgo {

namespace {

const char* kAxisWhitelist[] = {"delta", "power", "kappa_e", "x0", "diameter"};

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n < 16) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(n, chunk * static_cast<std::size_t>(t));
    const std::size_t end = std::min(n, begin + chunk);
    if (begin < end) {
      pool.emplace_back([&, begin, end] {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      });
    }
  }
  for (auto& th : pool) th.join();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void AxisSpec::validate() const {
  if (std::none_of(std::begin(kAxisWhitelist), std::end(kAxisWhitelist),
                   [&](const char* s) { return name == s; })) {
    throw std::domain_error("sweep: axis '" + name + "' is not sweepable");
  }
  if (count < 2) throw std::domain_error("sweep: axis count must be >= 2");
  if (!(min < max)) throw std::domain_error("sweep: axis min must be < max");
  if (log_scale && !(min > 0.0)) {
    throw std::domain_error("sweep: log axis requires a positive range");
  }
}

std::vector<double> AxisSpec::points() const {
  validate();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = double(i) / (count - 1);
    out.push_back(log_scale ? min * std::pow(max / min, t) : min + (max - min) * t);
  }
  return out;
}

LinearizedSystem system_at(const SweepParameters& params, double detuning, double power,
                           double kappa_e) {
  const DriveSpec drive =
      DriveSpec::from_power(power, params.kappa_c, params.omega_cav, detuning);
  const SteadyState state = steady_state(drive, params.kappa_c, kappa_e, params.response);
  MechanicalMode mode;
  mode.omega_m = params.omega_m;
  mode.x_zpf = params.x_zpf;
  mode.n_th = params.n_th;
  return linearize(state, drive, mode, params.gamma_m, params.kappa_c, kappa_e,
                   params.eta_kappa, params.weak_coupling_threshold);
}

std::vector<DetuningPoint> detuning_scan(const SweepParameters& params,
                                         const AxisSpec& detuning_axis) {
  const std::vector<double> deltas = detuning_axis.points();
  std::vector<DetuningPoint> rows(deltas.size());
  parallel_for(deltas.size(), params.threads, [&](std::size_t i) {
    const LinearizedSystem sys = system_at(params, deltas[i], params.power, params.kappa_e);
    const OpticalSpring spring = optical_spring(sys);
    rows[i] = DetuningPoint{deltas[i], spring.gamma_o, spring.omega_o};
  });
  return rows;
}

namespace {

// Eq.-13 occupancy without the guard checks; used by the sweeps so invalid
// cells can be reported with flags instead of exceptions.
PhononCell evaluate_cell(const SweepParameters& params, double detuning, double power,
                         double kappa_e) {
  PhononCell cell;
  cell.detuning = detuning;
  cell.power = power;
  const LinearizedSystem sys = system_at(params, detuning, power, kappa_e);
  const OpticalSpring spring = optical_spring(sys);
  cell.weak_coupling = sys.weak_coupling();
  cell.damped = spring.gamma_m_eff > 0.0;
  cell.valid = cell.weak_coupling && cell.damped && power <= params.power_cap;
  if (!cell.damped) {
    cell.n_ss = std::numeric_limits<double>::quiet_NaN();
    return cell;
  }
  const double gamma_eff = spring.gamma_m_eff;
  cell.term_thermal = sys.gamma_m * sys.n_th / gamma_eff;
  const double g_sq = std::norm(sys.g);
  cell.term_sigma_noise = g_sq == 0.0 ? 0.0 : g_sq / (4.0 * kappa_e * gamma_eff);
  const double ge_sq = std::norm(sys.g_e);
  if (ge_sq == 0.0) {
    cell.term_light_noise = 0.0;
  } else {
    const double broad = gamma_eff + sys.kappa;
    const double lorentz =
        broad * broad + (detuning + spring.omega_m_eff) * (detuning + spring.omega_m_eff);
    cell.term_light_noise = broad * sys.kappa_c * ge_sq / (gamma_eff * sys.kappa * lorentz);
  }
  cell.n_ss = cell.term_thermal + cell.term_sigma_noise + cell.term_light_noise;
  return cell;
}

}  // namespace

std::vector<PhononCell> phonon_map(const SweepParameters& params, const AxisSpec& detuning_axis,
                                   const AxisSpec& power_axis) {
  const std::vector<double> deltas = detuning_axis.points();
  const std::vector<double> powers = power_axis.points();
  std::vector<PhononCell> cells(deltas.size() * powers.size());
  parallel_for(cells.size(), params.threads, [&](std::size_t idx) {
    const std::size_t i = idx / powers.size();
    const std::size_t j = idx % powers.size();
    cells[idx] = evaluate_cell(params, deltas[i], powers[j], params.kappa_e);
  });
  return cells;
}

namespace {

struct Probe {
  double detuning = 0.0;
  double power = 0.0;
  double n = std::numeric_limits<double>::infinity();
  bool found = false;
};

void consider(const SweepParameters& params, double kappa_e, double detuning, double power,
              Probe& best) {
  const PhononCell cell = evaluate_cell(params, detuning, power, kappa_e);
  if (!cell.valid || !std::isfinite(cell.n_ss)) return;
  if (cell.n_ss < best.n) {
    best.n = cell.n_ss;
    best.detuning = detuning;
    best.power = power;
    best.found = true;
  }
}

OptimumRecord optimize_one(const SweepParameters& params, double kappa_e,
                           const OptimizerConfig& opt, const AxisSpec& delta_axis,
                           const AxisSpec& power_axis) {
  OptimumRecord record;
  record.kappa_e = kappa_e;

  const std::vector<double> deltas = delta_axis.points();
  const std::vector<double> powers = power_axis.points();

  Probe best;
  for (const double d : deltas) {
    for (const double p : powers) {
      consider(params, kappa_e, d, p, best);
    }
  }
  if (!best.found) {
    record.n_min = std::numeric_limits<double>::quiet_NaN();
    return record;
  }

  // Axis-wise local refinement around the running best; spans shrink each
  // pass, improvements only, so the refined optimum never exceeds the
  // coarse-grid one.
  double span_delta = (delta_axis.max - delta_axis.min) / (delta_axis.count - 1);
  double span_log_p = std::log(power_axis.max / power_axis.min) / (power_axis.count - 1);
  int iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    const double previous = best.n;

    const double d0 = best.detuning;
    for (int i = 0; i < opt.refine_points; ++i) {
      const double t = double(i) / (opt.refine_points - 1);
      const double d = std::clamp(d0 - span_delta + 2.0 * span_delta * t, delta_axis.min,
                                  delta_axis.max);
      consider(params, kappa_e, d, best.power, best);
    }
    const double lp0 = std::log(best.power);
    for (int i = 0; i < opt.refine_points; ++i) {
      const double t = double(i) / (opt.refine_points - 1);
      const double p = std::exp(lp0 - span_log_p + 2.0 * span_log_p * t);
      consider(params, kappa_e, best.detuning,
               std::clamp(p, power_axis.min, std::min(power_axis.max, params.power_cap)), best);
    }

    span_delta *= 0.5;
    span_log_p *= 0.5;
    if (previous > 0.0 && (previous - best.n) <= opt.rel_tol * previous && iter >= 2) {
      record.converged = true;
      ++iter;
      break;
    }
  }

  record.detuning_opt = best.detuning;
  record.power_opt = best.power;
  record.n_min = best.n;
  record.iterations = iter;
  record.at_power_cap =
      best.power >= 0.999 * std::min(power_axis.max, params.power_cap);
  return record;
}

}  // namespace

std::vector<OptimumRecord> optimal_cooling(const SweepParameters& params,
                                           const AxisSpec& kappa_e_axis,
                                           const OptimizerConfig& opt) {
  const std::vector<double> kappa_es = kappa_e_axis.points();

  AxisSpec delta_axis = opt.detuning_axis;
  if (delta_axis.min == 0.0 && delta_axis.max == 0.0) {
    delta_axis.min = -3.0 * params.omega_m;
    delta_axis.max = 0.0;
  }
  AxisSpec power_axis = opt.power_axis;
  power_axis.max = std::min(power_axis.max, params.power_cap);

  // points() validates; delta spans zero so it stays linear.
  delta_axis.validate();
  power_axis.validate();

  std::vector<OptimumRecord> records(kappa_es.size());
  parallel_for(kappa_es.size(), params.threads, [&](std::size_t i) {
    records[i] = optimize_one(params, kappa_es[i], opt, delta_axis, power_axis);
  });
  return records;
}

namespace {

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

}  // namespace

void write_detuning_csv(const std::string& path, const std::vector<DetuningPoint>& rows) {
  auto out = open_csv(path);
  out << "delta_rad_s,gamma_o_rad_s,omega_o_rad_s\n";
  for (const auto& r : rows) {
    out << format_double(r.detuning) << ',' << format_double(r.gamma_o) << ','
        << format_double(r.omega_o) << '\n';
  }
}

void write_phonon_csv(const std::string& path, const std::vector<PhononCell>& rows) {
  auto out = open_csv(path);
  out << "delta_rad_s,power_w,n_ss,valid\n";
  for (const auto& r : rows) {
    out << format_double(r.detuning) << ',' << format_double(r.power) << ','
        << format_double(r.n_ss) << ',' << (r.valid ? 1 : 0) << '\n';
  }
}

void write_optimum_csv(const std::string& path, const std::vector<OptimumRecord>& rows) {
  auto out = open_csv(path);
  out << "kappa_e_rad_s,delta_opt_rad_s,power_opt_w,n_min,converged\n";
  for (const auto& r : rows) {
    out << format_double(r.kappa_e) << ',' << format_double(r.detuning_opt) << ','
        << format_double(r.power_opt) << ',' << format_double(r.n_min) << ','
        << (r.converged ? 1 : 0) << '\n';
  }
}

void write_coupling_csv(const std::string& path, const std::vector<CouplingPoint>& rows) {
  auto out = open_csv(path);
  out << "x0_m,kappa_e_rad_s,eta_kappa,eta_sqrt2ke,A_eff_m2\n";
  for (const auto& r : rows) {
    out << format_double(r.x0) << ',' << format_double(r.kappa_e) << ','
        << format_double(r.eta_kappa) << ',' << format_double(r.eta_sqrt_2ke) << ','
        << format_double(r.a_eff) << '\n';
  }
}

void write_spectrum_csv(const std::string& path, const SpectrumResult& spectrum) {
  auto out = open_csv(path);
  out << "omega_rad_s,S_nm\n";
  for (std::size_t i = 0; i < spectrum.omega.size(); ++i) {
    out << format_double(spectrum.omega[i]) << ',' << format_double(spectrum.s_nm[i]) << '\n';
  }
}

}  // namespace dgo
