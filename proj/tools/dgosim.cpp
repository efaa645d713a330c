// Command-line front end: parses a JSON config, dispatches one of the
// simulation subcommands and emits CSV/JSON tables plus a manifest that is
// sufficient to reproduce the run.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgo/config.hpp"
#include "dgo/constants.hpp"
#include "dgo/errors.hpp"
#include "dgo/langevin.hpp"
#include "dgo/membrane.hpp"
#include "dgo/sweep.hpp"

namespace {

namespace fs = std::filesystem;
namespace c = dgo::constants;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  int threads = 0;  // 0 = take from config
  long seed = 0;    // reserved; all computation is deterministic
};

struct RunContext {
  dgo::RunConfig config;
  dgo::SweepParameters params;
  dgo::MechanicalMode mode;
  dgo::ResolvedCoupling coupling;
  fs::path out;
};

RunContext prepare(const CliOptions& cli) {
  RunContext ctx;
  ctx.config = cli.config_path.empty() ? dgo::parse_config(json::object())
                                       : dgo::parse_config_file(cli.config_path);
  if (cli.threads > 0) ctx.config.threads = cli.threads;
  ctx.params = dgo::make_sweep_parameters(ctx.config);
  ctx.mode = dgo::mechanical_mode(ctx.config.membrane);
  ctx.coupling = dgo::resolve_coupling(ctx.config);
  ctx.out = fs::path(cli.out_dir);
  fs::create_directories(ctx.out);
  return ctx;
}

json derived_block(const RunContext& ctx) {
  return json{{"omega_m_over_2pi_hz", c::hz_from_angular(ctx.mode.omega_m)},
              {"m_eff_kg", ctx.mode.m_eff},
              {"x_zpf_m", ctx.mode.x_zpf},
              {"n_th", ctx.mode.n_th},
              {"kappa_e_over_2pi_hz", c::hz_from_angular(ctx.coupling.kappa_e)},
              {"eta_kappa", ctx.coupling.eta_kappa},
              {"coupling_from_geometry", ctx.coupling.from_geometry}};
}

void write_manifest(const RunContext& ctx, const CliOptions& cli, const std::string& subcommand,
                    const std::vector<std::string>& outputs, double seconds,
                    const json& summary) {
  json manifest;
  manifest["tool"] = "dgosim";
  manifest["version"] = kVersion;
  manifest["subcommand"] = subcommand;
  manifest["seed"] = cli.seed;
  manifest["format"] = cli.format;
  manifest["config"] = dgo::resolved_json(ctx.config);
  manifest["derived"] = derived_block(ctx);
  manifest["outputs"] = outputs;
  manifest["timing_seconds"] = seconds;
  if (!summary.is_null()) manifest["summary"] = summary;
  std::ofstream out(ctx.out / ("manifest_" + subcommand + ".json"));
  out << manifest.dump(2) << '\n';
}

template <typename Rows, typename RowToJson>
void maybe_write_json(const CliOptions& cli, const fs::path& path, const Rows& rows,
                      RowToJson to_json_row, std::vector<std::string>& outputs) {
  if (cli.format != "json") return;
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(to_json_row(r));
  std::ofstream out(path);
  out << arr.dump(2) << '\n';
  outputs.push_back(path.filename().string());
}

dgo::AxisSpec default_detuning_axis(const dgo::SweepParameters& p, double lo, double hi,
                                    int count) {
  dgo::AxisSpec axis;
  axis.name = "delta";
  axis.min = lo * p.omega_m;
  axis.max = hi * p.omega_m;
  axis.count = count;
  axis.log_scale = false;
  return axis;
}

int run_coupling(const CliOptions& cli) {
  const auto start = std::chrono::steady_clock::now();
  RunContext ctx = prepare(cli);

  const dgo::BeamGeometry geom = dgo::beam_waist(ctx.config.cavity);
  const double photon_energy = c::hbar * ctx.config.cavity.omega_cav();
  const double fermi = dgo::fermi_factor(ctx.config.membrane.temperature,
                                         ctx.config.chemical_potential, photon_energy);
  double x_min = 0.0;
  double x_max = 0.5 * ctx.config.cavity.wavelength;
  int count = 1001;
  if (ctx.config.x0_axis) {
    x_min = ctx.config.x0_axis->min;
    x_max = ctx.config.x0_axis->max;
    count = ctx.config.x0_axis->count;
  }
  const auto profile = dgo::coupling_profile(ctx.config.cavity, geom, fermi, ctx.mode.x_zpf,
                                             x_min, x_max, count);
  const fs::path csv = ctx.out / "fig2.csv";
  dgo::write_coupling_csv(csv.string(), profile);
  std::vector<std::string> outputs{csv.filename().string()};
  maybe_write_json(cli, ctx.out / "fig2.json", profile, [](const dgo::CouplingPoint& p) {
    return json{{"x0_m", p.x0},
                {"kappa_e_rad_s", p.kappa_e},
                {"eta_kappa", p.eta_kappa},
                {"eta_sqrt2ke", p.eta_sqrt_2ke},
                {"A_eff_m2", p.a_eff}};
  }, outputs);

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json summary{{"fermi_factor", fermi},
               {"waist_m", geom.waist},
               {"rayleigh_range_m", geom.rayleigh_range},
               {"points", count}};
  write_manifest(ctx, cli, "coupling", outputs, seconds, summary);
  return 0;
}

int run_damping(const CliOptions& cli) {
  const auto start = std::chrono::steady_clock::now();
  RunContext ctx = prepare(cli);

  const dgo::AxisSpec axis = ctx.config.detuning_axis
                                 ? *ctx.config.detuning_axis
                                 : default_detuning_axis(ctx.params, -2.0, 2.0, 201);
  const auto rows = dgo::detuning_scan(ctx.params, axis);
  const fs::path csv = ctx.out / "fig3.csv";
  dgo::write_detuning_csv(csv.string(), rows);
  std::vector<std::string> outputs{csv.filename().string()};
  maybe_write_json(cli, ctx.out / "fig3.json", rows, [](const dgo::DetuningPoint& p) {
    return json{{"delta_rad_s", p.detuning},
                {"gamma_o_rad_s", p.gamma_o},
                {"omega_o_rad_s", p.omega_o}};
  }, outputs);

  double best_gamma = 0.0;
  double best_delta = 0.0;
  for (const auto& r : rows) {
    if (r.gamma_o > best_gamma) {
      best_gamma = r.gamma_o;
      best_delta = r.detuning;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json summary{{"max_gamma_o_rad_s", best_gamma},
               {"argmax_delta_over_2pi_hz", c::hz_from_angular(best_delta)},
               {"power_w", ctx.params.power}};
  write_manifest(ctx, cli, "damping", outputs, seconds, summary);
  return 0;
}

int run_phonon_map(const CliOptions& cli) {
  const auto start = std::chrono::steady_clock::now();
  RunContext ctx = prepare(cli);

  const dgo::AxisSpec delta_axis = ctx.config.detuning_axis
                                       ? *ctx.config.detuning_axis
                                       : default_detuning_axis(ctx.params, -3.0, 0.0, 64);
  dgo::AxisSpec power_axis;
  if (ctx.config.power_axis) {
    power_axis = *ctx.config.power_axis;
  } else {
    power_axis = dgo::AxisSpec{"power", 1e-9, 1e-3, 64, true};
  }
  const auto cells = dgo::phonon_map(ctx.params, delta_axis, power_axis);
  const fs::path csv = ctx.out / "fig4.csv";
  dgo::write_phonon_csv(csv.string(), cells);
  std::vector<std::string> outputs{csv.filename().string()};
  maybe_write_json(cli, ctx.out / "fig4.json", cells, [](const dgo::PhononCell& p) {
    return json{{"delta_rad_s", p.detuning}, {"power_w", p.power},
                {"n_ss", p.n_ss},           {"term_thermal", p.term_thermal},
                {"term_sigma", p.term_sigma_noise}, {"term_light", p.term_light_noise},
                {"valid", p.valid}};
  }, outputs);

  std::size_t valid = 0;
  std::size_t ground_state = 0;
  double n_min = std::numeric_limits<double>::infinity();
  for (const auto& cell : cells) {
    if (cell.valid) ++valid;
    if (std::isfinite(cell.n_ss) && cell.n_ss < 1.0) ++ground_state;
    if (cell.valid && cell.n_ss < n_min) n_min = cell.n_ss;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json summary{{"cells", cells.size()},
               {"valid_cells", valid},
               {"ground_state_cells", ground_state},
               {"n_min_valid", std::isfinite(n_min) ? json(n_min) : json()}};
  write_manifest(ctx, cli, "phonon-map", outputs, seconds, summary);
  return 0;
}

int run_optimal(const CliOptions& cli) {
  const auto start = std::chrono::steady_clock::now();
  RunContext ctx = prepare(cli);

  dgo::AxisSpec kappa_axis;
  if (ctx.config.kappa_e_axis) {
    kappa_axis = *ctx.config.kappa_e_axis;
  } else {
    kappa_axis = dgo::AxisSpec{"kappa_e", 0.1 * ctx.params.omega_m, 4.0 * ctx.params.omega_m,
                               17, true};
  }
  const auto records = dgo::optimal_cooling(ctx.params, kappa_axis);
  const fs::path csv = ctx.out / "fig5.csv";
  dgo::write_optimum_csv(csv.string(), records);
  std::vector<std::string> outputs{csv.filename().string()};
  maybe_write_json(cli, ctx.out / "fig5.json", records, [](const dgo::OptimumRecord& r) {
    return json{{"kappa_e_rad_s", r.kappa_e},   {"delta_opt_rad_s", r.detuning_opt},
                {"power_opt_w", r.power_opt},   {"n_min", r.n_min},
                {"iterations", r.iterations},   {"converged", r.converged},
                {"at_power_cap", r.at_power_cap}};
  }, outputs);

  double best = std::numeric_limits<double>::infinity();
  double best_kappa = 0.0;
  for (const auto& r : records) {
    if (std::isfinite(r.n_min) && r.n_min < best) {
      best = r.n_min;
      best_kappa = r.kappa_e;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json summary{{"n_min_overall", std::isfinite(best) ? json(best) : json()},
               {"argmin_kappa_e_over_omega_m", best_kappa / ctx.params.omega_m}};
  write_manifest(ctx, cli, "optimal", outputs, seconds, summary);
  return 0;
}

int run_spectrum(const CliOptions& cli) {
  const auto start = std::chrono::steady_clock::now();
  RunContext ctx = prepare(cli);

  const dgo::LinearizedSystem sys = dgo::system_at(ctx.params, ctx.config.detuning,
                                                   ctx.config.power, ctx.params.kappa_e);
  dgo::SpectrumGridConfig grid;
  grid.threads = ctx.config.threads;
  const dgo::SpectrumResult spectrum = dgo::spectrum_oracle(sys, grid);

  json analytic = json();
  const dgo::OpticalSpring spring = dgo::optical_spring(sys);
  if (sys.weak_coupling() && spring.gamma_m_eff > 0.0) {
    const dgo::PhononResult n = dgo::phonon_number_analytic(sys, spring);
    analytic = json{{"n_ss", n.n_ss},
                    {"term_thermal", n.term_thermal},
                    {"term_sigma_noise", n.term_sigma_noise},
                    {"term_light_noise", n.term_light_noise},
                    {"rel_diff_vs_oracle",
                     n.n_ss != 0.0 ? std::abs(spectrum.integrated_n - n.n_ss) / n.n_ss : 0.0}};
  }

  const fs::path csv = ctx.out / "spectrum.csv";
  dgo::write_spectrum_csv(csv.string(), spectrum);
  std::vector<std::string> outputs{csv.filename().string()};

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json summary{{"integrated_n", spectrum.integrated_n},
               {"integrated_n_coarse", spectrum.integrated_n_coarse},
               {"channel_thermal", spectrum.channel_thermal},
               {"channel_sigma", spectrum.channel_sigma},
               {"channel_light", spectrum.channel_light},
               {"n_th", ctx.params.n_th},
               {"analytic", analytic}};
  write_manifest(ctx, cli, "spectrum", outputs, seconds, summary);
  return 0;
}

struct InvariantReport {
  int passed = 0;
  int failed = 0;
  void check(bool ok, const std::string& label) {
    std::printf("%s %s\n", ok ? "PASS" : "FAIL", label.c_str());
    ok ? ++passed : ++failed;
  }
};

int run_validate(const CliOptions& cli) {
  const auto start = std::chrono::steady_clock::now();
  RunContext ctx = prepare(cli);
  InvariantReport report;

  // mechanics closure
  const dgo::MechanicalMode& mode = ctx.mode;
  const double closure =
      mode.x_zpf * mode.x_zpf * 2.0 * mode.m_eff * mode.omega_m / c::hbar;
  report.check(std::abs(closure - 1.0) < 1e-12, "x_zpf closure  X^2 2 m_eff omega_m = hbar");

  dgo::MembraneSpec doubled = ctx.config.membrane;
  doubled.diameter *= 2.0;
  report.check(std::abs(dgo::fundamental_frequency(doubled) * 2.0 - mode.omega_m) <
                   1e-9 * mode.omega_m,
               "omega_m follows the exact 1/D law");

  // coupling profile
  const dgo::BeamGeometry geom = dgo::beam_waist(ctx.config.cavity);
  const double photon_energy = c::hbar * ctx.config.cavity.omega_cav();
  const double fermi = dgo::fermi_factor(ctx.config.membrane.temperature,
                                         ctx.config.chemical_potential, photon_energy);
  report.check(fermi >= 0.0 && fermi <= 1.0, "fermi factor in [0, 1]");
  report.check(dgo::absorption_rate(ctx.config.cavity, geom, 0.0, fermi) == 0.0,
               "kappa_e vanishes at the node");
  bool nonneg = true;
  const auto profile = dgo::coupling_profile(ctx.config.cavity, geom, fermi, mode.x_zpf, 0.0,
                                             0.5 * ctx.config.cavity.wavelength, 101);
  for (const auto& p : profile) nonneg = nonneg && p.kappa_e >= 0.0 && std::isfinite(p.eta_sqrt_2ke);
  report.check(nonneg, "kappa_e >= 0 and eta sqrt(2 kappa_e) finite on the profile");

  // steady state residual
  const dgo::DriveSpec drive = dgo::DriveSpec::from_power(
      ctx.config.power, ctx.params.kappa_c, ctx.params.omega_cav, ctx.config.detuning);
  const dgo::SteadyState state =
      dgo::steady_state(drive, ctx.params.kappa_c, ctx.params.kappa_e, ctx.config.response);
  const std::complex<double> residual =
      state.abar * std::complex<double>(state.kappa_total, drive.detuning) - drive.amplitude -
      std::sqrt(2.0 * ctx.params.kappa_e) * state.sigma_bar;
  const double rel_residual =
      std::abs(drive.amplitude) > 0.0 ? std::abs(residual) / std::abs(drive.amplitude) : 0.0;
  report.check(rel_residual <= 1e-12, "steady-state residual <= 1e-12 relative");

  const dgo::LinearizedSystem sys = dgo::system_at(ctx.params, ctx.config.detuning,
                                                   ctx.config.power, ctx.params.kappa_e);
  const dgo::OpticalSpring spring = dgo::optical_spring(sys);
  report.check(spring.drive_response_ratio > 1e3,
               "drive/response validity ratio exceeds 1e3");

  // spectrum positivity and oracle agreement on a weak-coupling point
  dgo::SweepParameters weak = ctx.params;
  weak.power = 1e-12;
  const dgo::LinearizedSystem weak_sys = dgo::system_at(weak, -ctx.params.omega_m, weak.power,
                                                        ctx.params.kappa_e);
  dgo::SpectrumGridConfig grid;
  grid.threads = ctx.config.threads;
  const dgo::SpectrumResult spectrum = dgo::spectrum_oracle(weak_sys, grid);
  bool positive = true;
  for (const double s : spectrum.s_nm) positive = positive && s >= 0.0;
  report.check(positive, "S_nm(omega) >= 0 on the sampled grid");
  const dgo::PhononResult analytic =
      dgo::phonon_number_analytic(weak_sys, dgo::optical_spring(weak_sys));
  report.check(std::abs(spectrum.integrated_n - analytic.n_ss) <=
                   0.05 * std::max(analytic.n_ss, 1e-12),
               "spectrum oracle matches the analytic occupancy within 5%");

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d passed, %d failed\n", report.passed, report.failed);
  json summary{{"passed", report.passed}, {"failed", report.failed}};
  write_manifest(ctx, cli, "validate", {}, seconds, summary);
  return report.failed == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dissipative graphene-cavity optomechanics simulator"};
  app.require_subcommand(1);

  CliOptions cli;
  app.add_option("--config", cli.config_path, "JSON config file (defaults when omitted)");
  app.add_option("--out", cli.out_dir, "output directory");
  app.add_option("--format", cli.format, "table format: csv or json (json adds .json tables)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", cli.threads, "worker threads (overrides config)");
  app.add_option("--seed", cli.seed, "reserved; computation is deterministic");

  auto* coupling = app.add_subcommand("coupling", "emit the kappa_e / eta profile (fig2)");
  auto* damping = app.add_subcommand("damping", "optical spring vs detuning (fig3)");
  auto* map = app.add_subcommand("phonon-map", "occupancy over (detuning, power) (fig4)");
  auto* optimal = app.add_subcommand("optimal", "minimum occupancy vs kappa_e (fig5)");
  auto* spectrum = app.add_subcommand("spectrum", "full-matrix noise spectrum at one point");
  auto* validate = app.add_subcommand("validate", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (coupling->parsed()) return run_coupling(cli);
    if (damping->parsed()) return run_damping(cli);
    if (map->parsed()) return run_phonon_map(cli);
    if (optimal->parsed()) return run_optimal(cli);
    if (spectrum->parsed()) return run_spectrum(cli);
    if (validate->parsed()) return run_validate(cli);
  } catch (const dgo::validity_error& e) {
    std::cerr << "validity error: " << e.what() << '\n';
    return 4;
  } catch (const dgo::convergence_error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
