#ifndef DGO_CONFIG_HPP
#define DGO_CONFIG_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "dgo/cavity.hpp"
#include "dgo/membrane.hpp"
#include "dgo/response.hpp"
#include "dgo/sweep.hpp"

namespace dgo {

/// Fully resolved run configuration. Config files are JSON with
/// unit-suffixed keys (diameter_um, kappa_c_over_2pi_hz, ...); everything
/// here is SI with angular frequencies. Exactly one of the two coupling
/// pathways is active: geometry (kappa_e and eta from the beam profile at
/// x0) or direct override (the figure-caption pathway).
struct RunConfig {
  MembraneSpec membrane;
  CavitySpec cavity;

  double power = 5e-6;    // W
  double detuning = 0.0;  // rad/s

  bool coupling_from_geometry = false;
  double coupling_x0 = 3.36e-9;                  // m (geometry mode)
  double kappa_e_override = 2.827433388230814e8;  // rad/s (override mode)
  double eta_kappa_override = 2.2e-3;

  ResponseParams response;
  double chemical_potential = 0.0;  // J

  std::optional<AxisSpec> detuning_axis;  // rad/s
  std::optional<AxisSpec> power_axis;     // W
  std::optional<AxisSpec> kappa_e_axis;   // rad/s
  std::optional<AxisSpec> x0_axis;        // m

  double weak_coupling_threshold = 0.01;
  double power_cap = 1e-3;  // W
  int threads = 1;
};

// Throws std::domain_error with the offending field name on parse,
// unit-mismatch, unknown-key and mutual-exclusion problems.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_file(const std::string& path);

// Resolved parameters in config-file schema, defaults materialized; the
// manifest embeds this so a run can be reproduced from its manifest alone.
nlohmann::json resolved_json(const RunConfig& config);

struct ResolvedCoupling {
  double kappa_e = 0.0;
  double eta_kappa = 0.0;
  double x0 = 0.0;  // meaningful in geometry mode
  bool from_geometry = false;
};

// Evaluates the geometry pathway (or passes the override through).
ResolvedCoupling resolve_coupling(const RunConfig& config);

// Wires membrane + cavity + coupling + response into the sweep block.
SweepParameters make_sweep_parameters(const RunConfig& config);

}  // namespace dgo

#endif  // DGO_CONFIG_HPP
