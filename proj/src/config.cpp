#include "dgo/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "dgo/constants.hpp"
#include "dgo/langevin.hpp"

namespace dgo {

namespace c = constants;
using nlohmann::json;

namespace {

constexpr double kElectronVolt = 1.602176634e-19;

class BlockReader {
 public:
  BlockReader(const json& doc, std::string name) : name_(std::move(name)) {
    if (doc.contains(name_)) {
      if (!doc[name_].is_object()) {
        throw std::domain_error("config: '" + name_ + "' must be an object");
      }
      block_ = doc[name_];
    }
  }

  double number(const char* key, double fallback) {
    seen_.insert(key);
    if (!block_.contains(key)) return fallback;
    const json& v = block_[key];
    if (!v.is_number()) {
      throw std::domain_error("config: '" + name_ + "." + key + "' must be a number");
    }
    return v.get<double>();
  }

  int integer(const char* key, int fallback) {
    seen_.insert(key);
    if (!block_.contains(key)) return fallback;
    const json& v = block_[key];
    if (!v.is_number_integer()) {
      throw std::domain_error("config: '" + name_ + "." + key + "' must be an integer");
    }
    return v.get<int>();
  }

  std::string text(const char* key, const std::string& fallback) {
    seen_.insert(key);
    if (!block_.contains(key)) return fallback;
    const json& v = block_[key];
    if (!v.is_string()) {
      throw std::domain_error("config: '" + name_ + "." + key + "' must be a string");
    }
    return v.get<std::string>();
  }

  bool has(const char* key) {
    seen_.insert(key);
    return block_.contains(key);
  }

  std::optional<double> optional_number(const char* key) {
    seen_.insert(key);
    if (!block_.contains(key) || block_[key].is_null()) return std::nullopt;
    const json& v = block_[key];
    if (!v.is_number()) {
      throw std::domain_error("config: '" + name_ + "." + key + "' must be a number");
    }
    return v.get<double>();
  }

  // Every key must have been touched by one of the accessors above.
  void finish() const {
    for (const auto& item : block_.items()) {
      if (!seen_.count(item.key())) {
        throw std::domain_error("config: unknown key '" + name_ + "." + item.key() + "'");
      }
    }
  }

 private:
  std::string name_;
  json block_ = json::object();
  std::set<std::string> seen_;
};

AxisSpec parse_axis(const json& parent, const std::string& qualified, const char* axis_name,
                    const char* unit_key_min, const char* unit_key_max, double to_si) {
  if (!parent.is_object()) {
    throw std::domain_error("config: '" + qualified + "' must be an object");
  }
  AxisSpec axis;
  axis.name = axis_name;
  std::set<std::string> allowed{unit_key_min, unit_key_max, "count", "scale"};
  for (const auto& item : parent.items()) {
    if (!allowed.count(item.key())) {
      throw std::domain_error("config: unknown key '" + qualified + "." + item.key() + "'");
    }
  }
  if (!parent.contains(unit_key_min) || !parent.contains(unit_key_max)) {
    throw std::domain_error("config: '" + qualified + "' needs " + unit_key_min + " and " +
                            unit_key_max);
  }
  axis.min = parent[unit_key_min].get<double>() * to_si;
  axis.max = parent[unit_key_max].get<double>() * to_si;
  axis.count = parent.value("count", 64);
  const std::string scale = parent.value("scale", "linear");
  if (scale != "linear" && scale != "log") {
    throw std::domain_error("config: '" + qualified + ".scale' must be linear or log");
  }
  axis.log_scale = scale == "log";
  axis.validate();
  return axis;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw std::domain_error("config: top level must be a JSON object");
  static const std::set<std::string> kBlocks{"membrane", "cavity",   "drive",
                                             "coupling", "response", "sweep"};
  for (const auto& item : doc.items()) {
    if (!kBlocks.count(item.key())) {
      throw std::domain_error("config: unknown block '" + item.key() + "'");
    }
  }

  RunConfig cfg;

  BlockReader membrane(doc, "membrane");
  cfg.membrane.diameter = membrane.number("diameter_um", 30.0) * 1e-6;
  cfg.membrane.strain = membrane.number("strain", 0.01);
  cfg.membrane.stiffness2d = membrane.number("stiffness2d_n_per_m", 340.0);
  cfg.membrane.areal_density = membrane.number("areal_density_kg_per_um2", 7.4e-19) * 1e12;
  cfg.membrane.intrinsic_damping =
      c::angular_from_hz(membrane.number("gamma_m_over_2pi_hz", 10.0));
  cfg.membrane.temperature = membrane.number("temperature_k", 0.26);
  membrane.finish();
  cfg.membrane.validate();

  BlockReader cavity(doc, "cavity");
  cfg.cavity.length = cavity.number("length_um", 30.0) * 1e-6;
  cfg.cavity.wavelength = cavity.number("wavelength_nm", 600.0) * 1e-9;
  cfg.cavity.kappa_c = c::angular_from_hz(cavity.number("kappa_c_over_2pi_hz", 1e6));
  if (const auto waist = cavity.optional_number("waist_um")) {
    cfg.cavity.waist_override = *waist * 1e-6;
  }
  cavity.finish();
  cfg.cavity.validate();

  BlockReader drive(doc, "drive");
  cfg.power = drive.number("power_w", 5e-6);
  cfg.detuning = c::angular_from_hz(drive.number("detuning_over_2pi_hz", 0.0));
  drive.finish();
  if (cfg.power < 0.0) throw std::domain_error("config: drive.power_w must be >= 0");

  BlockReader coupling(doc, "coupling");
  const bool has_geometry = coupling.has("x0_nm");
  const bool has_override = coupling.has("kappa_e_over_2pi_hz") || coupling.has("eta_kappa");
  const std::string mode = coupling.text("mode", has_geometry && !has_override ? "geometry"
                                                                               : "override");
  if (mode != "geometry" && mode != "override") {
    throw std::domain_error("config: coupling.mode must be geometry or override");
  }
  if (has_geometry && has_override) {
    throw std::domain_error(
        "config: coupling block mixes the geometry pathway (x0_nm) with the "
        "kappa_e/eta_kappa override; exactly one must be active");
  }
  if (mode == "geometry" && has_override) {
    throw std::domain_error("config: coupling.mode=geometry forbids kappa_e/eta_kappa keys");
  }
  if (mode == "override" && has_geometry) {
    throw std::domain_error("config: coupling.mode=override forbids x0_nm");
  }
  cfg.coupling_from_geometry = mode == "geometry";
  cfg.coupling_x0 = coupling.number("x0_nm", 3.36) * 1e-9;
  cfg.kappa_e_override = c::angular_from_hz(coupling.number("kappa_e_over_2pi_hz", 45e6));
  cfg.eta_kappa_override = coupling.number("eta_kappa", 2.2e-3);
  coupling.finish();

  BlockReader response(doc, "response");
  cfg.response.area_ratio = response.number("area_ratio", 0.01);
  cfg.response.fermi_velocity_ratio =
      response.number("fermi_velocity_ratio", c::fermi_velocity_ratio_default);
  cfg.chemical_potential = response.number("chemical_potential_ev", 0.0) * kElectronVolt;
  response.finish();
  cfg.response.validate();

  BlockReader sweep(doc, "sweep");
  cfg.weak_coupling_threshold = sweep.number("weak_coupling_threshold", 0.01);
  cfg.power_cap = sweep.number("power_cap_w", 1e-3);
  cfg.threads = sweep.integer("threads", 1);
  if (sweep.has("detuning")) {
    cfg.detuning_axis = parse_axis(doc["sweep"]["detuning"], "sweep.detuning", "delta",
                                   "min_over_2pi_hz", "max_over_2pi_hz", c::two_pi);
  }
  if (sweep.has("power")) {
    cfg.power_axis =
        parse_axis(doc["sweep"]["power"], "sweep.power", "power", "min_w", "max_w", 1.0);
  }
  if (sweep.has("kappa_e")) {
    cfg.kappa_e_axis = parse_axis(doc["sweep"]["kappa_e"], "sweep.kappa_e", "kappa_e",
                                  "min_over_2pi_hz", "max_over_2pi_hz", c::two_pi);
  }
  if (sweep.has("x0")) {
    cfg.x0_axis = parse_axis(doc["sweep"]["x0"], "sweep.x0", "x0", "min_nm", "max_nm", 1e-9);
  }
  sweep.finish();
  if (!(cfg.weak_coupling_threshold > 0.0)) {
    throw std::domain_error("config: sweep.weak_coupling_threshold must be positive");
  }
  if (!(cfg.power_cap > 0.0)) throw std::domain_error("config: sweep.power_cap_w must be positive");
  if (cfg.threads < 1) throw std::domain_error("config: sweep.threads must be >= 1");

  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw std::domain_error(std::string("config: JSON parse error: ") + err.what());
  }
  return parse_config(doc);
}

namespace {

json axis_json(const AxisSpec& axis, const char* min_key, const char* max_key, double from_si) {
  return json{{min_key, axis.min * from_si},
              {max_key, axis.max * from_si},
              {"count", axis.count},
              {"scale", axis.log_scale ? "log" : "linear"}};
}

}  // namespace

json resolved_json(const RunConfig& cfg) {
  json doc;
  doc["membrane"] = {{"diameter_um", cfg.membrane.diameter * 1e6},
                     {"strain", cfg.membrane.strain},
                     {"stiffness2d_n_per_m", cfg.membrane.stiffness2d},
                     {"areal_density_kg_per_um2", cfg.membrane.areal_density * 1e-12},
                     {"gamma_m_over_2pi_hz", c::hz_from_angular(cfg.membrane.intrinsic_damping)},
                     {"temperature_k", cfg.membrane.temperature}};
  doc["cavity"] = {{"length_um", cfg.cavity.length * 1e6},
                   {"wavelength_nm", cfg.cavity.wavelength * 1e9},
                   {"kappa_c_over_2pi_hz", c::hz_from_angular(cfg.cavity.kappa_c)}};
  if (cfg.cavity.waist_override) {
    doc["cavity"]["waist_um"] = *cfg.cavity.waist_override * 1e6;
  }
  doc["drive"] = {{"power_w", cfg.power},
                  {"detuning_over_2pi_hz", c::hz_from_angular(cfg.detuning)}};
  if (cfg.coupling_from_geometry) {
    doc["coupling"] = {{"mode", "geometry"}, {"x0_nm", cfg.coupling_x0 * 1e9}};
  } else {
    doc["coupling"] = {{"mode", "override"},
                       {"kappa_e_over_2pi_hz", c::hz_from_angular(cfg.kappa_e_override)},
                       {"eta_kappa", cfg.eta_kappa_override}};
  }
  doc["response"] = {{"area_ratio", cfg.response.area_ratio},
                     {"fermi_velocity_ratio", cfg.response.fermi_velocity_ratio},
                     {"chemical_potential_ev", cfg.chemical_potential / kElectronVolt}};
  doc["sweep"] = {{"weak_coupling_threshold", cfg.weak_coupling_threshold},
                  {"power_cap_w", cfg.power_cap},
                  {"threads", cfg.threads}};
  if (cfg.detuning_axis) {
    doc["sweep"]["detuning"] =
        axis_json(*cfg.detuning_axis, "min_over_2pi_hz", "max_over_2pi_hz", 1.0 / c::two_pi);
  }
  if (cfg.power_axis) {
    doc["sweep"]["power"] = axis_json(*cfg.power_axis, "min_w", "max_w", 1.0);
  }
  if (cfg.kappa_e_axis) {
    doc["sweep"]["kappa_e"] =
        axis_json(*cfg.kappa_e_axis, "min_over_2pi_hz", "max_over_2pi_hz", 1.0 / c::two_pi);
  }
  if (cfg.x0_axis) {
    doc["sweep"]["x0"] = axis_json(*cfg.x0_axis, "min_nm", "max_nm", 1e9);
  }
  return doc;
}

ResolvedCoupling resolve_coupling(const RunConfig& cfg) {
  ResolvedCoupling out;
  if (!cfg.coupling_from_geometry) {
    out.kappa_e = cfg.kappa_e_override;
    out.eta_kappa = cfg.eta_kappa_override;
    out.from_geometry = false;
    return out;
  }
  const BeamGeometry geom = beam_waist(cfg.cavity);
  const MechanicalMode mode = mechanical_mode(cfg.membrane);
  const double photon_energy = c::hbar * cfg.cavity.omega_cav();
  const double fermi =
      fermi_factor(cfg.membrane.temperature, cfg.chemical_potential, photon_energy);
  out.x0 = cfg.coupling_x0;
  out.kappa_e = absorption_rate(cfg.cavity, geom, cfg.coupling_x0, fermi);
  const EtaCoupling eta = coupling_eta(cfg.cavity, geom, fermi, cfg.coupling_x0, mode.x_zpf);
  out.eta_kappa = eta.eta_kappa;
  out.from_geometry = true;
  return out;
}

SweepParameters make_sweep_parameters(const RunConfig& cfg) {
  const MechanicalMode mode = mechanical_mode(cfg.membrane);
  const ResolvedCoupling coupling = resolve_coupling(cfg);
  SweepParameters params;
  params.power = cfg.power;
  params.omega_cav = cfg.cavity.omega_cav();
  params.kappa_c = cfg.cavity.kappa_c;
  params.kappa_e = coupling.kappa_e;
  params.eta_kappa = coupling.eta_kappa;
  params.omega_m = mode.omega_m;
  params.gamma_m = cfg.membrane.intrinsic_damping;
  params.n_th = mode.n_th;
  params.x_zpf = mode.x_zpf;
  params.response = cfg.response;
  params.weak_coupling_threshold = cfg.weak_coupling_threshold;
  params.power_cap = cfg.power_cap;
  params.threads = cfg.threads;
  return params;
}

}  // namespace dgo
