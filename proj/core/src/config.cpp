#include "holeflux/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "holeflux/units.hpp"

namespace holeflux {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for '" + key + "': '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer value for '" + key + "': '" + value + "'");
  }
}

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct KeyBinding {
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<std::pair<std::string, KeyBinding>>& bindings() {
  auto dbl = [](double RunConfig::* member) {
    return KeyBinding{
        [member](RunConfig& c, const std::string& v) { c.*member = parse_double("", v); },
        [member](const RunConfig& c) { return format_double(c.*member); }};
  };
  auto integer = [](int RunConfig::* member) {
    return KeyBinding{
        [member](RunConfig& c, const std::string& v) { c.*member = parse_int("", v); },
        [member](const RunConfig& c) { return std::to_string(c.*member); }};
  };
  auto str = [](std::string RunConfig::* member) {
    return KeyBinding{[member](RunConfig& c, const std::string& v) { c.*member = v; },
                      [member](const RunConfig& c) { return c.*member; }};
  };
  static const std::vector<std::pair<std::string, KeyBinding>> table = {
      {"species", str(&RunConfig::species)},
      {"lambda_nm",
       {[](RunConfig& c, const std::string& v) {
          c.lambda_nm = parse_double("lambda_nm", v);
          if (c.lambda_nm > 0.0) c.speed_m_s = 0.0;
        },
        [](const RunConfig& c) { return format_double(c.lambda_nm); }}},
      {"speed_m_s",
       {[](RunConfig& c, const std::string& v) {
          c.speed_m_s = parse_double("speed_m_s", v);
          if (c.speed_m_s > 0.0) c.lambda_nm = 0.0;
        },
        [](const RunConfig& c) { return format_double(c.speed_m_s); }}},
      {"d_nm", dbl(&RunConfig::d_nm)},
      {"R_nm", dbl(&RunConfig::R_nm)},
      {"model", str(&RunConfig::model)},
      {"hamaker_mode", str(&RunConfig::hamaker_mode)},
      {"force_model", str(&RunConfig::force_model)},
      {"beta_mrad", dbl(&RunConfig::beta_mrad)},
      {"delta_r_tol_nm", dbl(&RunConfig::delta_r_tol_nm)},
      {"force_epsilon_nm", dbl(&RunConfig::force_epsilon_nm)},
      {"z_pad_factor", dbl(&RunConfig::z_pad_factor)},
      {"ode_rel_tol", dbl(&RunConfig::ode_rel_tol)},
      {"ode_abs_tol", dbl(&RunConfig::ode_abs_tol)},
      {"L1_m", dbl(&RunConfig::L1_m)},
      {"L2_um", dbl(&RunConfig::L2_um)},
      {"p_max_airy", dbl(&RunConfig::p_max_airy)},
      {"detector_samples", integer(&RunConfig::detector_samples)},
      {"bare_only", integer(&RunConfig::bare_only)},
      {"n_trajectories", integer(&RunConfig::n_trajectories)},
      {"phase_samples", integer(&RunConfig::phase_samples)},
      {"species_list", str(&RunConfig::species_list)},
      {"lambda_min_nm", dbl(&RunConfig::lambda_min_nm)},
      {"lambda_max_nm", dbl(&RunConfig::lambda_max_nm)},
      {"lambda_points", integer(&RunConfig::lambda_points)},
      {"lambda_scale", str(&RunConfig::lambda_scale)},
      {"d_min_nm", dbl(&RunConfig::d_min_nm)},
      {"d_max_nm", dbl(&RunConfig::d_max_nm)},
      {"d_points", integer(&RunConfig::d_points)},
      {"R_list_nm", str(&RunConfig::R_list_nm)},
      {"threads", integer(&RunConfig::threads)},
  };
  return table;
}

const KeyBinding* find_binding(const std::string& key) {
  for (const auto& [name, binding] : bindings()) {
    if (name == key) return &binding;
  }
  return nullptr;
}

}  // namespace

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, binding] : bindings()) out.push_back(name);
    return out;
  }();
  return names;
}

void RunConfig::apply_key(const std::string& key, const std::string& value) {
  const KeyBinding* binding = find_binding(key);
  if (binding == nullptr) throw ConfigError("unknown config key '" + key + "'");
  binding->set(*this, trim(value));
}

std::string RunConfig::get_key(const std::string& key) const {
  const KeyBinding* binding = find_binding(key);
  if (binding == nullptr) throw ConfigError("unknown config key '" + key + "'");
  return binding->get(*this);
}

void RunConfig::write(std::ostream& os) const {
  for (const auto& [name, binding] : bindings()) {
    os << name << " = " << binding->get(*this) << "\n";
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  int line_no = 0;
  bool saw_lambda = false, saw_speed = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + " is not 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key == "lambda_nm" && parse_double(key, value) > 0.0) saw_lambda = true;
    if (key == "speed_m_s" && parse_double(key, value) > 0.0) saw_speed = true;
    apply_key(key, value);
  }
  if (saw_lambda && saw_speed) {
    throw ConfigError("config sets both lambda_nm and speed_m_s; pick one primary");
  }
}

void RunConfig::apply_preset(const std::string& name) {
  if (name == "fig2") {
    // classical trajectories through a d = 50 nm membrane, R = 25 nm hole,
    // helium at 1000 m/s
    species = "He";
    apply_key("speed_m_s", "1000");
    d_nm = 50.0;
    R_nm = 25.0;
    model = "transverse";
    n_trajectories = 41;
  } else if (name == "fig3") {
    // transverse-model reduction sweep over wavelength and thickness
    model = "transverse";
    species_list = "He*,He";
    lambda_min_nm = 0.05;
    lambda_max_nm = 1.0;
    lambda_points = 20;
    lambda_scale = "log";
    d_min_nm = 5.0;
    d_max_nm = 50.0;
    d_points = 10;
    R_list_nm = "25";
  } else if (name == "fig4") {
    // full-potential reduction for shrinking hole radii, beta = 10 mrad
    model = "full";
    species_list = "He*";
    lambda_min_nm = 0.05;
    lambda_max_nm = 1.0;
    lambda_points = 6;
    lambda_scale = "log";
    d_min_nm = 5.0;
    d_max_nm = 50.0;
    d_points = 4;
    R_list_nm = "25,10,5";
    beta_mrad = 10.0;
  } else if (name == "fig5") {
    // far-field diffraction of He* at a R = 5 nm hole in a 5 nm membrane
    species = "He*";
    apply_key("lambda_nm", "0.1");
    d_nm = 5.0;
    R_nm = 5.0;
    model = "transverse";
    L1_m = 1.0;
    L2_um = 50.0;
    p_max_airy = 20.0;
    detector_samples = 1001;
  } else {
    throw ConfigError("unknown preset '" + name + "' (available: fig2 fig3 fig4 fig5)");
  }
}

void RunConfig::validate() const {
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("config value '") + key + "' must be positive");
    }
  };
  if (lambda_nm <= 0.0 && speed_m_s <= 0.0) {
    throw ConfigError("one of lambda_nm / speed_m_s must be positive");
  }
  positive(d_nm, "d_nm");
  positive(R_nm, "R_nm");
  positive(beta_mrad, "beta_mrad");
  positive(delta_r_tol_nm, "delta_r_tol_nm");
  positive(force_epsilon_nm, "force_epsilon_nm");
  positive(z_pad_factor, "z_pad_factor");
  positive(ode_rel_tol, "ode_rel_tol");
  positive(ode_abs_tol, "ode_abs_tol");
  positive(L1_m, "L1_m");
  positive(L2_um, "L2_um");
  positive(p_max_airy, "p_max_airy");
  if (detector_samples < 3) throw ConfigError("detector_samples must be >= 3");
  if (n_trajectories < 1) throw ConfigError("n_trajectories must be >= 1");
  if (phase_samples < 2) throw ConfigError("phase_samples must be >= 2");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  if (lambda_scale != "log" && lambda_scale != "lin") {
    throw ConfigError("lambda_scale must be 'log' or 'lin'");
  }
  AtomSpecies::from_name(species);                  // throws on unknown species
  reduction_model_from_string(model);               // throws on unknown model
  hamaker_mode_from_string(hamaker_mode);           // "
  force_model_from_string(force_model);             // "
}

AtomSpecies RunConfig::make_species() const { return AtomSpecies::from_name(species); }

BeamState RunConfig::make_beam() const {
  const AtomSpecies sp = make_species();
  if (lambda_nm > 0.0) return BeamState::from_wavelength(sp, nm(lambda_nm));
  return BeamState::from_speed(sp, speed_m_s);
}

HoleGeometry RunConfig::make_geometry() const { return HoleGeometry::from_nm(d_nm, R_nm); }

ReductionConfig RunConfig::make_reduction_config() const {
  ReductionConfig cfg;
  cfg.tolerance = nm(delta_r_tol_nm);
  cfg.force_model = force_model_from_string(force_model);
  cfg.hamaker_mode = hamaker_mode_from_string(hamaker_mode);
  cfg.propagation.force_epsilon = nm(force_epsilon_nm);
  cfg.propagation.z_pad_factor = z_pad_factor;
  cfg.propagation.ode.rel_tol = ode_rel_tol;
  cfg.propagation.ode.abs_tol = ode_abs_tol;
  return cfg;
}

SweepGrid RunConfig::make_sweep_grid() const {
  SweepGrid grid;
  {
    std::stringstream ss(species_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string name = trim(item);
      if (!name.empty()) grid.species.push_back(name);
    }
  }
  if (lambda_points < 1) throw ConfigError("lambda_points must be >= 1");
  if (d_points < 1) throw ConfigError("d_points must be >= 1");
  for (int i = 0; i < lambda_points; ++i) {
    double v;
    if (lambda_points == 1) {
      v = lambda_min_nm;
    } else if (lambda_scale == "log") {
      const double f = static_cast<double>(i) / (lambda_points - 1);
      v = lambda_min_nm * std::pow(lambda_max_nm / lambda_min_nm, f);
    } else {
      const double f = static_cast<double>(i) / (lambda_points - 1);
      v = lambda_min_nm + f * (lambda_max_nm - lambda_min_nm);
    }
    grid.wavelengths.push_back(nm(v));
  }
  for (int i = 0; i < d_points; ++i) {
    const double f = d_points == 1 ? 0.0 : static_cast<double>(i) / (d_points - 1);
    grid.thicknesses.push_back(nm(d_min_nm + f * (d_max_nm - d_min_nm)));
  }
  for (double r : parse_double_list(R_list_nm)) grid.radii.push_back(nm(r));
  return grid;
}

DiffractionSetup RunConfig::make_diffraction_setup() const {
  return DiffractionSetup(L1_m, L2_um * 1e-6, make_beam().wavenumber());
}

ReductionModel RunConfig::reduction_model() const { return reduction_model_from_string(model); }

int RunConfig::effective_threads() const {
  int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* cap_env = std::getenv("HOLEFLUX_THREADS")) {
    try {
      const int cap = std::stoi(cap_env);
      if (cap >= 1) n = std::min(n, cap);
    } catch (const std::exception&) {
      throw ConfigError("HOLEFLUX_THREADS is not an integer");
    }
  }
  return n;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string value = trim(item);
    if (value.empty()) continue;
    out.push_back(parse_double("list", value));
  }
  if (out.empty()) throw ConfigError("empty numeric list '" + csv + "'");
  return out;
}

}  // namespace holeflux
