#include "dasqa/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace dasqa {

std::string_view to_string(ResonatorMode mode) {
  return mode == ResonatorMode::Half ? "half" : "quarter";
}

std::string_view to_string(InversionMode mode) {
  return mode == InversionMode::FixedGap ? "fixed_gap" : "free";
}

namespace {

void require(bool ok, const std::string& key, const std::string& why) {
  if (!ok) {
    throw ConfigError("invalid config key '" + key + "': " + why);
  }
}

void reject_unknown(const YAML::Node& node, const std::string& section,
                    const std::set<std::string>& known) {
  if (!node.IsMap()) {
    throw ConfigError("config section '" + section + "' must be a mapping");
  }
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!known.contains(key)) {
      throw ConfigError("unknown config key '" +
                        (section.empty() ? key : section + "." + key) + "'");
    }
  }
}

template <typename T>
void read(const YAML::Node& section, const std::string& section_name,
          const char* key, T& out) {
  const auto node = section[key];
  if (!node) {
    return;
  }
  try {
    out = node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("invalid config key '" + section_name + "." + key +
                      "': wrong type");
  }
}

template <typename T>
void read(const YAML::Node& section, const std::string& section_name,
          const char* key, std::optional<T>& out) {
  const auto node = section[key];
  if (!node || node.IsNull()) {
    return;
  }
  T value{};
  read(section, section_name, key, value);
  out = value;
}

} // namespace

void DesignConfig::validate() const {
  if (grid.rows) {
    require(*grid.rows > 0, "grid.rows", "must be positive");
  }
  if (grid.cols) {
    require(*grid.cols > 0, "grid.cols", "must be positive");
  }
  require(grid.max_degree >= 0, "grid.max_degree", "must be non-negative");

  const auto& f = frequency;
  require(std::isfinite(f.band_lo_ghz) && f.band_lo_ghz > 0,
          "frequency.band_lo_ghz", "must be positive");
  require(f.band_lo_ghz < f.band_hi_ghz, "frequency.band_hi_ghz",
          "must exceed band_lo_ghz");
  require(f.step_ghz > 0, "frequency.step_ghz", "must be positive");
  require(f.min_adjacent_detuning_ghz >= 0,
          "frequency.min_adjacent_detuning_ghz", "must be non-negative");
  require(f.min_next_detuning_ghz >= 0, "frequency.min_next_detuning_ghz",
          "must be non-negative");

  const auto& l = layout;
  require(l.pitch_um > 0, "layout.pitch_um", "must be positive");
  require(l.margin_um > 0, "layout.margin_um", "must be positive");
  require(l.epsilon_eff >= 1, "layout.epsilon_eff", "must be >= 1");
  require(l.readout_detuning_ghz >= 0, "layout.readout_detuning_ghz",
          "must be non-negative");
  require(!l.coupling_freq_lattice_ghz.empty(),
          "layout.coupling_freq_lattice_ghz", "must not be empty");
  for (double v : l.coupling_freq_lattice_ghz) {
    require(v > 0, "layout.coupling_freq_lattice_ghz",
            "entries must be positive");
  }
  require(l.meander_amplitude_um > 0, "layout.meander_amplitude_um",
          "must be positive");
  require(l.readout_meander_amplitude_um > 0,
          "layout.readout_meander_amplitude_um", "must be positive");

  require(geometry.poly_degree >= 0, "geometry.poly_degree",
          "must be non-negative");
}

DesignConfig parse_config(std::string_view yaml_text,
                          const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed YAML: ") + e.what());
  }

  DesignConfig cfg;
  if (!root || root.IsNull()) {
    return cfg;
  }
  reject_unknown(root, "",
                 {"grid", "frequency", "layout", "geometry", "targets"});

  if (const auto g = root["grid"]) {
    reject_unknown(g, "grid",
                   {"rows", "cols", "max_degree", "include_idle_edges"});
    read(g, "grid", "rows", cfg.grid.rows);
    read(g, "grid", "cols", cfg.grid.cols);
    read(g, "grid", "max_degree", cfg.grid.max_degree);
    read(g, "grid", "include_idle_edges", cfg.grid.include_idle_edges);
  }
  if (const auto f = root["frequency"]) {
    reject_unknown(f, "frequency",
                   {"band_lo_ghz", "band_hi_ghz", "step_ghz",
                    "min_adjacent_detuning_ghz", "min_next_detuning_ghz"});
    auto& fc = cfg.frequency;
    read(f, "frequency", "band_lo_ghz", fc.band_lo_ghz);
    read(f, "frequency", "band_hi_ghz", fc.band_hi_ghz);
    read(f, "frequency", "step_ghz", fc.step_ghz);
    read(f, "frequency", "min_adjacent_detuning_ghz",
         fc.min_adjacent_detuning_ghz);
    read(f, "frequency", "min_next_detuning_ghz", fc.min_next_detuning_ghz);
  }
  if (const auto l = root["layout"]) {
    reject_unknown(l, "layout",
                   {"pitch_um", "margin_um", "epsilon_eff", "resonator_mode",
                    "readout_detuning_ghz", "coupling_freq_lattice_ghz",
                    "meander_amplitude_um", "readout_meander_amplitude_um"});
    auto& lc = cfg.layout;
    read(l, "layout", "pitch_um", lc.pitch_um);
    read(l, "layout", "margin_um", lc.margin_um);
    read(l, "layout", "epsilon_eff", lc.epsilon_eff);
    std::string mode{to_string(lc.resonator_mode)};
    read(l, "layout", "resonator_mode", mode);
    if (mode == "half") {
      lc.resonator_mode = ResonatorMode::Half;
    } else if (mode == "quarter") {
      lc.resonator_mode = ResonatorMode::Quarter;
    } else {
      throw ConfigError("invalid config key 'layout.resonator_mode': '" + mode +
                        "' is not one of {half, quarter}");
    }
    read(l, "layout", "readout_detuning_ghz", lc.readout_detuning_ghz);
    if (const auto lattice = l["coupling_freq_lattice_ghz"];
        lattice && lattice.IsScalar()) {
      double single = 0;
      read(l, "layout", "coupling_freq_lattice_ghz", single);
      lc.coupling_freq_lattice_ghz = {single};
    } else {
      read(l, "layout", "coupling_freq_lattice_ghz",
           lc.coupling_freq_lattice_ghz);
    }
    read(l, "layout", "meander_amplitude_um", lc.meander_amplitude_um);
    read(l, "layout", "readout_meander_amplitude_um",
         lc.readout_meander_amplitude_um);
  }
  if (const auto g = root["geometry"]) {
    reject_unknown(g, "geometry", {"dataset_path", "poly_degree", "inversion"});
    read(g, "geometry", "dataset_path", cfg.geometry.dataset_path);
    read(g, "geometry", "poly_degree", cfg.geometry.poly_degree);
    std::string inversion{to_string(cfg.geometry.inversion)};
    read(g, "geometry", "inversion", inversion);
    if (inversion == "fixed_gap") {
      cfg.geometry.inversion = InversionMode::FixedGap;
    } else if (inversion == "free") {
      cfg.geometry.inversion = InversionMode::Free;
    } else {
      throw ConfigError("invalid config key 'geometry.inversion': '" +
                        inversion + "' is not one of {fixed_gap, free}");
    }
    if (!cfg.geometry.dataset_path.empty() && !base_dir.empty()) {
      const std::filesystem::path p(cfg.geometry.dataset_path);
      if (p.is_relative()) {
        cfg.geometry.dataset_path = (base_dir / p).lexically_normal().string();
      }
    }
  }
  if (const auto t = root["targets"]) {
    reject_unknown(t, "targets",
                   {"ej_ec_ratio", "anharmonicity_mhz", "t1_us", "t2_us"});
    read(t, "targets", "ej_ec_ratio", cfg.targets.ej_ec_ratio);
    read(t, "targets", "anharmonicity_mhz", cfg.targets.anharmonicity_mhz);
    read(t, "targets", "t1_us", cfg.targets.t1_us);
    read(t, "targets", "t2_us", cfg.targets.t2_us);
  }

  cfg.validate();
  return cfg;
}

DesignConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file '" + path.string() + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

} // namespace dasqa
