#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dasqa {

enum class ResonatorMode { Half, Quarter };
enum class InversionMode { FixedGap, Free };

std::string_view to_string(ResonatorMode mode);
std::string_view to_string(InversionMode mode);

struct GridConfig {
  // Unset dimensions resolve to the smallest square grid holding all qubits.
  std::optional<int> rows;
  std::optional<int> cols;
  int max_degree = 4;
  bool include_idle_edges = false;
};

struct FrequencyConfig {
  double band_lo_ghz = 5.00;
  double band_hi_ghz = 5.30;
  double step_ghz = 0.01;
  double min_adjacent_detuning_ghz = 0.09;
  double min_next_detuning_ghz = 0.02;
};

struct LayoutConfig {
  double pitch_um = 2000.0;
  double margin_um = 2000.0;
  double epsilon_eff = 6.45;
  ResonatorMode resonator_mode = ResonatorMode::Half;
  double readout_detuning_ghz = 1.0;
  std::vector<double> coupling_freq_lattice_ghz = {7.0, 7.1, 7.2, 7.3, 7.4,
                                                   7.5, 7.6, 7.7, 7.8, 7.9};
  double meander_amplitude_um = 300.0;
  double readout_meander_amplitude_um = 150.0;
};

struct GeometryConfig {
  // Empty selects the bundled dataset. Relative paths resolve against the
  // config file's directory.
  std::string dataset_path;
  int poly_degree = 2;
  InversionMode inversion = InversionMode::FixedGap;
};

/// Carried into reports; the surrogate does not consume these.
struct TargetConfig {
  std::optional<double> ej_ec_ratio;
  std::optional<double> anharmonicity_mhz;
  std::optional<double> t1_us;
  std::optional<double> t2_us;
};

struct DesignConfig {
  GridConfig grid;
  FrequencyConfig frequency;
  LayoutConfig layout;
  GeometryConfig geometry;
  TargetConfig targets;

  /// Throws ConfigError naming the first violated key.
  void validate() const;
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses YAML text. Missing keys keep their defaults; unknown keys are
/// rejected.
DesignConfig parse_config(std::string_view yaml_text,
                          const std::filesystem::path& base_dir = {});

DesignConfig load_config(const std::filesystem::path& path);

} // namespace dasqa
