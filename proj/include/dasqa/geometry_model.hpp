#pragma once

#include "dasqa/config.hpp"
#include "dasqa/layout.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dasqa {

/// Simulated transmon samples: pad geometry (um) -> qubit frequency (GHz).
struct GeometryDataset {
  struct Row {
    double pad_gap_um = 0.0;
    double pad_height_um = 0.0;
    double frequency_ghz = 0.0;
  };
  std::vector<Row> rows;
};

class GeometryError : public std::runtime_error {
public:
  enum class Code {
    InvalidData,
    Underdetermined,
    RankDeficient,
    TargetUnreachable,
  };

  GeometryError(Code code, const std::string& message,
                std::optional<double> nearest_ghz = std::nullopt)
      : std::runtime_error(message), code_(code), nearest_ghz_(nearest_ghz) {}

  [[nodiscard]] Code code() const { return code_; }
  /// Closest frequency the model reaches, for TargetUnreachable.
  [[nodiscard]] std::optional<double> nearest_ghz() const { return nearest_ghz_; }

private:
  Code code_;
  std::optional<double> nearest_ghz_;
};

/// CSV with header `pad_gap_um,pad_height_um,frequency_ghz`.
GeometryDataset parse_geometry_csv(std::string_view text);
GeometryDataset load_geometry_dataset(const std::filesystem::path& path);
std::string_view bundled_geometry_dataset_csv();

struct Interval {
  double min = 0.0;
  double max = 0.0;
  [[nodiscard]] bool contains(double v) const { return v >= min && v <= max; }
};

/// Polynomial surrogate f(gap, height) over the monomials gap^i * height^j,
/// i + j <= degree, ordered by total degree then descending gap power:
/// 1, g, h, g^2, g*h, h^2, ...
struct GeometryModel {
  int degree = 0;
  std::vector<double> coefficients;
  Interval gap_bounds;
  Interval height_bounds;
  double residual_norm = 0.0;
  double max_abs_residual = 0.0;

  static std::size_t coefficient_count(int degree);
  /// (gap power, height power) of each coefficient.
  static std::vector<std::pair<int, int>> exponents(int degree);

  [[nodiscard]] double evaluate(double gap_um, double height_um) const;
};

/// Least-squares fit on column-scaled monomials. Monomials in a variable that
/// is constant across the data are pinned to zero.
GeometryModel fit_model(const GeometryDataset& data, int degree);

struct Prediction {
  double frequency_ghz = 0.0;
  bool out_of_range = false;
};

Prediction predict_frequency(const GeometryModel& model, double gap_um,
                             double height_um);

struct PadGeometry {
  double pad_gap_um = 0.0;
  double pad_height_um = 0.0;
};

struct InversionOptions {
  std::size_t lattice = 101;
  double tolerance_ghz = 1e-6;
};

/// Geometry whose predicted frequency hits f_target. With a fixed gap the
/// height is bracketed on a lattice over the training bounds and bisected;
/// otherwise a gap x height lattice search is refined by bisection on
/// height. Throws GeometryError(TargetUnreachable) with the nearest
/// achievable frequency.
PadGeometry invert_for_geometry(const GeometryModel& model, double f_target_ghz,
                                std::optional<double> fixed_gap_um,
                                const InversionOptions& options = {});

struct QubitGeometryResult {
  int qubit = 0;
  std::string component;
  double target_ghz = 0.0;
  bool ok = false;
  double achieved_ghz = 0.0;
  double pad_gap_um = 0.0;
  double pad_height_um = 0.0;
  bool out_of_range = false;
  std::string error;
};

struct OptimizationReport {
  std::vector<QubitGeometryResult> qubits;
  [[nodiscard]] std::size_t failures() const;
};

/// Tunes each transmon Q_i to frequencies[i] through update_component.
/// Unreachable targets are reported and skipped.
OptimizationReport optimize_layout(LayoutDocument& layout,
                                   const std::vector<double>& frequencies,
                                   const DesignConfig& config,
                                   const GeometryModel& model);

/// Dataset named by the config, or the bundled one.
GeometryDataset dataset_for(const DesignConfig& config);

} // namespace dasqa
