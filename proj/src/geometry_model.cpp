#include "dasqa/geometry_model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace dasqa {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::string format_um(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9gum", v);
  return buf;
}

} // namespace

GeometryDataset parse_geometry_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw GeometryError(GeometryError::Code::InvalidData,
                        "dataset line " + std::to_string(line_no) + ": " + msg);
  };

  bool header = false;
  GeometryDataset data;
  std::map<std::pair<double, double>, double> seen;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (!header) {
      if (line != "pad_gap_um,pad_height_um,frequency_ghz") {
        fail("expected header 'pad_gap_um,pad_height_um,frequency_ghz'");
      }
      header = true;
      continue;
    }
    std::istringstream fields(line);
    std::string cell;
    double values[3];
    int count = 0;
    while (std::getline(fields, cell, ',')) {
      if (count == 3) {
        fail("too many fields");
      }
      try {
        std::size_t used = 0;
        values[count] = std::stod(trim(cell), &used);
        if (used != trim(cell).size()) {
          throw std::invalid_argument(cell);
        }
      } catch (const std::exception&) {
        fail("malformed number '" + cell + "'");
      }
      ++count;
    }
    if (count != 3) {
      fail("expected 3 fields");
    }
    for (double v : values) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        fail("values must be positive");
      }
    }
    const auto key = std::pair{values[0], values[1]};
    if (const auto it = seen.find(key);
        it != seen.end() && it->second != values[2]) {
      fail("conflicting frequency for a repeated geometry");
    }
    seen[key] = values[2];
    data.rows.push_back({values[0], values[1], values[2]});
  }
  if (!header) {
    throw GeometryError(GeometryError::Code::InvalidData, "dataset is empty");
  }
  if (data.rows.empty()) {
    throw GeometryError(GeometryError::Code::InvalidData, "dataset has no rows");
  }
  return data;
}

GeometryDataset load_geometry_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw GeometryError(GeometryError::Code::InvalidData,
                        "cannot read dataset '" + path.string() + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_geometry_csv(text.str());
}

GeometryDataset dataset_for(const DesignConfig& config) {
  if (config.geometry.dataset_path.empty()) {
    return parse_geometry_csv(bundled_geometry_dataset_csv());
  }
  return load_geometry_dataset(config.geometry.dataset_path);
}

std::size_t GeometryModel::coefficient_count(int degree) {
  const auto d = static_cast<std::size_t>(degree);
  return (d + 1) * (d + 2) / 2;
}

std::vector<std::pair<int, int>> GeometryModel::exponents(int degree) {
  std::vector<std::pair<int, int>> out;
  for (int total = 0; total <= degree; ++total) {
    for (int g = total; g >= 0; --g) {
      out.emplace_back(g, total - g);
    }
  }
  return out;
}

double GeometryModel::evaluate(double gap_um, double height_um) const {
  const auto exps = exponents(degree);
  double f = 0.0;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    f += coefficients[k] * std::pow(gap_um, exps[k].first) *
         std::pow(height_um, exps[k].second);
  }
  return f;
}

GeometryModel fit_model(const GeometryDataset& data, int degree) {
  if (degree < 0) {
    throw GeometryError(GeometryError::Code::InvalidData,
                        "polynomial degree must be non-negative");
  }
  const std::size_t terms = GeometryModel::coefficient_count(degree);
  const std::size_t n = data.rows.size();
  if (n < terms) {
    throw GeometryError(GeometryError::Code::Underdetermined,
                        "degree " + std::to_string(degree) + " needs " +
                            std::to_string(terms) + " rows, dataset has " +
                            std::to_string(n));
  }

  GeometryModel model;
  model.degree = degree;
  model.gap_bounds = {data.rows[0].pad_gap_um, data.rows[0].pad_gap_um};
  model.height_bounds = {data.rows[0].pad_height_um, data.rows[0].pad_height_um};
  for (const auto& r : data.rows) {
    model.gap_bounds.min = std::min(model.gap_bounds.min, r.pad_gap_um);
    model.gap_bounds.max = std::max(model.gap_bounds.max, r.pad_gap_um);
    model.height_bounds.min = std::min(model.height_bounds.min, r.pad_height_um);
    model.height_bounds.max = std::max(model.height_bounds.max, r.pad_height_um);
  }
  const bool gap_varies = model.gap_bounds.max > model.gap_bounds.min;
  const bool height_varies = model.height_bounds.max > model.height_bounds.min;

  const auto exps = GeometryModel::exponents(degree);
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if ((exps[k].first == 0 || gap_varies) && (exps[k].second == 0 || height_varies)) {
      active.push_back(k);
    }
  }

  Eigen::MatrixXd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(active.size()));
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = data.rows[i];
    for (std::size_t c = 0; c < active.size(); ++c) {
      const auto [gp, hp] = exps[active[c]];
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          std::pow(r.pad_gap_um, gp) * std::pow(r.pad_height_um, hp);
    }
    y(static_cast<Eigen::Index>(i)) = r.frequency_ghz;
  }
  const Eigen::VectorXd scale = a.cwiseAbs().colwise().maxCoeff().transpose();
  const Eigen::MatrixXd scaled = a * scale.cwiseInverse().asDiagonal();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  qr.setThreshold(1e-10);
  if (qr.rank() < static_cast<Eigen::Index>(active.size())) {
    throw GeometryError(GeometryError::Code::RankDeficient,
                        "geometry samples are collinear for degree " +
                            std::to_string(degree));
  }
  const Eigen::VectorXd solution = qr.solve(y).cwiseQuotient(scale);

  model.coefficients.assign(terms, 0.0);
  for (std::size_t c = 0; c < active.size(); ++c) {
    model.coefficients[active[c]] = solution(static_cast<Eigen::Index>(c));
  }
  const Eigen::VectorXd residual = a * solution - y;
  model.residual_norm = residual.norm();
  model.max_abs_residual = residual.cwiseAbs().maxCoeff();
  return model;
}

Prediction predict_frequency(const GeometryModel& model, double gap_um,
                             double height_um) {
  return {model.evaluate(gap_um, height_um),
          !model.gap_bounds.contains(gap_um) || !model.height_bounds.contains(height_um)};
}

namespace {

std::vector<double> lattice(const Interval& bounds, std::size_t points) {
  if (bounds.max <= bounds.min || points < 2) {
    return {bounds.min};
  }
  std::vector<double> out(points);
  for (std::size_t k = 0; k < points; ++k) {
    out[k] = bounds.min + (bounds.max - bounds.min) * static_cast<double>(k) /
                              static_cast<double>(points - 1);
  }
  return out;
}

// Bisection for model(gap, h) == target on [lo, hi], which brackets a root.
double bisect_height(const GeometryModel& model, double gap, double target,
                     double lo, double hi) {
  double f_lo = model.evaluate(gap, lo) - target;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = model.evaluate(gap, mid) - target;
    if (f_mid == 0.0 || hi - lo < 1e-12) {
      return mid;
    }
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct HeightSolve {
  std::optional<double> height;
  double nearest_height = 0.0;
  double nearest_ghz = 0.0;
};

HeightSolve solve_height(const GeometryModel& model, double gap, double target,
                         const std::vector<double>& heights, double tolerance) {
  HeightSolve out;
  double best = INFINITY;
  double prev_r = 0.0;
  for (std::size_t k = 0; k < heights.size(); ++k) {
    const double f = model.evaluate(gap, heights[k]);
    const double r = f - target;
    if (std::abs(r) < best) {
      best = std::abs(r);
      out.nearest_height = heights[k];
      out.nearest_ghz = f;
    }
    if (r == 0.0) {
      out.height = heights[k];
      return out;
    }
    if (k > 0 && (r < 0) != (prev_r < 0)) {
      out.height = bisect_height(model, gap, target, heights[k - 1], heights[k]);
      return out;
    }
    prev_r = r;
  }
  if (best <= tolerance) {
    out.height = out.nearest_height;
  }
  return out;
}

[[noreturn]] void unreachable(double target, double nearest) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "target %.9g GHz unreachable within the training bounds; "
                "nearest achievable %.9g GHz",
                target, nearest);
  throw GeometryError(GeometryError::Code::TargetUnreachable, buf, nearest);
}

} // namespace

PadGeometry invert_for_geometry(const GeometryModel& model, double f_target_ghz,
                                std::optional<double> fixed_gap_um,
                                const InversionOptions& options) {
  if (!std::isfinite(f_target_ghz)) {
    throw GeometryError(GeometryError::Code::InvalidData, "target is not finite");
  }
  const auto heights = lattice(model.height_bounds, options.lattice);

  if (fixed_gap_um) {
    const auto solve = solve_height(model, *fixed_gap_um, f_target_ghz, heights,
                                    options.tolerance_ghz);
    if (!solve.height) {
      unreachable(f_target_ghz, solve.nearest_ghz);
    }
    return {*fixed_gap_um, *solve.height};
  }

  const auto gaps = lattice(model.gap_bounds, options.lattice);
  double best = INFINITY;
  std::size_t best_g = 0;
  std::size_t best_h = 0;
  double best_f = 0.0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    for (std::size_t k = 0; k < heights.size(); ++k) {
      const double f = model.evaluate(gaps[i], heights[k]);
      if (std::abs(f - f_target_ghz) < best) {
        best = std::abs(f - f_target_ghz);
        best_g = i;
        best_h = k;
        best_f = f;
      }
    }
  }
  const double gap = gaps[best_g];
  // Refine on the lattice cells next to the minimizer first.
  const std::size_t lo = best_h == 0 ? 0 : best_h - 1;
  const std::size_t hi = std::min(best_h + 1, heights.size() - 1);
  const std::vector<double> local(heights.begin() + static_cast<std::ptrdiff_t>(lo),
                                  heights.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
  auto solve = solve_height(model, gap, f_target_ghz, local, options.tolerance_ghz);
  if (!solve.height) {
    solve = solve_height(model, gap, f_target_ghz, heights, options.tolerance_ghz);
  }
  if (!solve.height) {
    unreachable(f_target_ghz, best_f);
  }
  return {gap, *solve.height};
}

std::size_t OptimizationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(
      qubits.begin(), qubits.end(), [](const auto& q) { return !q.ok; }));
}

OptimizationReport optimize_layout(LayoutDocument& layout,
                                   const std::vector<double>& frequencies,
                                   const DesignConfig& config,
                                   const GeometryModel& model) {
  OptimizationReport report;
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    const int q = static_cast<int>(i);
    const auto name = transmon_name(q);
    const Component* transmon = layout.find(name);
    if (transmon == nullptr || transmon->kind != ComponentKind::Transmon) {
      throw LayoutError(LayoutError::Code::UnknownComponent,
                        "layout has no transmon '" + name + "'");
    }
    QubitGeometryResult result;
    result.qubit = q;
    result.component = name;
    result.target_ghz = frequencies[i];
    try {
      std::optional<double> fixed_gap;
      if (config.geometry.inversion == InversionMode::FixedGap) {
        fixed_gap = transmon->options.at("pad_gap").micrometers();
      }
      const auto geometry = invert_for_geometry(model, frequencies[i], fixed_gap);
      layout.update_component(name, "pad_gap", format_um(geometry.pad_gap_um));
      layout.update_component(name, "pad_height", format_um(geometry.pad_height_um));

      const Component* updated = layout.find(name);
      result.pad_gap_um = updated->options.at("pad_gap").micrometers();
      result.pad_height_um = updated->options.at("pad_height").micrometers();
      const auto prediction =
          predict_frequency(model, result.pad_gap_um, result.pad_height_um);
      result.achieved_ghz = prediction.frequency_ghz;
      result.out_of_range = prediction.out_of_range;
      result.ok = true;
    } catch (const GeometryError& e) {
      result.error = e.what();
    } catch (const LayoutError& e) {
      result.error = e.what();
    }
    report.qubits.push_back(std::move(result));
  }
  return report;
}

} // namespace dasqa
