#include "support.hpp"

#include "dasqa/geometry_model.hpp"
#include "dasqa/layout.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace dasqa;

namespace {

// f = 6.5 - 0.01 * height, gap fixed at 30 um, height 50..145.
GeometryDataset linear_dataset() {
  GeometryDataset data;
  for (int i = 0; i < 20; ++i) {
    const double h = 50.0 + 5.0 * i;
    data.rows.push_back({30.0, h, 6.5 - 0.01 * h});
  }
  return data;
}

GeometryDataset with_endpoint(GeometryDataset data, double h) {
  data.rows.push_back({30.0, h, 6.5 - 0.01 * h});
  return data;
}

double bundled_truth(double gap, double height) {
  return 7.2 - 0.012 * height - 0.004 * gap + 1.5e-5 * height * height;
}

LayoutDocument star_layout() {
  return build_layout(test::star_architecture({5.09, 5.11, 5.13, 5.15, 5.0}),
                      DesignConfig{});
}

} // namespace

TEST(Dataset, BundledParses) {
  const auto data = parse_geometry_csv(bundled_geometry_dataset_csv());
  EXPECT_EQ(data.rows.size(), 121u);
  for (const auto& r : data.rows) {
    EXPECT_NEAR(r.frequency_ghz, bundled_truth(r.pad_gap_um, r.pad_height_um), 1e-9);
  }
}

TEST(Dataset, Rejections) {
  EXPECT_THROW(parse_geometry_csv(""), GeometryError);
  EXPECT_THROW(parse_geometry_csv("gap,height,f\n1,2,3\n"), GeometryError);
  EXPECT_THROW(parse_geometry_csv("pad_gap_um,pad_height_um,frequency_ghz\n"), GeometryError);
  EXPECT_THROW(parse_geometry_csv("pad_gap_um,pad_height_um,frequency_ghz\n1,2\n"),
               GeometryError);
  EXPECT_THROW(parse_geometry_csv("pad_gap_um,pad_height_um,frequency_ghz\n1,-2,3\n"),
               GeometryError);
  EXPECT_THROW(parse_geometry_csv("pad_gap_um,pad_height_um,frequency_ghz\n1,2,x\n"),
               GeometryError);
  EXPECT_THROW(
      parse_geometry_csv("pad_gap_um,pad_height_um,frequency_ghz\n1,2,3\n1,2,4\n"),
      GeometryError);
  EXPECT_NO_THROW(
      parse_geometry_csv("pad_gap_um,pad_height_um,frequency_ghz\n1,2,3\n1,2,3\n"));
}

TEST(Fit, LinearFixedGap) {
  const auto model = fit_model(linear_dataset(), 1);
  ASSERT_EQ(model.coefficients.size(), 3u);
  EXPECT_NEAR(model.coefficients[0], 6.5, 1e-6);
  EXPECT_NEAR(model.coefficients[1], 0.0, 1e-6);
  EXPECT_NEAR(model.coefficients[2], -0.01, 1e-6);
  EXPECT_LT(model.residual_norm, 1e-9);
}

TEST(Fit, DegreeZeroIsMean) {
  const auto data = linear_dataset();
  double mean = 0.0;
  for (const auto& r : data.rows) {
    mean += r.frequency_ghz;
  }
  mean /= static_cast<double>(data.rows.size());
  const auto model = fit_model(data, 0);
  ASSERT_EQ(model.coefficients.size(), 1u);
  EXPECT_NEAR(model.coefficients[0], mean, 1e-12);
}

TEST(Fit, Underdetermined) {
  GeometryDataset data;
  data.rows = {{10, 50, 6}, {20, 60, 5.9}, {30, 70, 5.8}};
  try {
    fit_model(data, 2);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), GeometryError::Code::Underdetermined);
  }
}

TEST(Fit, RankDeficient) {
  GeometryDataset data;
  for (int i = 0; i < 8; ++i) {
    data.rows.push_back({10.0 + i, 50.0 + 2 * i, 6.0 - 0.01 * i});
  }
  try {
    fit_model(data, 1);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), GeometryError::Code::RankDeficient);
  }
}

TEST(Fit, BundledRecoversGenerator) {
  const auto model = fit_model(parse_geometry_csv(bundled_geometry_dataset_csv()), 2);
  const std::vector<double> truth = {7.2, -0.004, -0.012, 0.0, 0.0, 1.5e-5};
  ASSERT_EQ(model.coefficients.size(), truth.size());
  for (std::size_t k = 0; k < truth.size(); ++k) {
    EXPECT_NEAR(model.coefficients[k], truth[k], 1e-6) << k;
  }
}

TEST(Fit, BasisOrder) {
  EXPECT_EQ(GeometryModel::exponents(2),
            (std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}));
  EXPECT_EQ(GeometryModel::coefficient_count(3), 10u);
}

TEST(Predict, Examples) {
  const auto model = fit_model(linear_dataset(), 1);
  const auto p = predict_frequency(model, 30.0, 100.0);
  EXPECT_NEAR(p.frequency_ghz, 5.5, 1e-9);
  EXPECT_FALSE(p.out_of_range);
  EXPECT_NEAR(predict_frequency(model, 30.0, 75.0).frequency_ghz, 5.75, 1e-6);
  const auto outside = predict_frequency(model, 30.0, 400.0);
  EXPECT_TRUE(outside.out_of_range);
  EXPECT_NEAR(outside.frequency_ghz, 2.5, 1e-6);
}

TEST(Invert, FixedGapLinear) {
  const auto model = fit_model(linear_dataset(), 1);
  const auto g = invert_for_geometry(model, 5.5, 30.0);
  EXPECT_EQ(g.pad_gap_um, 30.0);
  EXPECT_NEAR(g.pad_height_um, 100.0, 1e-3);
}

TEST(Invert, FreeRecoversTrainingRow) {
  const auto model = fit_model(linear_dataset(), 1);
  const auto g = invert_for_geometry(model, 6.5 - 0.01 * 120.0, std::nullopt);
  EXPECT_EQ(g.pad_gap_um, 30.0);
  EXPECT_NEAR(g.pad_height_um, 120.0, 0.95);
}

TEST(Invert, UnreachableReportsNearest) {
  const auto model = fit_model(with_endpoint(linear_dataset(), 150.0), 1);
  ASSERT_EQ(model.height_bounds.max, 150.0);
  try {
    invert_for_geometry(model, 50.0, 30.0);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), GeometryError::Code::TargetUnreachable);
    ASSERT_TRUE(e.nearest_ghz().has_value());
    EXPECT_NEAR(*e.nearest_ghz(), 6.0, 1e-9);
    EXPECT_NE(std::string(e.what()).find("nearest achievable 6 GHz"), std::string::npos);
  }
  EXPECT_THROW(invert_for_geometry(model, 50.0, std::nullopt), GeometryError);
}

TEST(Invert, BundledFreeMode) {
  const auto model = fit_model(parse_geometry_csv(bundled_geometry_dataset_csv()), 2);
  for (double f : {5.0, 5.1, 5.27, 5.9}) {
    const auto g = invert_for_geometry(model, f, std::nullopt);
    EXPECT_NEAR(model.evaluate(g.pad_gap_um, g.pad_height_um), f, 1e-6);
    EXPECT_TRUE(model.gap_bounds.contains(g.pad_gap_um));
    EXPECT_TRUE(model.height_bounds.contains(g.pad_height_um));
  }
}

TEST(Optimize, StarPublishedVector) {
  auto doc = star_layout();
  const auto model = fit_model(parse_geometry_csv(bundled_geometry_dataset_csv()), 2);
  const std::vector<double> targets = {5.06, 5.24, 5.08, 5.27, 5.17};
  const auto report = optimize_layout(doc, targets, DesignConfig{}, model);
  ASSERT_EQ(report.qubits.size(), 5u);
  EXPECT_EQ(report.failures(), 0u);
  for (std::size_t i = 0; i < 5; ++i) {
    const auto& q = report.qubits[i];
    EXPECT_TRUE(q.ok);
    EXPECT_NEAR(q.achieved_ghz, targets[i], 1e-3);
    const auto& opts = doc.find(q.component)->options;
    EXPECT_EQ(opts.at("pad_height").micrometers(), q.pad_height_um);
    EXPECT_EQ(opts.at("pad_gap").micrometers(), 30.0);
  }
  EXPECT_NO_THROW(doc.check_invariants());
}

TEST(Optimize, EmptyIsNoOp) {
  LayoutDocument doc;
  const auto model = fit_model(linear_dataset(), 1);
  const auto report = optimize_layout(doc, {}, DesignConfig{}, model);
  EXPECT_TRUE(report.qubits.empty());
  EXPECT_EQ(doc, LayoutDocument{});
}

TEST(Optimize, OneUnreachableTarget) {
  auto doc = star_layout();
  const auto before = *doc.find("Q_3");
  // surrogate spans 5.05 .. 6.0 GHz
  const auto model = fit_model(with_endpoint(linear_dataset(), 150.0), 1);
  const auto report =
      optimize_layout(doc, {5.5, 5.6, 5.7, 4.0, 5.8}, DesignConfig{}, model);
  EXPECT_EQ(report.failures(), 1u);
  EXPECT_FALSE(report.qubits[3].ok);
  EXPECT_NE(report.qubits[3].error.find("nearest"), std::string::npos);
  EXPECT_EQ(*doc.find("Q_3"), before);
  for (std::size_t i : {0u, 1u, 2u, 4u}) {
    EXPECT_TRUE(report.qubits[i].ok);
  }
}

TEST(Optimize, FreeModeUpdatesGap) {
  auto doc = star_layout();
  DesignConfig cfg;
  cfg.geometry.inversion = InversionMode::Free;
  const auto model = fit_model(parse_geometry_csv(bundled_geometry_dataset_csv()), 2);
  const auto report = optimize_layout(doc, {5.06, 5.24, 5.08, 5.27, 5.17}, cfg, model);
  EXPECT_EQ(report.failures(), 0u);
  for (const auto& q : report.qubits) {
    EXPECT_NEAR(q.achieved_ghz, q.target_ghz, 1e-3);
  }
}

TEST(Optimize, MissingTransmon) {
  auto doc = star_layout();
  const auto model = fit_model(linear_dataset(), 1);
  EXPECT_THROW(optimize_layout(doc, std::vector<double>(6, 5.5), DesignConfig{}, model),
               LayoutError);
}
