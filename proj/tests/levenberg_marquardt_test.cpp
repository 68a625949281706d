#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lexstat/error.hpp"
#include "lexstat/fitlab/levenberg_marquardt.hpp"

using namespace lexstat;
using namespace lexstat::fitlab;

namespace {

std::vector<DataPoint> sample(ModelId id, const std::vector<double>& p, const std::vector<double>& xs,
                              double noise = 0.0, std::uint64_t seed = 0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> eps(0.0, 1.0);
  std::vector<DataPoint> out;
  for (double x : xs) out.push_back({x, model_eval(id, p, x) * (1.0 + noise * eps(rng)), 1.0});
  return out;
}

std::vector<double> range(double lo, double hi, double step = 1.0) {
  std::vector<double> out;
  for (double x = lo; x <= hi + 1e-12; x += step) out.push_back(x);
  return out;
}

double sse_of(ModelId id, const std::vector<double>& p, const std::vector<DataPoint>& data) {
  double s = 0.0;
  for (const auto& d : data) {
    const double r = d.y - Model::get(id).eval_raw(p, d.x);
    s += d.weight * r * r;
  }
  return s;
}

}  // namespace

TEST(LevenbergMarquardt, NoiselessZipfPowerRecovery) {
  const auto data = sample(ModelId::ZipfPower, {50.0, 1.2}, range(1, 50));
  const auto fit = lm_fit(Model::get(ModelId::ZipfPower), data, {40.0, 1.0});
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.value("A"), 50.0, 50.0 * 1e-9);
  EXPECT_NEAR(fit.value("z"), 1.2, 1.2 * 1e-9);
  EXPECT_LT(fit.sse, 1e-18);
}

TEST(LevenbergMarquardt, NoiselessMeanSyllablePowerRecovery) {
  const std::vector<double> truth{1.984, 1.464, -1.119};
  const auto data = sample(ModelId::MeanSyllablePower, truth, range(1, 6));
  const auto& m = Model::get(ModelId::MeanSyllablePower);
  const auto fit = lm_fit(m, data, default_initial_params(m.id(), data));
  EXPECT_TRUE(fit.converged);
  for (std::size_t j = 0; j < truth.size(); ++j) {
    EXPECT_LE(std::fabs(fit.params[j].value - truth[j]) / std::fabs(truth[j]), 1e-6) << fit.params[j].name;
  }
}

TEST(LevenbergMarquardt, DerivedNormalizationFollowsFittedShape) {
  const std::vector<double> truth{0.6347, 0.02579};
  const auto data = sample(ModelId::PhonemeGamma, truth, range(1, 20));
  const auto& m = Model::get(ModelId::PhonemeGamma);
  const auto fit = lm_fit(m, data, default_initial_params(m.id(), data));
  ASSERT_EQ(fit.derived.size(), 1u);
  EXPECT_EQ(fit.derived[0].name, "A");
  EXPECT_DOUBLE_EQ(fit.derived[0].value, normalization_constant(m.id(), fit.values()));
  EXPECT_EQ(fit.params.size(), 2u);
}

TEST(LevenbergMarquardt, NoisyPhonemeGammaAgreesWithGridSearch) {
  const std::vector<double> truth{0.6347, 0.02579};
  const auto& m = Model::get(ModelId::PhonemeGamma);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto data = sample(m.id(), truth, range(1, 20), 0.01, seed);
    const auto fit = lm_fit(m, data, default_initial_params(m.id(), data));
    ASSERT_TRUE(fit.converged);
    // dense grid over (b, α) around the truth
    const int steps = 400;
    const double b_lo = 0.45, b_hi = 0.85, a_lo = 0.020, a_hi = 0.032;
    double best = std::numeric_limits<double>::infinity(), best_b = 0.0, best_a = 0.0;
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; j <= steps; ++j) {
        const double b = b_lo + (b_hi - b_lo) * i / steps, a = a_lo + (a_hi - a_lo) * j / steps;
        const double s = sse_of(m.id(), {b, a}, data);
        if (s < best) {
          best = s;
          best_b = b;
          best_a = a;
        }
      }
    }
    EXPECT_LE(fit.sse, best * (1.0 + 1e-12));
    EXPECT_NEAR(fit.value("b"), best_b, 2.0 * (b_hi - b_lo) / steps);
    EXPECT_NEAR(fit.value("alpha"), best_a, 2.0 * (a_hi - a_lo) / steps);
  }
}

TEST(LevenbergMarquardt, SingularSystemReportsNonConvergence) {
  // every point at r = 1 leaves z unidentifiable
  const std::vector<DataPoint> data{{1.0, 5.0, 1.0}, {1.0, 7.0, 1.0}, {1.0, 6.5, 1.0}};
  FitResult fit;
  ASSERT_NO_THROW(fit = lm_fit(Model::get(ModelId::ZipfPower), data, {1.0, 1.0}));
  EXPECT_FALSE(fit.converged);
  EXPECT_EQ(fit.termination, Termination::Singular);
}

TEST(LevenbergMarquardt, NonFiniteInitialEvaluationIsADomainError) {
  const auto data = sample(ModelId::MeanSyllableExp, {2.0, 0.1, -0.2}, range(1, 5));
  EXPECT_THROW(lm_fit(Model::get(ModelId::MeanSyllableExp), data, {1.0, 0.0, 1000.0}), DomainError);
  EXPECT_THROW(lm_fit(Model::get(ModelId::PhonemeGamma), data, {1.0, -1.0}), DomainError);
}

TEST(LevenbergMarquardt, InputValidation) {
  const auto& m = Model::get(ModelId::ZipfMandelbrot);
  const std::vector<DataPoint> two{{1, 2, 1}, {2, 1, 1}};
  EXPECT_THROW(lm_fit(m, two, {1, 1, 1}), ValidationError);
  const auto data = sample(m.id(), {100, 1, 1}, range(1, 10));
  EXPECT_THROW(lm_fit(m, data, {1, 1}), ValidationError);
  FitOptions bad;
  bad.lambda_up = 0.5;
  EXPECT_THROW(lm_fit(m, data, {1, 1, 1}, bad), ValidationError);
  FitOptions log;
  log.space = ResidualSpace::Log;
  auto negative = data;
  negative[0].y = -1.0;
  EXPECT_THROW(lm_fit(m, negative, {1, 1, 1}, log), ValidationError);
}

TEST(LevenbergMarquardt, ZeroWeightPointsAreIgnored) {
  auto data = sample(ModelId::ZipfPower, {80.0, 0.9}, range(1, 30));
  data[4].y *= 50.0;
  data[4].weight = 0.0;
  const auto fit = lm_fit(Model::get(ModelId::ZipfPower), data, {10.0, 1.0});
  EXPECT_NEAR(fit.value("z"), 0.9, 1e-8);
}

TEST(LevenbergMarquardt, StandardErrorsMatchLinearRegressionFormula) {
  // T = k ln r + T0 is linear in its parameters, so s² (XᵀX)⁻¹ is exact
  const auto data = sample(ModelId::LogCoverage, {0.133, 0.05}, range(10, 200, 5), 0.02, 3);
  const auto fit = lm_fit(Model::get(ModelId::LogCoverage), data, {0.1, 0.0});
  double sx = 0, sxx = 0;
  for (const auto& d : data) {
    sx += std::log(d.x);
    sxx += std::log(d.x) * std::log(d.x);
  }
  const double n = static_cast<double>(data.size());
  const double det = n * sxx - sx * sx;
  const double s2 = fit.sse / (n - 2.0);
  EXPECT_NEAR(fit.params[0].std_error, std::sqrt(s2 * n / det), 1e-6 * std::sqrt(s2 * n / det));
  EXPECT_NEAR(fit.params[1].std_error, std::sqrt(s2 * sxx / det), 1e-6 * std::sqrt(s2 * sxx / det));
  const auto exact = sample(ModelId::LogCoverage, {0.133, 0.05}, {10.0, 20.0});
  const auto fit2 = lm_fit(Model::get(ModelId::LogCoverage), exact, {0.1, 0.0});
  EXPECT_TRUE(std::isnan(fit2.params[0].std_error));
}

TEST(LevenbergMarquardt, ObjectiveIsMonotone) {
  for (const auto id : all_models()) {
    const auto& m = Model::get(id);
    std::vector<double> truth;
    std::vector<double> xs = range(1, 30);
    switch (id) {
      case ModelId::PhonemeGamma: truth = {0.6347, 0.02579}; break;
      case ModelId::ShiftedMenzerath: truth = {5.805, 2.245}; xs = range(0, 10); break;
      case ModelId::MeanSyllablePower: truth = {1.984, 1.464, -1.119}; xs = range(1, 6); break;
      case ModelId::MeanSyllableExp: truth = {2.6, -0.3, 0.06}; xs = range(1, 6); break;
      case ModelId::ZipfPower: truth = {25000, 0.999}; break;
      case ModelId::ZipfMandelbrot: truth = {25000, 1.14, 5.2}; break;
      case ModelId::LogCoverage: truth = {0.133, 0.1}; break;
    }
    const auto data = sample(id, truth, xs, 0.03, 77);
    const auto fit = lm_fit(m, data, default_initial_params(id, data));
    ASSERT_EQ(fit.sse_trace.size(), fit.trajectory.size());
    for (std::size_t i = 1; i < fit.sse_trace.size(); ++i) {
      EXPECT_LT(fit.sse_trace[i], fit.sse_trace[i - 1]) << m.name() << " step " << i;
    }
    EXPECT_GE(fit.sse, 0.0);
    EXPECT_EQ(fit.sse, fit.sse_trace.back());
    if (fit.converged) {
      EXPECT_TRUE(fit.termination == Termination::Gradient || fit.termination == Termination::Step ||
                  fit.termination == Termination::ZeroResidual);
    }
  }
}

TEST(LevenbergMarquardt, ForwardJacobianAgreesWithCentralDifferences) {
  const std::vector<std::pair<ModelId, std::vector<double>>> points{
      {ModelId::PhonemeGamma, {0.6347, 0.02579}}, {ModelId::ShiftedMenzerath, {5.805, 2.245}},
      {ModelId::MeanSyllablePower, {1.984, 1.464, -1.119}}, {ModelId::MeanSyllableExp, {2.6, -0.3, 0.06}},
      {ModelId::ZipfPower, {25000, 0.999}}, {ModelId::ZipfMandelbrot, {25000, 1.14, 5.2}},
      {ModelId::LogCoverage, {0.133, 0.1}}};
  for (const auto& [id, p] : points) {
    std::vector<DataPoint> data;
    for (double x : range(1, 8)) data.push_back({x, 0.0, 1.0});
    const auto J = forward_jacobian(Model::get(id), p, data);
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double h = 1e-5 * std::fabs(p[j]);
      auto up = p, down = p;
      up[j] += h;
      down[j] -= h;
      for (std::size_t i = 0; i < data.size(); ++i) {
        const double central = (model_eval(id, up, data[i].x) - model_eval(id, down, data[i].x)) / (2.0 * h);
        const double fd = J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        EXPECT_LE(std::fabs(fd - central), 1e-4 * std::max(std::fabs(central), 1e-12))
            << to_string(id) << " param " << j << " x " << data[i].x;
      }
    }
  }
}

TEST(LevenbergMarquardt, Deterministic) {
  const auto data = sample(ModelId::ZipfMandelbrot, {25000, 1.14, 5.2}, range(1, 400), 0.05, 11);
  const auto& m = Model::get(ModelId::ZipfMandelbrot);
  const auto a = lm_fit(m, data, default_initial_params(m.id(), data));
  const auto b = lm_fit(m, data, default_initial_params(m.id(), data));
  EXPECT_EQ(a.trajectory, b.trajectory);
  EXPECT_EQ(a.sse_trace, b.sse_trace);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(LevenbergMarquardt, ZipfPowerLogSpaceScaleEquivariance) {
  const auto data = sample(ModelId::ZipfPower, {25000, 0.999}, range(1, 200), 0.05, 21);
  FitOptions log;
  log.space = ResidualSpace::Log;
  log.gradient_tol = 1e-12;
  const auto& m = Model::get(ModelId::ZipfPower);
  const auto base = lm_fit(m, data, default_initial_params(m.id(), data), log);
  for (const double c : {1e-3, 7.5, 1e4}) {
    auto scaled = data;
    for (auto& d : scaled) d.y *= c;
    const auto fit = lm_fit(m, scaled, default_initial_params(m.id(), scaled), log);
    ASSERT_TRUE(fit.converged);
    EXPECT_NEAR(fit.value("z"), base.value("z"), 1e-9);
    EXPECT_NEAR(std::log(fit.value("A")) - std::log(base.value("A")), std::log(c), 1e-9);
  }
}

TEST(LevenbergMarquardt, DefaultInitialParameters) {
  const std::vector<DataPoint> rf{{2, 40, 1}, {1, 100, 1}, {3, 20, 1}};
  EXPECT_EQ(default_initial_params(ModelId::ZipfMandelbrot, rf), (std::vector<double>{100, 1, 1}));
  EXPECT_EQ(default_initial_params(ModelId::ZipfPower, rf), (std::vector<double>{100, 1}));
  const std::vector<DataPoint> w{{1, 0.5, 1}, {3, 0.5, 1}};
  const auto pg = default_initial_params(ModelId::PhonemeGamma, w);
  EXPECT_DOUBLE_EQ(pg[1], 1.0 / 5.0);
  const std::vector<DataPoint> s{{0, 0.25, 1}, {2, 0.75, 1}};
  EXPECT_DOUBLE_EQ(default_initial_params(ModelId::ShiftedMenzerath, s)[0], 1.5);
  const std::vector<DataPoint> cov{{1, 0.1, 1}, {std::exp(2.0), 0.5, 1}};
  const auto lc = default_initial_params(ModelId::LogCoverage, cov);
  EXPECT_DOUBLE_EQ(lc[0], 0.2);
  EXPECT_DOUBLE_EQ(lc[1], 0.1);
}
