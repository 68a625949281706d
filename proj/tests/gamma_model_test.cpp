#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lexstat/error.hpp"
#include "lexstat/fitlab/gamma.hpp"
#include "lexstat/fitlab/model.hpp"
#include "oracles.hpp"

using namespace lexstat;
using namespace lexstat::fitlab;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST(Gamma, ClosedForms) {
  EXPECT_LE(rel(gamma_fn(1.0), 1.0), 1e-10);
  EXPECT_LE(rel(gamma_fn(0.5), std::sqrt(std::numbers::pi)), 1e-10);
  double factorial = 1.0;
  for (int n = 2; n <= 12; ++n) {
    factorial *= n - 1;
    EXPECT_LE(rel(gamma_fn(n), factorial), 1e-10) << n;
  }
}

TEST(Gamma, AgreesWithQuadrature) {
  const double q = oracle::gamma_by_quadrature(6.805);
  EXPECT_LE(rel(gamma_fn(6.805), q), 1e-10);
  EXPECT_LE(rel(q, oracle::gsl_gamma(6.805)), 1e-10);
}

TEST(Gamma, AgreesWithReferenceLibraryOverTheModelRange) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> x(1e-3, 40.0);
  for (int i = 0; i < 2000; ++i) {
    const double v = x(rng);
    EXPECT_LE(rel(gamma_fn(v), oracle::gsl_gamma(v)), 1e-12) << v;
  }
}

TEST(Gamma, DomainErrors) {
  EXPECT_THROW(gamma_fn(0.0), DomainError);
  EXPECT_THROW(gamma_fn(-1.5), DomainError);
  EXPECT_THROW(gamma_fn(std::nan("")), DomainError);
}

TEST(Normalization, UnitParameters) {
  const double p[] = {1.0, 1.0};
  EXPECT_DOUBLE_EQ(normalization_constant(ModelId::PhonemeGamma, p), 2.0);
}

TEST(Normalization, PublishedParametersIntegrateToOne) {
  const double pg[] = {0.6347, 0.02579};
  const double A = normalization_constant(ModelId::PhonemeGamma, pg);
  EXPECT_NEAR(oracle::integrate_0_inf([&](double t) { return A * std::pow(t, pg[0]) * std::exp(-pg[1] * t * t); }),
              1.0, 1e-6);
  const double sm[] = {5.805, 2.245};
  const double B = normalization_constant(ModelId::ShiftedMenzerath, sm);
  EXPECT_NEAR(oracle::integrate_0_inf([&](double t) { return B * std::pow(t, sm[0]) * std::exp(-sm[1] * t); }),
              1.0, 1e-6);
}

TEST(Normalization, RandomShapesIntegrateToOne) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> shape(-0.5, 8.0);
  std::uniform_real_distribution<double> rate(0.05, 4.0);
  for (int i = 0; i < 100; ++i) {
    const double b = shape(rng), a = rate(rng);
    const double p[] = {b, a};
    const double A = normalization_constant(ModelId::PhonemeGamma, p);
    EXPECT_NEAR(oracle::integrate_0_inf([&](double t) { return t == 0.0 ? 0.0 : A * std::pow(t, b) * std::exp(-a * t * t); }),
                1.0, 1e-6)
        << b << " " << a;
    const double B = normalization_constant(ModelId::ShiftedMenzerath, p);
    EXPECT_NEAR(oracle::integrate_0_inf([&](double t) { return t == 0.0 ? 0.0 : B * std::pow(t, b) * std::exp(-a * t); }),
                1.0, 1e-6)
        << b << " " << a;
  }
}

TEST(Normalization, DomainErrors) {
  const double bad_rate[] = {1.0, 0.0};
  const double bad_shape[] = {-1.0, 1.0};
  EXPECT_THROW(normalization_constant(ModelId::PhonemeGamma, bad_rate), DomainError);
  EXPECT_THROW(normalization_constant(ModelId::ShiftedMenzerath, bad_shape), DomainError);
  const double zipf[] = {1.0, 1.0};
  EXPECT_THROW(normalization_constant(ModelId::ZipfPower, zipf), DomainError);
}

TEST(ModelEval, Examples) {
  const double zp[] = {100.0, 1.0};
  EXPECT_DOUBLE_EQ(model_eval(ModelId::ZipfPower, zp, 10.0), 10.0);
  const double zm[] = {25000.0, 1.14, 5.2};
  EXPECT_DOUBLE_EQ(model_eval(ModelId::ZipfMandelbrot, zm, 1.0), 25000.0 / std::pow(6.2, 1.14));
  EXPECT_NEAR(model_eval(ModelId::ZipfMandelbrot, zm, 1.0), 25000.0 / std::pow(6.2, 1.14), 1e-9);
  const double lc[] = {0.133, 0.05};
  EXPECT_NEAR(model_eval(ModelId::LogCoverage, lc, 200.0) - model_eval(ModelId::LogCoverage, lc, 10.0),
              0.133 * std::log(20.0), 1e-15);
  const double pg[] = {0.6347, 0.02579};
  EXPECT_EQ(model_eval(ModelId::PhonemeGamma, pg, 0.0), 0.0);
  const double sm[] = {5.805, 2.245};
  EXPECT_GT(model_eval(ModelId::ShiftedMenzerath, sm, 0.0), 0.0);
  const double msp[] = {1.984, 1.464, -1.119};
  EXPECT_DOUBLE_EQ(model_eval(ModelId::MeanSyllablePower, msp, 1.0), 1.984 + 1.464);
  const double mse[] = {2.0, 0.5, -0.1};
  EXPECT_DOUBLE_EQ(model_eval(ModelId::MeanSyllableExp, mse, 4.0), 2.0 * 2.0 * std::exp(-0.4));
}

TEST(ModelEval, DomainErrorNamesModelAndArgument) {
  const double msp[] = {1.984, 1.464, -1.119};
  try {
    model_eval(ModelId::MeanSyllablePower, msp, 0.0);
    FAIL();
  } catch (const DomainError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("mean_syllable_power"), std::string::npos) << what;
    EXPECT_NE(what.find("x=0"), std::string::npos) << what;
  }
  const double zm[] = {1.0, 1.0, -3.0};
  EXPECT_THROW(model_eval(ModelId::ZipfMandelbrot, zm, 2.0), DomainError);
  const double bad[] = {1.0, -1.0};
  EXPECT_THROW(model_eval(ModelId::PhonemeGamma, bad, 1.0), DomainError);
}

TEST(ModelRegistry, NamesRoundTrip) {
  for (const auto id : all_models()) {
    EXPECT_EQ(parse_model_id(to_string(id)), id);
    const auto& m = Model::get(id);
    std::set<std::string> unique(m.param_names().begin(), m.param_names().end());
    EXPECT_EQ(unique.size(), m.param_count());
  }
  EXPECT_FALSE(parse_model_id("zipf").has_value());
  EXPECT_EQ(Model::get(ModelId::PhonemeGamma).normalization_name(), "A");
  EXPECT_EQ(Model::get(ModelId::ShiftedMenzerath).normalization_name(), "B");
  EXPECT_FALSE(Model::get(ModelId::ZipfMandelbrot).has_normalization());
}
