#include "lexstat/fitlab/model.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "lexstat/error.hpp"
#include "lexstat/fitlab/gamma.hpp"

namespace lexstat::fitlab {

namespace {

bool finite_all(std::span<const double> p) {
  for (double v : p) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double phoneme_norm(double b, double alpha) {
  return 2.0 * std::pow(alpha, (b + 1.0) / 2.0) / gamma_fn((b + 1.0) / 2.0);
}

double menzerath_norm(double d, double gamma) {
  return std::pow(gamma, d + 1.0) / gamma_fn(d + 1.0);
}

}  // namespace

std::string_view to_string(ModelId id) {
  switch (id) {
    case ModelId::PhonemeGamma:
      return "phoneme_gamma";
    case ModelId::ShiftedMenzerath:
      return "shifted_menzerath";
    case ModelId::MeanSyllablePower:
      return "mean_syllable_power";
    case ModelId::MeanSyllableExp:
      return "mean_syllable_exp";
    case ModelId::ZipfPower:
      return "zipf_power";
    case ModelId::ZipfMandelbrot:
      return "zipf_mandelbrot";
    case ModelId::LogCoverage:
      return "log_coverage";
  }
  return "?";
}

const std::vector<ModelId>& all_models() {
  static const std::vector<ModelId> ids = {
      ModelId::PhonemeGamma, ModelId::ShiftedMenzerath, ModelId::MeanSyllablePower,
      ModelId::MeanSyllableExp, ModelId::ZipfPower, ModelId::ZipfMandelbrot, ModelId::LogCoverage};
  return ids;
}

std::optional<ModelId> parse_model_id(std::string_view name) {
  for (ModelId id : all_models()) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

const Model& Model::get(ModelId id) {
  static const std::array<Model, 7> models = {
      Model(ModelId::PhonemeGamma, {"b", "alpha"}),
      Model(ModelId::ShiftedMenzerath, {"d", "gamma"}),
      Model(ModelId::MeanSyllablePower, {"M_inf", "B", "c"}),
      Model(ModelId::MeanSyllableExp, {"A", "b", "c"}),
      Model(ModelId::ZipfPower, {"A", "z"}),
      Model(ModelId::ZipfMandelbrot, {"A", "b", "C"}),
      Model(ModelId::LogCoverage, {"k", "T0"}),
  };
  return models[static_cast<std::size_t>(id)];
}

std::optional<std::size_t> Model::param_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

bool Model::params_in_domain(std::span<const double> p) const {
  if (p.size() != names_.size() || !finite_all(p)) return false;
  switch (id_) {
    case ModelId::PhonemeGamma:
      return p[0] > -1.0 && p[1] > 0.0;
    case ModelId::ShiftedMenzerath:
      return p[0] > -1.0 && p[1] > 0.0;
    default:
      return true;
  }
}

bool Model::x_in_domain(std::span<const double> p, double x) const {
  if (!std::isfinite(x)) return false;
  switch (id_) {
    case ModelId::PhonemeGamma:
      return x > 0.0 || (x == 0.0 && p[0] >= 0.0);
    case ModelId::ShiftedMenzerath:
      return x > -1.0;
    case ModelId::ZipfMandelbrot:
      return x + p[2] > 0.0;
    default:
      return x > 0.0;
  }
}

double Model::eval_raw(std::span<const double> p, double x) const {
  switch (id_) {
    case ModelId::PhonemeGamma: {
      const double b = p[0], alpha = p[1];
      if (x == 0.0) return b == 0.0 ? phoneme_norm(b, alpha) : 0.0;
      return phoneme_norm(b, alpha) * std::pow(x, b) * std::exp(-alpha * x * x);
    }
    case ModelId::ShiftedMenzerath: {
      const double d = p[0], gamma = p[1], t = x + 1.0;
      return menzerath_norm(d, gamma) * std::pow(t, d) * std::exp(-gamma * t);
    }
    case ModelId::MeanSyllablePower:
      return p[0] + p[1] * std::pow(x, p[2]);
    case ModelId::MeanSyllableExp:
      return p[0] * std::pow(x, p[1]) * std::exp(p[2] * x);
    case ModelId::ZipfPower:
      return p[0] / std::pow(x, p[1]);
    case ModelId::ZipfMandelbrot:
      return p[0] / std::pow(x + p[2], p[1]);
    case ModelId::LogCoverage:
      return p[0] * std::log(x) + p[1];
  }
  return std::nan("");
}

double Model::eval(std::span<const double> p, double x) const {
  auto fail = [&](const char* what) {
    std::ostringstream os;
    os << name() << ": " << what << " at x=" << x;
    throw DomainError(os.str());
  };
  if (!params_in_domain(p)) fail("parameters out of domain");
  if (!x_in_domain(p, x)) fail("argument out of domain");
  const double y = eval_raw(p, x);
  if (!std::isfinite(y)) fail("non-finite value");
  return y;
}

bool Model::has_normalization() const {
  return id_ == ModelId::PhonemeGamma || id_ == ModelId::ShiftedMenzerath;
}

std::string_view Model::normalization_name() const {
  if (id_ == ModelId::PhonemeGamma) return "A";
  if (id_ == ModelId::ShiftedMenzerath) return "B";
  return {};
}

double normalization_constant(ModelId id, std::span<const double> params) {
  const Model& m = Model::get(id);
  if (!m.has_normalization()) {
    throw DomainError(std::string(m.name()) + " has no normalization constant");
  }
  if (!m.params_in_domain(params)) {
    throw DomainError(std::string(m.name()) + ": normalization requires shape > -1 and rate > 0");
  }
  return id == ModelId::PhonemeGamma ? phoneme_norm(params[0], params[1])
                                     : menzerath_norm(params[0], params[1]);
}

double model_eval(ModelId id, std::span<const double> params, double x) {
  return Model::get(id).eval(params, x);
}

}  // namespace lexstat::fitlab
