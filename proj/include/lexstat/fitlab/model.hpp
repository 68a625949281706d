#pragma once

// Closed-form length and rank laws.
//
//   PhonemeGamma       W = A φ^b exp(-α φ²),  A = 2 α^((b+1)/2) / Γ((b+1)/2)
//   ShiftedMenzerath   W = B (s+1)^d exp(-γ (s+1)),  B = γ^(d+1) / Γ(d+1)
//   MeanSyllablePower  M = M∞ + B s^c
//   MeanSyllableExp    M = A s^b exp(c s)
//   ZipfPower          F = A / r^z          (z > 0 means a falling curve)
//   ZipfMandelbrot     F = A / (r + C)^b
//   LogCoverage        T = k ln r + T0
//
// The normalization constants of the two length densities are never free
// parameters; they follow from the shape parameters.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lexstat::fitlab {

enum class ModelId {
  PhonemeGamma,
  ShiftedMenzerath,
  MeanSyllablePower,
  MeanSyllableExp,
  ZipfPower,
  ZipfMandelbrot,
  LogCoverage,
};

std::string_view to_string(ModelId id);
std::optional<ModelId> parse_model_id(std::string_view name);
const std::vector<ModelId>& all_models();

class Model {
 public:
  static const Model& get(ModelId id);

  ModelId id() const { return id_; }
  std::string_view name() const { return to_string(id_); }
  const std::vector<std::string>& param_names() const { return names_; }
  std::size_t param_count() const { return names_.size(); }
  std::optional<std::size_t> param_index(std::string_view name) const;

  bool params_in_domain(std::span<const double> p) const;
  bool x_in_domain(std::span<const double> p, double x) const;

  // Throws DomainError naming the model and x when outside the domain.
  double eval(std::span<const double> p, double x) const;
  // No checks; may return NaN or inf.
  double eval_raw(std::span<const double> p, double x) const;

  bool has_normalization() const;
  std::string_view normalization_name() const;  // "A" or "B"

 private:
  Model(ModelId id, std::vector<std::string> names) : id_(id), names_(std::move(names)) {}

  ModelId id_;
  std::vector<std::string> names_;
};

// A for PhonemeGamma (params b, α), B for ShiftedMenzerath (params d, γ).
// Throws DomainError out of domain or for models without a normalization.
double normalization_constant(ModelId id, std::span<const double> params);

double model_eval(ModelId id, std::span<const double> params, double x);

}  // namespace lexstat::fitlab
