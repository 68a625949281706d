#pragma once

// Damped Gauss-Newton (Levenberg-Marquardt) least squares for the models in
// model.hpp. Step: (JᵀWJ + λ diag(JᵀWJ)) δ = JᵀW r. A step is accepted only
// when it lowers the weighted sum of squared residuals; otherwise λ grows.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lexstat/fitlab/model.hpp"

namespace lexstat::fitlab {

struct DataPoint {
  double x = 0.0;
  double y = 0.0;
  double weight = 1.0;
};

// Log fits minimise Σ w (ln y - ln f)²; all y must then be positive.
enum class ResidualSpace { Linear, Log };

struct FitOptions {
  int max_iterations = 200;
  double gradient_tol = 1e-8;
  double step_tol = 1e-10;
  double initial_lambda = 1e-3;
  double lambda_up = 10.0;
  double lambda_down = 0.1;
  double fd_relative_step = 1e-6;
  ResidualSpace space = ResidualSpace::Linear;

  void validate() const;
};

enum class Termination { ZeroResidual, Gradient, Step, MaxIterations, Singular, LambdaOverflow };

std::string_view to_string(Termination t);

struct FittedParam {
  std::string name;
  double value = 0.0;
  double std_error = 0.0;  // NaN when undefined (n == p or singular)
};

struct FitResult {
  ModelId model = ModelId::ZipfPower;
  std::vector<FittedParam> params;
  std::vector<FittedParam> derived;  // normalization constant, when the model has one
  double sse = 0.0;
  int iterations = 0;
  bool converged = false;
  double final_lambda = 0.0;
  double gradient_norm = 0.0;  // max scaled gradient component at the last iterate
  Termination termination = Termination::MaxIterations;
  std::vector<double> sse_trace;  // initial sse, then one entry per accepted step
  std::vector<std::vector<double>> trajectory;  // parameters matching sse_trace

  double value(std::string_view name) const;
  std::vector<double> values() const;
};

// Jacobian of model values with respect to parameters, forward differences
// with step h_j = rel_step * |p_j| (rel_step when p_j == 0).
Eigen::MatrixXd forward_jacobian(const Model& model, std::span<const double> params,
                                 std::span<const DataPoint> data, double rel_step = 1e-6);

// Documented starting points used when the caller gives none:
//   ZipfMandelbrot (A = F at the smallest rank, b = 1, C = 1)
//   PhonemeGamma   (b = 1, α = 1 / mean φ²)   mean weighted by the fractions
//   ShiftedMenzerath (d = mean(s+1) - 1, γ = 1)
//   MeanSyllablePower (M∞ = last y, B = first y - last y, c = -1)
//   MeanSyllableExp (A = first y, b = 0, c = 0)
//   ZipfPower (A = x₀ y₀, z = 1)
//   LogCoverage (two-point secant through the end points)
std::vector<double> default_initial_params(ModelId id, std::span<const DataPoint> data);

// Throws ValidationError for too few points or a wrongly sized init,
// DomainError when the model cannot be evaluated at the initial point or
// yields non-finite values at in-domain parameters. Non-convergence is
// reported through FitResult.converged, not thrown.
FitResult lm_fit(const Model& model, std::span<const DataPoint> data, std::vector<double> init,
                 const FitOptions& opts = {});

}  // namespace lexstat::fitlab
