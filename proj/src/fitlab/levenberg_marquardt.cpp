#include "lexstat/fitlab/levenberg_marquardt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "lexstat/error.hpp"

namespace lexstat::fitlab {

namespace {

constexpr double kLambdaMax = 1e30;
constexpr double kLambdaMin = 1e-300;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Problem {
  const Model& model;
  std::span<const DataPoint> data;
  ResidualSpace space;

  bool admissible(std::span<const double> p) const {
    if (!model.params_in_domain(p)) return false;
    for (const auto& d : data) {
      if (!model.x_in_domain(p, d.x)) return false;
    }
    return true;
  }

  // Prediction in residual space; nullopt when a value is non-finite or, for
  // log residuals, non-positive.
  std::optional<Eigen::VectorXd> predict(std::span<const double> p) const {
    Eigen::VectorXd g(static_cast<Eigen::Index>(data.size()));
    for (std::size_t i = 0; i < data.size(); ++i) {
      double f = model.eval_raw(p, data[i].x);
      if (space == ResidualSpace::Log) {
        if (!(f > 0.0)) return std::nullopt;
        f = std::log(f);
      }
      if (!std::isfinite(f)) return std::nullopt;
      g[static_cast<Eigen::Index>(i)] = f;
    }
    return g;
  }

  Eigen::VectorXd targets() const {
    Eigen::VectorXd y(static_cast<Eigen::Index>(data.size()));
    for (std::size_t i = 0; i < data.size(); ++i) {
      y[static_cast<Eigen::Index>(i)] = space == ResidualSpace::Log ? std::log(data[i].y) : data[i].y;
    }
    return y;
  }

  Eigen::VectorXd weights() const {
    Eigen::VectorXd w(static_cast<Eigen::Index>(data.size()));
    for (std::size_t i = 0; i < data.size(); ++i) w[static_cast<Eigen::Index>(i)] = data[i].weight;
    return w;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError(std::string(model.name()) + ": " + what);
  }

  Eigen::MatrixXd jacobian(const std::vector<double>& p, const Eigen::VectorXd& g0,
                           double rel_step) const {
    const auto n = static_cast<Eigen::Index>(data.size());
    Eigen::MatrixXd J(n, static_cast<Eigen::Index>(p.size()));
    std::vector<double> q = p;
    for (std::size_t j = 0; j < p.size(); ++j) {
      double h = p[j] != 0.0 ? rel_step * std::abs(p[j]) : rel_step;
      q[j] = p[j] + h;
      if (!admissible(q)) {
        h = -h;
        q[j] = p[j] + h;
      }
      const auto g1 = admissible(q) ? predict(q) : std::nullopt;
      if (!g1) fail("non-finite value while differentiating");
      J.col(static_cast<Eigen::Index>(j)) = (*g1 - g0) / h;
      q[j] = p[j];
    }
    return J;
  }
};

double weighted_sse(const Eigen::VectorXd& r, const Eigen::VectorXd& w) {
  return (w.array() * r.array().square()).sum();
}

}  // namespace

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ZeroResidual:
      return "zero_residual";
    case Termination::Gradient:
      return "gradient";
    case Termination::Step:
      return "step";
    case Termination::MaxIterations:
      return "max_iterations";
    case Termination::Singular:
      return "singular";
    case Termination::LambdaOverflow:
      return "lambda_overflow";
  }
  return "?";
}

void FitOptions::validate() const {
  if (max_iterations < 1) throw ValidationError("FitOptions: max_iterations must be >= 1");
  if (!(gradient_tol > 0.0) || !(step_tol > 0.0) || !(initial_lambda > 0.0) ||
      !(fd_relative_step > 0.0)) {
    throw ValidationError("FitOptions: tolerances, lambda and step must be positive");
  }
  if (!(lambda_up > 1.0) || !(lambda_down < 1.0) || !(lambda_down > 0.0)) {
    throw ValidationError("FitOptions: need lambda_up > 1 > lambda_down > 0");
  }
}

double FitResult::value(std::string_view name) const {
  for (const auto& p : params) {
    if (p.name == name) return p.value;
  }
  for (const auto& p : derived) {
    if (p.name == name) return p.value;
  }
  throw ValidationError("no fitted parameter named '" + std::string(name) + "'");
}

std::vector<double> FitResult::values() const {
  std::vector<double> out;
  for (const auto& p : params) out.push_back(p.value);
  return out;
}

Eigen::MatrixXd forward_jacobian(const Model& model, std::span<const double> params,
                                 std::span<const DataPoint> data, double rel_step) {
  const Problem prob{model, data, ResidualSpace::Linear};
  const std::vector<double> p(params.begin(), params.end());
  if (!prob.admissible(p)) prob.fail("Jacobian requested outside the domain");
  const auto g0 = prob.predict(p);
  if (!g0) prob.fail("non-finite value at the evaluation point");
  return prob.jacobian(p, *g0, rel_step);
}

std::vector<double> default_initial_params(ModelId id, std::span<const DataPoint> data) {
  if (data.empty()) throw ValidationError("default_initial_params: no data");
  auto by_x = std::vector<DataPoint>(data.begin(), data.end());
  std::stable_sort(by_x.begin(), by_x.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  const DataPoint& first = by_x.front();
  const DataPoint& last = by_x.back();

  auto weighted_mean = [&](auto&& f) {
    double num = 0.0, den = 0.0;
    for (const auto& d : data) {
      num += d.y * f(d.x);
      den += d.y;
    }
    if (den > 0.0) return num / den;
    num = 0.0;
    for (const auto& d : data) num += f(d.x);
    return num / static_cast<double>(data.size());
  };

  switch (id) {
    case ModelId::PhonemeGamma: {
      const double m2 = weighted_mean([](double x) { return x * x; });
      return {1.0, m2 > 0.0 ? 1.0 / m2 : 1.0};
    }
    case ModelId::ShiftedMenzerath: {
      const double mt = weighted_mean([](double x) { return x + 1.0; });
      return {std::max(mt - 1.0, -0.5), 1.0};
    }
    case ModelId::MeanSyllablePower:
      return {last.y, first.y - last.y, -1.0};
    case ModelId::MeanSyllableExp:
      return {first.y, 0.0, 0.0};
    case ModelId::ZipfPower:
      return {first.x * first.y, 1.0};
    case ModelId::ZipfMandelbrot:
      return {first.y, 1.0, 1.0};
    case ModelId::LogCoverage: {
      const double dx = std::log(last.x) - std::log(first.x);
      const double k = dx != 0.0 ? (last.y - first.y) / dx : 0.1;
      return {k, first.y - k * std::log(first.x)};
    }
  }
  return {};
}

FitResult lm_fit(const Model& model, std::span<const DataPoint> data, std::vector<double> init,
                 const FitOptions& opts) {
  opts.validate();
  const std::size_t np = model.param_count();
  if (init.size() != np) {
    throw ValidationError(std::string(model.name()) + ": expected " + std::to_string(np) +
                          " initial parameters, got " + std::to_string(init.size()));
  }
  if (data.size() < np) {
    throw ValidationError(std::string(model.name()) + ": " + std::to_string(data.size()) +
                          " data points for " + std::to_string(np) + " parameters");
  }
  for (const auto& d : data) {
    if (!std::isfinite(d.x) || !std::isfinite(d.y) || !(d.weight >= 0.0)) {
      throw ValidationError(std::string(model.name()) + ": non-finite data or negative weight");
    }
    if (opts.space == ResidualSpace::Log && !(d.y > 0.0)) {
      throw ValidationError(std::string(model.name()) + ": log residuals need positive y");
    }
  }

  const Problem prob{model, data, opts.space};
  if (!prob.admissible(init)) prob.fail("initial parameters outside the model domain");
  const Eigen::VectorXd y = prob.targets();
  const Eigen::VectorXd w = prob.weights();

  FitResult res;
  res.model = model.id();
  std::vector<double> p = std::move(init);
  auto g = prob.predict(p);
  if (!g) prob.fail("non-finite value at the initial parameters");
  Eigen::VectorXd r = y - *g;
  double sse = weighted_sse(r, w);
  double lambda = opts.initial_lambda;
  res.sse_trace.push_back(sse);
  res.trajectory.push_back(p);

  const auto k = static_cast<Eigen::Index>(np);
  bool done = false;
  int iter = 0;
  while (!done && iter < opts.max_iterations) {
    ++iter;
    if (sse == 0.0) {
      res.termination = Termination::ZeroResidual;
      res.converged = true;
      break;
    }
    const Eigen::MatrixXd J = prob.jacobian(p, *g, opts.fd_relative_step);
    const Eigen::MatrixXd JtW = J.transpose() * w.asDiagonal();
    const Eigen::MatrixXd A = JtW * J;
    const Eigen::VectorXd grad = JtW * r;

    // cosine between the residual and each Jacobian column
    double scaled = 0.0;
    const double rnorm = std::sqrt(sse);
    for (Eigen::Index j = 0; j < k; ++j) {
      const double cn = std::sqrt(A(j, j));
      if (cn > 0.0) scaled = std::max(scaled, std::abs(grad[j]) / (cn * rnorm));
    }
    res.gradient_norm = scaled;
    if (scaled <= opts.gradient_tol) {
      res.termination = Termination::Gradient;
      res.converged = true;
      break;
    }

    for (;;) {
      Eigen::MatrixXd M = A;
      M.diagonal() += lambda * A.diagonal();
      const Eigen::LLT<Eigen::MatrixXd> llt(M);
      Eigen::VectorXd delta;
      bool ok = llt.info() == Eigen::Success;
      if (ok) {
        delta = llt.solve(grad);
        ok = delta.allFinite();
      }
      if (!ok) {
        lambda *= opts.lambda_up;
        if (lambda > kLambdaMax) {
          res.termination = Termination::Singular;
          done = true;
          break;
        }
        continue;
      }

      double pnorm = 0.0;
      for (double v : p) pnorm += v * v;
      pnorm = std::sqrt(pnorm);
      if (delta.norm() <= opts.step_tol * (pnorm + opts.step_tol)) {
        res.termination = Termination::Step;
        res.converged = true;
        done = true;
        break;
      }

      std::vector<double> trial = p;
      for (std::size_t j = 0; j < np; ++j) trial[j] += delta[static_cast<Eigen::Index>(j)];
      std::optional<Eigen::VectorXd> gt;
      // out-of-domain or non-finite trial points count as failed steps
      if (prob.admissible(trial)) gt = prob.predict(trial);
      if (gt) {
        const Eigen::VectorXd rt = y - *gt;
        const double sse_t = weighted_sse(rt, w);
        if (sse_t < sse) {
          p = std::move(trial);
          g = std::move(gt);
          r = rt;
          sse = sse_t;
          lambda = std::max(lambda * opts.lambda_down, kLambdaMin);
          res.sse_trace.push_back(sse);
          res.trajectory.push_back(p);
          break;
        }
      }
      lambda *= opts.lambda_up;
      if (lambda > kLambdaMax) {
        res.termination = Termination::LambdaOverflow;
        done = true;
        break;
      }
    }
  }
  if (!done && !res.converged) res.termination = Termination::MaxIterations;

  res.iterations = iter;
  res.sse = sse;
  res.final_lambda = lambda;

  // asymptotic standard errors: s² (JᵀWJ)⁻¹ with s² = sse / (n - p)
  std::vector<double> se(np, kNaN);
  const std::size_t n = data.size();
  if (n > np) {
    const Eigen::MatrixXd J = prob.jacobian(p, *g, opts.fd_relative_step);
    const Eigen::MatrixXd A = J.transpose() * w.asDiagonal() * J;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (lu.isInvertible()) {
      const Eigen::MatrixXd cov = lu.inverse() * (sse / static_cast<double>(n - np));
      for (std::size_t j = 0; j < np; ++j) {
        const double v = cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
        se[j] = v >= 0.0 ? std::sqrt(v) : kNaN;
      }
    }
  }
  for (std::size_t j = 0; j < np; ++j) res.params.push_back({model.param_names()[j], p[j], se[j]});
  if (model.has_normalization()) {
    res.derived.push_back(
        {std::string(model.normalization_name()), normalization_constant(model.id(), p), kNaN});
  }
  return res;
}

}  // namespace lexstat::fitlab
