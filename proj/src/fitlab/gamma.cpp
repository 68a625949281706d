#include "lexstat/fitlab/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "lexstat/error.hpp"

namespace lexstat::fitlab {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos(double x) {
  // x >= 0.5
  const double z = x - 1.0;
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  // split the power so that t^(z+0.5) e^-t does not overflow before the product
  const double half = std::pow(t, (z + 0.5) / 2.0);
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * a;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive, got " + std::to_string(x));
  if (x < 0.5) return lanczos(x + 1.0) / x;
  return lanczos(x);
}

}  // namespace lexstat::fitlab
