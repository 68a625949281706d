#pragma once

namespace lexstat::fitlab {

// Gamma function for x > 0 (Lanczos approximation, g = 7, nine terms).
// Relative error is around 1e-15 over the range used by the length models.
// Throws DomainError for x <= 0 or NaN.
double gamma_fn(double x);

}  // namespace lexstat::fitlab
