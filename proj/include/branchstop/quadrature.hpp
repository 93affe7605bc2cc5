#pragma once

#include <functional>
#include <initializer_list>
#include <vector>

namespace branchstop {

/// Integrand for tanh-sinh quadrature. Called as f(x, lo, hi) where lo = x - a
/// and hi = b - x are cancellation-free distances to the interval endpoints.
/// Integrands with an endpoint singularity (e.g. (b - x)^(alpha-1)) must use
/// the distance argument instead of recomputing it from x.
using Integrand = std::function<double(double x, double dist_lo, double dist_hi)>;

/// Double-exponential (tanh-sinh) quadrature of f over [a, b] to absolute
/// tolerance tol. Handles integrable endpoint singularities; interior kinks
/// must be split into separate panels by the caller.
double integrate(const Integrand& f, double a, double b, double tol);

/// Integrates over consecutive panels [pts[0], pts[1]], [pts[1], pts[2]], ...
double integrate_panels(const Integrand& f, const std::vector<double>& pts, double tol);

}  // namespace branchstop
