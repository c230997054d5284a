#pragma once

#include <functional>

namespace pdp {

/// Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b].
/// Bisects until the local K15-G7 error estimate drops below the
/// tolerance apportioned to the subinterval. Throws on depth exhaustion.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-10, int max_depth = 52);

} // namespace pdp
