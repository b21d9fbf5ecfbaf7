#pragma once

#include "svv/types.hpp"

#include <functional>

namespace svv {

// Point of the closed strip 0 <= Re z <= 1.
struct StripPoint {
    double x = 0.5;  // Re z
    double y = 0.0;  // Im z
};

// Poisson kernel of the strip at the interior point x+iy against boundary
// coordinate s on the line Re z = b:
//   P_b(x+iy, s) = sin(pi x) / (2 (cosh(pi(y-s)) - cos(pi(x-b)))).
double poisson_kernel_strip(int b, const StripPoint& z, double s);

// Integral of P_b(z, s) f(s) ds over the real line: truncation where the
// kernel tail drops below 1e-10, then composite Simpson refined until two
// successive estimates agree to tol.
double strip_quadrature(const std::function<double(double)>& f, int b,
                        const StripPoint& z, double tol = 1e-9);

}  // namespace svv
