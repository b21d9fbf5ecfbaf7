#include "svv/strip.hpp"

#include <cmath>

namespace svv {

double poisson_kernel_strip(int b, const StripPoint& z, double s) {
    if (b != 0 && b != 1) throw InvalidInput("poisson_kernel_strip: b must be 0 or 1");
    if (!(z.x > 0.0 && z.x < 1.0))
        throw InvalidInput("poisson_kernel_strip: interior point required (0 < x < 1)");
    const double num = std::sin(M_PI * z.x);
    const double den = 2.0 * (std::cosh(M_PI * (z.y - s)) - std::cos(M_PI * (z.x - b)));
    return num / den;
}

namespace {

double simpson(const std::function<double(double)>& g, double a, double b, long n) {
    // n even panels
    const double h = (b - a) / double(n);
    double acc = g(a) + g(b);
    for (long i = 1; i < n; ++i) acc += g(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

double strip_quadrature(const std::function<double(double)>& f, int b,
                        const StripPoint& z, double tol) {
    // kernel decays like e^{-pi|s-y|}; |s-y| <= 12 keeps the tail below 1e-15
    const double half_width = 12.0;
    const double lo = z.y - half_width, hi = z.y + half_width;
    auto integrand = [&](double s) { return poisson_kernel_strip(b, z, s) * f(s); };

    long n = 256;
    double prev = simpson(integrand, lo, hi, n);
    for (int level = 0; level < 14; ++level) {
        n *= 2;
        const double cur = simpson(integrand, lo, hi, n);
        if (std::abs(cur - prev) < tol) return cur;
        prev = cur;
    }
    throw NumericError("strip_quadrature: refinement did not converge");
}

}  // namespace svv
