#include "nelson/sine_integral.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nelson {

namespace {

// Power series Si(x) = sum_{n>=0} (-1)^n x^{2n+1} / ((2n+1)(2n+1)!).
// Terms decay fast for |x| <= 2 so there is no cancellation to speak of.
double si_series(double x) {
    double term = x;           // n = 0 value of x^{2n+1}/(2n+1)!
    double sum = x;            // first summand equals term/(2n+1) with 2n+1 = 1
    double x2 = x * x;
    for (int n = 1; n < 40; ++n) {
        term *= -x2 / ((2.0 * n) * (2.0 * n + 1.0));
        double contrib = term / (2.0 * n + 1.0);
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// Modified Lentz evaluation of the continued fraction for the exponential
// integral at imaginary argument; Si(x) = pi/2 + Im(e^{-ix} h(x)) for x > 0.
double si_continued_fraction(double x) {
    using cd = std::complex<double>;
    cd b(1.0, x);
    cd c(1.0 / std::numeric_limits<double>::min(), 0.0);
    cd d = 1.0 / b;
    cd h = d;
    for (int i = 1; i <= 200; ++i) {
        double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        cd delta = c * d;
        h *= delta;
        if (std::abs(delta.real() - 1.0) + std::abs(delta.imag()) < 3e-16) {
            h *= cd(std::cos(x), -std::sin(x));
            return std::numbers::pi / 2.0 + h.imag();
        }
    }
    throw std::runtime_error("sine_integral: continued fraction failed to converge");
}

} // namespace

double sine_integral(double x) {
    if (std::isnan(x)) return x;
    double ax = std::abs(x);
    double v = (ax <= 2.0) ? si_series(ax) : si_continued_fraction(ax);
    return x < 0.0 ? -v : v;
}

} // namespace nelson
