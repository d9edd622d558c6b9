#ifndef NELSON_SINE_INTEGRAL_HPP
#define NELSON_SINE_INTEGRAL_HPP

namespace nelson {

// Sine integral Si(x) = \int_0^x sin(t)/t dt, accurate to ~1e-15 over the
// full real line (power series for small |x|, Lentz continued fraction for
// the complex exponential integral otherwise).
double sine_integral(double x);

} // namespace nelson

#endif
