#include "nelson/darwin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nelson/sine_integral.hpp"

namespace nelson {

namespace {

constexpr double kC = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);

// Radial building blocks. With j0(u) = sin(u)/u,
//   F(u)  = int_0^u j0'(t)/t dt          = [sin u/u^2 - cos u/u - Si(u)] / 2,
//   G(u)  = int_0^u (j0''(t) - j0'(t)/t) dt = u F'(u) - F(u),
// so that A(r) = -(F(L r) - F(s r)) / (2 pi^2 r) multiplies the identity and
// B(r) the rhat rhat^T part. Power series are used for u <= 1 where the
// closed forms cancel catastrophically.
double f_closed(double u) {
    return 0.5 * (std::sin(u) / (u * u) - std::cos(u) / u - sine_integral(u));
}
double g_closed(double u) {
    return 0.5 * (-3.0 * std::sin(u) / (u * u) + 3.0 * std::cos(u) / u + sine_integral(u));
}
double fp_closed(double u) {
    return std::cos(u) / (u * u) - std::sin(u) / (u * u * u);
}
double gp_closed(double u) {
    return -std::sin(u) / u - 3.0 * std::cos(u) / (u * u) + 3.0 * std::sin(u) / (u * u * u);
}

struct RadialSeries {
    double a, b, da, db;
};

// Direct series in r of the assembled coefficients, valid for Lambda*r <= 1:
//   A  = -c sum_{n>=1} (-1)^n 2n (L^{2n-1}-s^{2n-1}) r^{2n-2} / ((2n-1)(2n+1)!)
//   B  = -c sum_{n>=2} (-1)^n 2n(2n-2) (...) r^{2n-2} / ((2n-1)(2n+1)!)
//   A' = B / r (termwise), B' = (2n-2) B_n / r.
RadialSeries radial_series(double r, double lam, double sig) {
    RadialSeries out{0.0, 0.0, 0.0, 0.0};
    const double r2 = r * r;
    double pl = lam, ps = sig;   // L^{2n-1}, s^{2n-1}
    double fact = 6.0;           // (2n+1)!
    double rpow = 1.0;           // r^{2n-2}
    double rpow_d = 0.0;         // r^{2n-3}, zero contribution below n = 2
    double sign = -1.0;
    for (int n = 1; n < 24; ++n) {
        const double odd = 2.0 * n - 1.0;
        const double even = 2.0 * n - 2.0;
        const double common = sign * 2.0 * n * (pl - ps) / (odd * fact);
        out.a += common * rpow;
        out.b += common * even * rpow;
        out.da += common * even * rpow_d;
        out.db += common * even * even * rpow_d;
        if (std::abs(common * rpow) < 1e-18 * (std::abs(out.a) + 1e-300)) break;
        pl *= lam * lam;
        ps *= sig * sig;
        fact *= (2.0 * n + 2.0) * (2.0 * n + 3.0);
        rpow *= r2;
        rpow_d = (n == 1) ? r : rpow_d * r2;
        sign = -sign;
    }
    out.a *= -kC;
    out.b *= -kC;
    out.da *= -kC;
    out.db *= -kC;
    return out;
}

} // namespace

struct Leg {
    double f, g, fp, gp; // F(u), G(u), F'(u), G'(u)
};

Leg eval_leg(double u) {
    Leg leg{0.0, 0.0, 0.0, 0.0};
    if (u == 0.0) {
        leg.fp = -1.0 / 3.0;
        return leg;
    }
    if (u > 1.0) {
        leg.f = f_closed(u);
        leg.g = g_closed(u);
        leg.fp = fp_closed(u);
        leg.gp = gp_closed(u);
        return leg;
    }
    // F(u)  = sum_{n>=1} (-1)^n 2n u^{2n-1} / ((2n-1)(2n+1)!)
    // F'(u) = sum_{n>=1} (-1)^n 2n u^{2n-2} / (2n+1)!
    // G, G' carry an extra (2n-2) factor (and start at n = 2).
    double fact = 6.0;        // (2n+1)!
    double upow = u;          // u^{2n-1}
    double sign = -1.0;
    for (int n = 1; n < 24; ++n) {
        const double odd = 2.0 * n - 1.0;
        const double even = 2.0 * n - 2.0;
        const double t = sign * 2.0 * n * upow / fact;
        leg.f += t / odd;
        leg.g += t * even / odd;
        leg.fp += t / u;
        leg.gp += t * even / u;
        if (std::abs(t) < 1e-18 * (std::abs(leg.f) + 1e-300)) break;
        upow *= u * u;
        fact *= (2.0 * n + 2.0) * (2.0 * n + 3.0);
        sign = -sign;
    }
    return leg;
}

DarwinRadial darwin_radial(double r, const FormFactor& ff) {
    if (!(r >= 0.0)) throw std::domain_error("darwin_radial: r must be >= 0");
    const double lam = ff.lambda_uv, sig = ff.sigma_ir;
    DarwinRadial out;
    if (lam * r <= 1.0) {
        // Assembled series in r; avoids the 1/r cancellations entirely.
        RadialSeries s = radial_series(r, lam, sig);
        return {s.a, s.b, s.da, s.db};
    }
    const Leg ll = eval_leg(lam * r);
    const Leg ls = (sig > 0.0) ? eval_leg(sig * r) : Leg{0.0, 0.0, 0.0, 0.0};
    const double df = ll.f - ls.f;
    const double dg = ll.g - ls.g;
    const double dfp = lam * ll.fp - sig * ls.fp;
    const double dgp = lam * ll.gp - sig * ls.gp;
    out.a = -kC * df / r;
    out.b = -kC * dg / r;
    out.da = -kC * (dfp / r - df / (r * r));
    out.db = -kC * (dgp / r - dg / (r * r));
    return out;
}

DarwinTensor darwin_tensor(const Vec3& r, const FormFactor& ff) {
    const double rn = norm(r);
    const DarwinRadial rad = darwin_radial(rn, ff);
    DarwinTensor t;
    Vec3 rhat = (rn > 0.0) ? (1.0 / rn) * r : Vec3{0.0, 0.0, 0.0};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            t.value[a][b] = rad.a * (a == b ? 1.0 : 0.0) + rad.b * rhat[a] * rhat[b];
    return t;
}

double darwin_quadratic(const Vec3& r, const Vec3& u, const Vec3& v, const FormFactor& ff) {
    const double rn = norm(r);
    const DarwinRadial rad = darwin_radial(rn, ff);
    if (rn == 0.0) return rad.a * dot(u, v);
    const Vec3 rhat = (1.0 / rn) * r;
    return rad.a * dot(u, v) + rad.b * dot(u, rhat) * dot(v, rhat);
}

Vec3 darwin_quadratic_grad(const Vec3& r, const Vec3& u, const Vec3& v, const FormFactor& ff) {
    const double rn = norm(r);
    if (rn == 0.0) return {0.0, 0.0, 0.0};
    const DarwinRadial rad = darwin_radial(rn, ff);
    const Vec3 rhat = (1.0 / rn) * r;
    const double ur = dot(u, rhat), vr = dot(v, rhat);
    Vec3 g = (rad.da * dot(u, v) + rad.db * ur * vr) * rhat;
    const Vec3 u_perp = u - ur * rhat;
    const Vec3 v_perp = v - vr * rhat;
    g += (rad.b / rn) * (vr * u_perp + ur * v_perp);
    return g;
}

double darwin_energy(const PhaseSpacePoint& pt, const SystemConfig& cfg) {
    pt.check_sizes();
    if (pt.x.size() != cfg.size())
        throw std::invalid_argument("darwin_energy: configuration size mismatch");
    const double eps2 = cfg.epsilon * cfg.epsilon;
    double sum = 0.0;
    for (std::size_t l = 0; l < pt.x.size(); ++l)
        for (std::size_t j = l + 1; j < pt.x.size(); ++j) {
            const double el = cfg.particles[l].charge, ej = cfg.particles[j].charge;
            if (el == 0.0 || ej == 0.0) continue;
            sum += el * ej * darwin_quadratic(pt.x[j] - pt.x[l], pt.p[l], pt.p[j], cfg.form_factor);
        }
    return -eps2 * sum;
}

} // namespace nelson
