#ifndef NELSON_FORM_FACTOR_HPP
#define NELSON_FORM_FACTOR_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nelson {

// Sharp-cutoff momentum-space charge smearing: constant (2pi)^{-3/2} on the
// shell sigma_ir < |k| < lambda_uv, zero elsewhere. sigma_ir = 0 gives the
// unregularized form factor. Boundary points map to zero (measure-zero
// convention, fixed for determinism).
struct FormFactor {
    double lambda_uv = 1.0;
    double sigma_ir = 0.0;

    FormFactor() = default;
    FormFactor(double lambda, double sigma) : lambda_uv(lambda), sigma_ir(sigma) {
        if (!(lambda_uv > 0.0))
            throw std::invalid_argument("FormFactor: lambda_uv must be > 0");
        if (!(sigma_ir >= 0.0) || !(sigma_ir < lambda_uv))
            throw std::invalid_argument("FormFactor: need 0 <= sigma_ir < lambda_uv");
    }
};

inline constexpr double form_factor_height() {
    // (2 pi)^{-3/2}
    return 0.063493635934240969389;
}

inline double form_factor_hat(double k_abs, const FormFactor& ff) {
    if (!(k_abs >= 0.0))
        throw std::domain_error("form_factor_hat: |k| must be >= 0");
    return (k_abs > ff.sigma_ir && k_abs < ff.lambda_uv) ? form_factor_height() : 0.0;
}

} // namespace nelson

#endif
