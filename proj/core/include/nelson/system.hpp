#ifndef NELSON_SYSTEM_HPP
#define NELSON_SYSTEM_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nelson/form_factor.hpp"
#include "nelson/vec3.hpp"

namespace nelson {

struct ParticleSpec {
    double charge = 0.0;
};

// N particles with dimensionless couplings e_j, a shared form factor, and
// the adiabatic parameter epsilon (particle mass is epsilon^{-2} in
// microscopic units; macroscopic units carry mass 1).
struct SystemConfig {
    std::vector<ParticleSpec> particles;
    FormFactor form_factor;
    double epsilon = 0.1;

    SystemConfig() = default;
    SystemConfig(std::vector<ParticleSpec> parts, FormFactor ff, double eps)
        : particles(std::move(parts)), form_factor(ff), epsilon(eps) {
        validate();
    }

    std::size_t size() const { return particles.size(); }

    void validate() const {
        if (particles.empty())
            throw std::invalid_argument("SystemConfig: need at least one particle");
        if (!(epsilon > 0.0) || !(epsilon < 1.0))
            throw std::invalid_argument("SystemConfig: epsilon must be in (0, 1)");
    }
};

// Particle positions x in R^{3N}.
using Configuration = std::vector<Vec3>;

struct PhaseSpacePoint {
    Configuration x;
    std::vector<Vec3> p;

    void check_sizes() const {
        if (x.size() != p.size())
            throw std::invalid_argument("PhaseSpacePoint: position/momentum size mismatch");
    }
};

} // namespace nelson

#endif
