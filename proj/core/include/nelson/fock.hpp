#ifndef NELSON_FOCK_HPP
#define NELSON_FOCK_HPP

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "nelson/quadrature.hpp"
#include "nelson/vec3.hpp"

namespace nelson {

// Discretized photon momenta with quadrature weights. omega = |k| > 0 for
// every mode (the IR cutoff keeps the dispersion away from zero).
struct Mode {
    Vec3 k;
    double weight = 0.0;
    double omega = 0.0;
};

struct ModeGrid {
    std::vector<Mode> modes;
    int dimension = 3; // 1 or 3

    std::size_t size() const { return modes.size(); }
    void validate() const;
};

// 3D shell quadrature nodes as a mode grid.
ModeGrid mode_grid_from_shell(const ModeQuadrature& quad);

// 1D log-uniform modes on [sigma, lambda] (positive k only), weights from the
// log measure so that sum_m w_m f(k_m) ~ \int_sigma^lambda f(k) dk.
ModeGrid mode_grid_log_1d(double sigma, double lambda, std::size_t n_modes);

// Occupation-truncated bosonic basis: all occupation vectors with per-mode
// occupation <= n_max and total occupation <= m_max, enumerated grade by
// grade (total occupation) and lexicographically within a grade.
class FockBasis {
public:
    FockBasis(std::size_t n_modes, std::size_t n_max, std::size_t m_max);

    std::size_t n_modes() const { return n_modes_; }
    std::size_t n_max() const { return n_max_; }
    std::size_t m_max() const { return m_max_; }
    std::size_t dim() const { return states_.size(); }

    const std::vector<int>& occupations(std::size_t idx) const { return states_[idx]; }
    int total_occupation(std::size_t idx) const { return totals_[idx]; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // Index after lowering/raising mode m, or npos if outside the basis.
    std::size_t lowered(std::size_t idx, std::size_t mode) const;
    std::size_t raised(std::size_t idx, std::size_t mode) const;

    std::size_t index_of(const std::vector<int>& occ) const; // npos if absent

    // Interior flag used by identity tests: total occupation < m_max.
    bool interior(std::size_t idx) const { return totals_[idx] < static_cast<int>(m_max_); }

private:
    std::size_t n_modes_, n_max_, m_max_;
    std::vector<std::vector<int>> states_;
    std::vector<int> totals_;
    std::unordered_multimap<std::size_t, std::size_t> lookup_; // hash key -> index

    std::size_t pack(const std::vector<int>& occ) const;
};

} // namespace nelson

#endif
