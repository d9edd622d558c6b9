#include "nelson/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace nelson {

void ModeGrid::validate() const {
    if (modes.empty()) throw std::invalid_argument("ModeGrid: no modes");
    if (dimension != 1 && dimension != 3)
        throw std::invalid_argument("ModeGrid: dimension must be 1 or 3");
    for (const auto& m : modes) {
        if (!(m.omega > 0.0)) throw std::invalid_argument("ModeGrid: omega must be > 0");
        if (!(m.weight > 0.0)) throw std::invalid_argument("ModeGrid: weights must be > 0");
    }
}

ModeGrid mode_grid_from_shell(const ModeQuadrature& quad) {
    ModeGrid g;
    g.dimension = 3;
    g.modes.reserve(quad.size());
    for (std::size_t i = 0; i < quad.size(); ++i)
        g.modes.push_back({quad.k[i], quad.weight[i], quad.omega[i]});
    g.validate();
    return g;
}

ModeGrid mode_grid_log_1d(double sigma, double lambda, std::size_t n_modes) {
    if (!(sigma > 0.0) || !(lambda > sigma))
        throw std::invalid_argument("mode_grid_log_1d: need 0 < sigma < lambda");
    if (n_modes == 0) throw std::invalid_argument("mode_grid_log_1d: n_modes >= 1");
    ModeGrid g;
    g.dimension = 1;
    const double du = std::log(lambda / sigma) / static_cast<double>(n_modes);
    for (std::size_t m = 0; m < n_modes; ++m) {
        const double k = sigma * std::exp(du * (static_cast<double>(m) + 0.5));
        g.modes.push_back({{k, 0.0, 0.0}, k * du, k}); // dk = k d(log k)
    }
    g.validate();
    return g;
}

namespace {

void enumerate_grade(std::size_t n_modes, std::size_t n_max, int remaining, std::size_t mode,
                     std::vector<int>& occ, std::vector<std::vector<int>>& out) {
    if (mode + 1 == n_modes) {
        if (remaining <= static_cast<int>(n_max)) {
            occ[mode] = remaining;
            out.push_back(occ);
        }
        return;
    }
    const int top = std::min<int>(static_cast<int>(n_max), remaining);
    for (int n = top; n >= 0; --n) { // lexicographically decreasing tail sums
        occ[mode] = n;
        enumerate_grade(n_modes, n_max, remaining - n, mode + 1, occ, out);
    }
    occ[mode] = 0;
}

} // namespace

FockBasis::FockBasis(std::size_t n_modes, std::size_t n_max, std::size_t m_max)
    : n_modes_(n_modes), n_max_(n_max), m_max_(m_max) {
    if (n_modes == 0) throw std::invalid_argument("FockBasis: need at least one mode");
    if (n_max == 0 || m_max == 0)
        throw std::invalid_argument("FockBasis: occupation caps must be >= 1");
    std::vector<int> occ(n_modes, 0);
    for (int grade = 0; grade <= static_cast<int>(m_max); ++grade)
        enumerate_grade(n_modes, n_max, grade, 0, occ, states_);
    totals_.reserve(states_.size());
    lookup_.reserve(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) {
        int tot = 0;
        for (int n : states_[i]) tot += n;
        totals_.push_back(tot);
        lookup_.emplace(pack(states_[i]), i);
    }
}

std::size_t FockBasis::pack(const std::vector<int>& occ) const {
    // FNV-style fold; collisions are resolved by the equality check in
    // index_of, so this only needs to spread well.
    std::size_t h = 1469598103934665603ull;
    for (int n : occ) {
        h ^= static_cast<std::size_t>(n) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

std::size_t FockBasis::index_of(const std::vector<int>& occ) const {
    if (occ.size() != n_modes_) return npos;
    auto range = lookup_.equal_range(pack(occ));
    for (auto it = range.first; it != range.second; ++it)
        if (states_[it->second] == occ) return it->second;
    return npos;
}

std::size_t FockBasis::lowered(std::size_t idx, std::size_t mode) const {
    std::vector<int> occ = states_[idx];
    if (occ[mode] == 0) return npos;
    --occ[mode];
    return index_of(occ);
}

std::size_t FockBasis::raised(std::size_t idx, std::size_t mode) const {
    std::vector<int> occ = states_[idx];
    if (occ[mode] >= static_cast<int>(n_max_) || totals_[idx] >= static_cast<int>(m_max_))
        return npos;
    ++occ[mode];
    return index_of(occ);
}

} // namespace nelson
