#include "nelson/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "nelson/parallel.hpp"

namespace nelson {

SparseOperator::SparseOperator(std::size_t dim, std::vector<Triplet> triplets) : dim_(dim) {
    for (const auto& [r, c, v] : triplets)
        if (r >= dim_ || c >= dim_)
            throw std::out_of_range("SparseOperator: triplet index out of range");
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        return std::get<1>(a) < std::get<1>(b);
    });
    row_ptr_.assign(dim_ + 1, 0);
    cols_.reserve(triplets.size());
    vals_.reserve(triplets.size());
    std::size_t last_row = static_cast<std::size_t>(-1);
    std::size_t last_col = static_cast<std::size_t>(-1);
    for (const auto& [r, c, v] : triplets) {
        if (!vals_.empty() && r == last_row && c == last_col) {
            vals_.back() += v;
        } else {
            cols_.push_back(c);
            vals_.push_back(v);
            ++row_ptr_[r + 1];
            last_row = r;
            last_col = c;
        }
    }
    for (std::size_t r = 0; r < dim_; ++r) row_ptr_[r + 1] += row_ptr_[r];
}

void SparseOperator::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
    if (static_cast<std::size_t>(x.size()) != dim_)
        throw std::invalid_argument("SparseOperator::apply: dimension mismatch");
    y.resize(static_cast<Eigen::Index>(dim_));
    const std::size_t grain = 4096;
    if (dim_ >= 2 * grain && effective_threads() > 1) {
        parallel_for(dim_, [&](std::size_t r) {
            std::complex<double> acc = 0.0;
            for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
                acc += vals_[p] * x[static_cast<Eigen::Index>(cols_[p])];
            y[static_cast<Eigen::Index>(r)] = acc;
        });
        return;
    }
    for (std::size_t r = 0; r < dim_; ++r) {
        std::complex<double> acc = 0.0;
        for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
            acc += vals_[p] * x[static_cast<Eigen::Index>(cols_[p])];
        y[static_cast<Eigen::Index>(r)] = acc;
    }
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& x) const {
    Eigen::VectorXcd y;
    apply(x, y);
    return y;
}

double SparseOperator::hermiticity_defect() const {
    const SparseOperator at = adjoint();
    double defect = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        std::size_t p = row_ptr_[r], pa = at.row_ptr_[r];
        const std::size_t pe = row_ptr_[r + 1], pae = at.row_ptr_[r + 1];
        while (p < pe || pa < pae) {
            if (p < pe && (pa == pae || cols_[p] < at.cols_[pa])) {
                defect = std::max(defect, std::abs(vals_[p]));
                ++p;
            } else if (pa < pae && (p == pe || at.cols_[pa] < cols_[p])) {
                defect = std::max(defect, std::abs(at.vals_[pa]));
                ++pa;
            } else {
                defect = std::max(defect, std::abs(vals_[p] - at.vals_[pa]));
                ++p;
                ++pa;
            }
        }
    }
    return defect;
}

Eigen::MatrixXcd SparseOperator::dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_),
                                                static_cast<Eigen::Index>(dim_));
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols_[p])) += vals_[p];
    return m;
}

double SparseOperator::norm_bound() const {
    double bound = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        double row = 0.0;
        for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) row += std::abs(vals_[p]);
        bound = std::max(bound, row);
    }
    return bound;
}

SparseOperator SparseOperator::adjoint() const {
    std::vector<Triplet> trip;
    trip.reserve(vals_.size());
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
            trip.emplace_back(cols_[p], r, std::conj(vals_[p]));
    return SparseOperator(dim_, std::move(trip));
}

SparseOperator SparseOperator::add(const SparseOperator& a, const SparseOperator& b,
                                   std::complex<double> ca, std::complex<double> cb) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("SparseOperator::add: dimension mismatch");
    std::vector<Triplet> trip;
    trip.reserve(a.vals_.size() + b.vals_.size());
    for (std::size_t r = 0; r < a.dim_; ++r)
        for (std::size_t p = a.row_ptr_[r]; p < a.row_ptr_[r + 1]; ++p)
            trip.emplace_back(r, a.cols_[p], ca * a.vals_[p]);
    for (std::size_t r = 0; r < b.dim_; ++r)
        for (std::size_t p = b.row_ptr_[r]; p < b.row_ptr_[r + 1]; ++p)
            trip.emplace_back(r, b.cols_[p], cb * b.vals_[p]);
    return SparseOperator(a.dim_, std::move(trip));
}

void SparseOperator::dump(std::ostream& os) const {
    os << dim_ << ' ' << vals_.size() << '\n';
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
            os << r << ' ' << cols_[p] << ' ' << vals_[p].real() << ' ' << vals_[p].imag() << '\n';
}

} // namespace nelson
