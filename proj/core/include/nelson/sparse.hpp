#ifndef NELSON_SPARSE_HPP
#define NELSON_SPARSE_HPP

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace nelson {

// Immutable complex sparse matrix in CSR form, built from (row, col, value)
// triplets that get sorted canonically and merged. Values are shared freely
// across threads after construction.
class SparseOperator {
public:
    using Triplet = std::tuple<std::size_t, std::size_t, std::complex<double>>;

    SparseOperator() = default;
    SparseOperator(std::size_t dim, std::vector<Triplet> triplets);

    std::size_t dim() const { return dim_; }
    std::size_t nonzeros() const { return vals_.size(); }

    void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;
    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

    // max_{ij} |A_ij - conj(A_ji)|
    double hermiticity_defect() const;
    bool is_hermitian(double tol = 1e-13) const { return hermiticity_defect() < tol; }

    Eigen::MatrixXcd dense() const;

    // Crude upper bound on the spectral radius (max row sum), used by the
    // propagator to size substeps.
    double norm_bound() const;

    SparseOperator adjoint() const;

    static SparseOperator add(const SparseOperator& a, const SparseOperator& b,
                              std::complex<double> ca = 1.0, std::complex<double> cb = 1.0);

    // Debug dump: "dim nnz" header then one "row col re im" line per entry.
    // Not a stability-guaranteed format.
    void dump(std::ostream& os) const;

    const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
    const std::vector<std::size_t>& cols() const { return cols_; }
    const std::vector<std::complex<double>>& values() const { return vals_; }

private:
    std::size_t dim_ = 0;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::size_t> cols_;
    std::vector<std::complex<double>> vals_;
};

} // namespace nelson

#endif
