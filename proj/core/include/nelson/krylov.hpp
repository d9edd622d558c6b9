#ifndef NELSON_KRYLOV_HPP
#define NELSON_KRYLOV_HPP

#include <Eigen/Dense>

#include "nelson/sparse.hpp"

namespace nelson {

struct LanczosResult {
    double energy = 0.0;
    Eigen::VectorXcd vector;
    double residual = 0.0;
    int iterations = 0;
};

// Lowest eigenpair of a Hermitian sparse operator by Lanczos with full
// reorthogonalization. Throws (carrying the best residual) if the residual
// does not reach tol within max_iter iterations.
LanczosResult lanczos_ground_state(const SparseOperator& h, double tol = 1e-10,
                                   int max_iter = 500);

// psi(t) = exp(-i t H) psi via adaptive Lanczos-exponential substeps.
// Preserves the norm to the requested tolerance; diagonal operators are
// propagated exactly by elementwise phases.
Eigen::VectorXcd krylov_propagate(const SparseOperator& h, const Eigen::VectorXcd& psi, double t,
                                  double tol = 1e-10, int krylov_dim = 40);

} // namespace nelson

#endif
