#ifndef QGAUGE_SOLVER_HPP
#define QGAUGE_SOLVER_HPP

#include <functional>
#include <vector>

#include "qgauge/grid.hpp"

namespace qgauge {

/// In-place Thomas solve of a complex tridiagonal system with contiguous
/// storage. lower[i] couples row i+1 to row i.
void solve_tridiagonal(std::vector<cplx> diag, const std::vector<cplx>& upper,
                       const std::vector<cplx>& lower, std::vector<cplx>& rhs);

/// Strided Thomas solve over rhs[offset + k*stride], k = 0..n-1.
void solve_tridiagonal_strided(const std::vector<cplx>& diag, const std::vector<cplx>& upper,
                               const std::vector<cplx>& lower, std::vector<cplx>& rhs,
                               std::size_t offset, std::size_t stride, int n,
                               std::vector<cplx>& scratch);

struct IterativeResult {
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

using LinearOp = std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>;

/// Preconditioned BiCGSTAB; `precond` solves P z = r in place (identity if
/// null). Deterministic for fixed inputs.
IterativeResult bicgstab(const LinearOp& apply, const LinearOp& precond,
                         const std::vector<cplx>& b, std::vector<cplx>& x, double tol,
                         int max_iter);

} // namespace qgauge

#endif
