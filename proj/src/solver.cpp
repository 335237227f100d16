#include "qgauge/solver.hpp"

#include <cmath>

namespace qgauge {

void solve_tridiagonal(std::vector<cplx> diag, const std::vector<cplx>& upper,
                       const std::vector<cplx>& lower, std::vector<cplx>& rhs) {
    std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        cplx w = lower[i - 1] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

void solve_tridiagonal_strided(const std::vector<cplx>& diag, const std::vector<cplx>& upper,
                               const std::vector<cplx>& lower, std::vector<cplx>& rhs,
                               std::size_t offset, std::size_t stride, int n,
                               std::vector<cplx>& scratch) {
    // scratch holds the modified diagonal.
    scratch.resize(n);
    scratch[0] = diag[0];
    for (int i = 1; i < n; ++i) {
        cplx w = lower[i - 1] / scratch[i - 1];
        scratch[i] = diag[i] - w * upper[i - 1];
        rhs[offset + i * stride] -= w * rhs[offset + (i - 1) * stride];
    }
    rhs[offset + (n - 1) * stride] /= scratch[n - 1];
    for (int i = n - 1; i-- > 0;)
        rhs[offset + i * stride] =
            (rhs[offset + i * stride] - upper[i] * rhs[offset + (i + 1) * stride]) / scratch[i];
}

namespace {

double norm2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& a : v) s += std::norm(a);
    return std::sqrt(s);
}

cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

} // namespace

IterativeResult bicgstab(const LinearOp& apply, const LinearOp& precond,
                         const std::vector<cplx>& b, std::vector<cplx>& x, double tol,
                         int max_iter) {
    const std::size_t n = b.size();
    std::vector<cplx> r(n), rhat(n), v(n, 0.0), p(n, 0.0), phat(n), s(n), shat(n), t(n);

    apply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    rhat = r;

    double bnorm = norm2(b);
    if (bnorm == 0.0) bnorm = 1.0;

    IterativeResult res;
    res.residual = norm2(r) / bnorm;
    if (res.residual < tol) {
        res.converged = true;
        return res;
    }

    cplx rho(1.0, 0.0), alpha(1.0, 0.0), omega(1.0, 0.0);
    for (int it = 1; it <= max_iter; ++it) {
        cplx rho_new = dot(rhat, r);
        if (std::abs(rho_new) < 1e-300) break; // breakdown
        if (it == 1) {
            p = r;
        } else {
            cplx beta = (rho_new / rho) * (alpha / omega);
            for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        phat = p;
        if (precond) precond(phat, phat);
        apply(phat, v);
        alpha = rho_new / dot(rhat, v);
        for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
        if (norm2(s) / bnorm < tol) {
            for (std::size_t i = 0; i < n; ++i) x[i] += alpha * phat[i];
            res.iterations = it;
            res.residual = norm2(s) / bnorm;
            res.converged = true;
            return res;
        }
        shat = s;
        if (precond) precond(shat, shat);
        apply(shat, t);
        cplx tt = dot(t, t);
        if (std::abs(tt) < 1e-300) break;
        omega = dot(t, s) / tt;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * phat[i] + omega * shat[i];
            r[i] = s[i] - omega * t[i];
        }
        res.iterations = it;
        res.residual = norm2(r) / bnorm;
        if (res.residual < tol) {
            res.converged = true;
            return res;
        }
        rho = rho_new;
    }
    return res;
}

} // namespace qgauge
