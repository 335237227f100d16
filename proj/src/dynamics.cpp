#include "qgauge/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qgauge/errors.hpp"
#include "qgauge/solver.hpp"

namespace qgauge {

void validate_plan(const PropagationPlan& plan) {
    if (!(plan.dt > 0.0)) throw std::invalid_argument("PropagationPlan: dt must be positive");
    if (plan.n_steps < 1) throw std::invalid_argument("PropagationPlan: n_steps must be >= 1");
    if (plan.record_every < 1)
        throw std::invalid_argument("PropagationPlan: record_every must be >= 1");
    if (!(plan.solver_tol > 0.0) || plan.solver_tol > 1e-12)
        throw std::invalid_argument("PropagationPlan: solver_tol must be in (0, 1e-12]");
}

Propagator::Propagator(const HamiltonianSpec& spec, double solver_tol)
    : spec_(spec), solver_tol_(solver_tol), v_static_(static_potential(spec)) {
    validate_spec(spec_);
}

void Propagator::step(WaveFunction& psi, double t, double dt) {
    step_impl(psi, t + 0.5 * dt, cplx(0.0, 0.5 * dt));
    psi.set_time(t + dt);
}

void Propagator::step_imaginary(WaveFunction& psi, double dtau) {
    step_impl(psi, 0.0, cplx(0.5 * dtau, 0.0));
}

void Propagator::step_impl(WaveFunction& psi, double t_sample, cplx alpha) {
    const Grid& g = spec_.grid;
    const int n = g.n_points;
    auto& a = psi.amplitudes();

    if (g.n_particles == 1) {
        AxisOperator op = build_axis_operator(spec_, 0, t_sample);
        // rhs = (I - alpha H) psi
        rhs_.resize(n);
        for (int i = 0; i < n; ++i) {
            cplx h = (op.diag[i] + v_static_[i]) * a[i];
            if (i + 1 < n) h += op.upper[i] * a[i + 1];
            if (i > 0) h += std::conj(op.upper[i - 1]) * a[i - 1];
            rhs_[i] = a[i] - alpha * h;
        }
        std::vector<cplx> diag(n), upper(n - 1), lower(n - 1);
        for (int i = 0; i < n; ++i) diag[i] = 1.0 + alpha * (op.diag[i] + v_static_[i]);
        for (int i = 0; i + 1 < n; ++i) {
            upper[i] = alpha * op.upper[i];
            lower[i] = alpha * std::conj(op.upper[i]);
        }
        solve_tridiagonal(std::move(diag), upper, lower, rhs_);
        a = rhs_;
        return;
    }

    AxisOperator op1 = build_axis_operator(spec_, 0, t_sample);
    AxisOperator op2 = build_axis_operator(spec_, 1, t_sample);
    const std::size_t total = g.config_size();

    auto apply_m = [&](const std::vector<cplx>& x, std::vector<cplx>& out) {
        // out = x + alpha * H x
        out.assign(total, cplx(0.0, 0.0));
        for (int i = 0; i < n; ++i) {
            std::size_t row = static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) {
                std::size_t idx = row + j;
                cplx h = (op1.diag[i] + op2.diag[j] + v_static_[idx]) * x[idx];
                if (i + 1 < n) h += op1.upper[i] * x[idx + n];
                if (i > 0) h += std::conj(op1.upper[i - 1]) * x[idx - n];
                if (j + 1 < n) h += op2.upper[j] * x[idx + 1];
                if (j > 0) h += std::conj(op2.upper[j - 1]) * x[idx - 1];
                out[idx] = x[idx] + alpha * h;
            }
        }
    };

    // Factorized one-body preconditioner (I + alpha G1)(I + alpha G2).
    std::vector<cplx> d1(n), u1(n - 1), l1(n - 1), d2(n), u2(n - 1), l2(n - 1);
    for (int i = 0; i < n; ++i) {
        d1[i] = 1.0 + alpha * op1.diag[i];
        d2[i] = 1.0 + alpha * op2.diag[i];
    }
    for (int i = 0; i + 1 < n; ++i) {
        u1[i] = alpha * op1.upper[i];
        l1[i] = alpha * std::conj(op1.upper[i]);
        u2[i] = alpha * op2.upper[i];
        l2[i] = alpha * std::conj(op2.upper[i]);
    }
    auto precond = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
        if (&in != &out) out = in;
        for (int j = 0; j < n; ++j)
            solve_tridiagonal_strided(d1, u1, l1, out, j, n, n, scratch_);
        for (int i = 0; i < n; ++i)
            solve_tridiagonal_strided(d2, u2, l2, out, static_cast<std::size_t>(i) * n, 1, n,
                                      scratch_);
    };

    // rhs = (I - alpha H) psi = 2 psi - (I + alpha H) psi
    apply_m(a, rhs_);
    for (std::size_t i = 0; i < total; ++i) rhs_[i] = 2.0 * a[i] - rhs_[i];

    work_ = a; // previous state as initial guess
    auto result = bicgstab(apply_m, precond, rhs_, work_, solver_tol_, 500);
    if (!result.converged)
        throw SolverError("crank-nicolson solve did not converge, residual " +
                              std::to_string(result.residual),
                          result.residual);
    a = work_;
}

void step_crank_nicolson(WaveFunction& psi, const HamiltonianSpec& spec, double t, double dt,
                         double solver_tol) {
    Propagator prop(spec, solver_tol);
    prop.step(psi, t, dt);
}

Trajectory evolve(const WaveFunction& psi0, const HamiltonianSpec& spec,
                  const PropagationPlan& plan, const RecordOptions& opts,
                  std::span<const Observer> observers) {
    validate_plan(plan);
    validate_spec(spec);
    if (psi0.grid() != spec.grid)
        throw std::invalid_argument("evolve: state grid does not match spec grid");

    Trajectory traj;
    WaveFunction psi = psi0;
    const double t0 = psi0.time();
    Propagator prop(spec, plan.solver_tol);

    auto record = [&](int step) {
        double t = t0 + step * plan.dt;
        ObservableRecord rec = extract_observables(psi, spec, t, opts);
        if (rec.edge_density > kEdgeGuardFraction)
            throw BoundaryError("boundary_contamination: edge density " +
                                    std::to_string(rec.edge_density) + " at t = " +
                                    std::to_string(t),
                                rec.edge_density, t);
        for (const auto& obs : observers) obs(psi, spec, t, rec);
        traj.records.push_back(std::move(rec));
    };

    record(0);
    for (int step = 1; step <= plan.n_steps; ++step) {
        prop.step(psi, t0 + (step - 1) * plan.dt, plan.dt);
        psi.set_time(t0 + step * plan.dt);
        if (step % plan.record_every == 0 || step == plan.n_steps) record(step);
    }
    traj.final_state = std::move(psi);
    return traj;
}

bool drive_is_static(const HamiltonianSpec& spec) {
    auto ok = [](const TimeProfile& p, int d, double coeff) {
        return coeff == 0.0 || is_static_time_term(p, d);
    };
    for (const auto& t : spec.fields.a_pot.terms)
        if (!ok(t.time, t.t_deriv, t.coeff)) return false;
    for (const auto& t : spec.fields.phi.terms)
        if (!ok(t.time, t.t_deriv, t.coeff)) return false;
    for (const auto& t : spec.fields.e0.terms)
        if (!ok(t.time, t.t_deriv, t.coeff)) return false;
    for (const auto& t : spec.efield.terms)
        if (!ok(t.time, t.t_deriv, t.coeff)) return false;
    return true;
}

GroundStateResult ground_state_imaginary_time(const HamiltonianSpec& spec, double tol,
                                              const GroundStateOptions& opts) {
    validate_spec(spec);
    if (!drive_is_static(spec))
        throw std::invalid_argument(
            "ground_state_imaginary_time: spec carries a time-dependent drive");

    const Grid& g = spec.grid;
    const int n = g.n_points;

    // Nodeless Gaussian seeded at the potential minimum.
    std::vector<double> v = static_potential(spec);
    std::size_t imin = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[imin]) imin = i;
    double c1, c2 = 0.0;
    if (g.n_particles == 1) {
        c1 = g.coordinate(static_cast<int>(imin));
    } else {
        c1 = g.coordinate(static_cast<int>(imin) / n);
        c2 = g.coordinate(static_cast<int>(imin) % n);
    }
    const double sigma = 1.0;

    WaveFunction psi(g, 0.0);
    auto gauss = [&](double x, double c) { return std::exp(-(x - c) * (x - c) / (2.0 * sigma * sigma)); };
    if (g.n_particles == 1) {
        for (int i = 0; i < n; ++i) psi[i] = gauss(g.coordinate(i), c1);
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                psi[static_cast<std::size_t>(i) * n + j] =
                    gauss(g.coordinate(i), c1) * gauss(g.coordinate(j), c2);
    }
    psi.normalize();

    Propagator prop(spec, 1e-12);
    auto rayleigh = [&](const WaveFunction& s) { return energy_expectation(s, spec, 0.0); };

    double e_prev = rayleigh(psi);
    for (int it = 1; it <= opts.max_iterations; ++it) {
        prop.step_imaginary(psi, opts.dtau);
        psi.normalize();
        double e = rayleigh(psi);
        if (std::fabs(e - e_prev) < tol)
            return GroundStateResult{std::move(psi), e, it};
        e_prev = e;
    }
    throw SolverError("imaginary-time relaxation did not converge within " +
                          std::to_string(opts.max_iterations) + " iterations",
                      std::fabs(e_prev));
}

} // namespace qgauge
