#include "qgauge/hamiltonian.hpp"

#include <stdexcept>

#include "qgauge/errors.hpp"

namespace qgauge {

void validate_spec(const HamiltonianSpec& spec) {
    if (static_cast<int>(spec.particles.size()) != spec.grid.n_particles)
        throw std::invalid_argument("HamiltonianSpec: particle count does not match grid");
    if (spec.internal_potential.values.size() != spec.grid.config_size() ||
        spec.external_potential.values.size() != spec.grid.config_size())
        throw std::invalid_argument("HamiltonianSpec: potential grids do not match grid");
    if (spec.gauge_form == GaugeForm::coulomb && !spec.fields.a_pot.spatially_uniform())
        throw ScenarioError("coulomb form requires a spatially uniform vector potential");
}

AxisOperator build_axis_operator(const HamiltonianSpec& spec, int particle, double t) {
    const Grid& g = spec.grid;
    const ParticleSpec& p = spec.particles[particle];
    const double m = p.mass;
    const double q = p.charge;
    const double inv_dx2 = 1.0 / (g.dx * g.dx);

    AxisOperator op;
    op.diag.resize(g.n_points);
    op.upper.resize(g.n_points - 1);

    // Vector potential per axis point (zero in the length form).
    std::vector<double> a(g.n_points, 0.0);
    if (spec.gauge_form != GaugeForm::length && !spec.fields.a_pot.empty())
        for (int i = 0; i < g.n_points; ++i) a[i] = spec.fields.a_pot.value(g.coordinate(i), t);

    for (int i = 0; i < g.n_points; ++i)
        op.diag[i] = inv_dx2 / m + q * q * a[i] * a[i] / (2.0 * m);

    // Drive diagonal: q*phi in the general form, -(e0 or E)*q*x otherwise.
    switch (spec.gauge_form) {
    case GaugeForm::general: {
        if (!spec.fields.phi.empty())
            for (int i = 0; i < g.n_points; ++i)
                op.diag[i] += q * spec.fields.phi.value(g.coordinate(i), t);
        if (!spec.fields.e0.empty()) {
            double e0 = spec.fields.e0.value(t);
            for (int i = 0; i < g.n_points; ++i) op.diag[i] -= e0 * q * g.coordinate(i);
        }
        break;
    }
    case GaugeForm::coulomb: {
        if (!spec.fields.e0.empty()) {
            double e0 = spec.fields.e0.value(t);
            for (int i = 0; i < g.n_points; ++i) op.diag[i] -= e0 * q * g.coordinate(i);
        }
        break;
    }
    case GaugeForm::length: {
        if (!spec.efield.empty()) {
            double ef = spec.efield.value(t);
            for (int i = 0; i < g.n_points; ++i) op.diag[i] -= ef * q * g.coordinate(i);
        }
        break;
    }
    }

    // Symmetrized coupling -i q/(2m) (A d + d A) keeps the matrix Hermitian.
    const double half_inv = -0.5 * inv_dx2 / m;
    for (int i = 0; i + 1 < g.n_points; ++i)
        op.upper[i] = cplx(half_inv, q * (a[i] + a[i + 1]) / (4.0 * m * g.dx));
    return op;
}

std::vector<double> static_potential(const HamiltonianSpec& spec) {
    std::vector<double> v = spec.internal_potential.values;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += spec.external_potential.values[i];
    return v;
}

std::vector<double> diagonal_potential(const HamiltonianSpec& spec, double t) {
    std::vector<double> v = static_potential(spec);
    const Grid& g = spec.grid;
    int n = g.n_points;

    auto add_axis = [&](const std::vector<double>& axis, int particle) {
        if (g.n_particles == 1) {
            for (int i = 0; i < n; ++i) v[i] += axis[i];
        } else if (particle == 0) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(i) * n + j] += axis[i];
        } else {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(i) * n + j] += axis[j];
        }
    };

    for (int l = 0; l < g.n_particles; ++l) {
        const double q = spec.particles[l].charge;
        std::vector<double> axis(n, 0.0);
        switch (spec.gauge_form) {
        case GaugeForm::general:
            if (!spec.fields.phi.empty())
                for (int i = 0; i < n; ++i) axis[i] += q * spec.fields.phi.value(g.coordinate(i), t);
            if (!spec.fields.e0.empty()) {
                double e0 = spec.fields.e0.value(t);
                for (int i = 0; i < n; ++i) axis[i] -= e0 * q * g.coordinate(i);
            }
            break;
        case GaugeForm::coulomb:
            if (!spec.fields.e0.empty()) {
                double e0 = spec.fields.e0.value(t);
                for (int i = 0; i < n; ++i) axis[i] -= e0 * q * g.coordinate(i);
            }
            break;
        case GaugeForm::length:
            if (!spec.efield.empty()) {
                double ef = spec.efield.value(t);
                for (int i = 0; i < n; ++i) axis[i] -= ef * q * g.coordinate(i);
            }
            break;
        }
        add_axis(axis, l);
    }
    return v;
}

namespace {

// out += axis operator applied along the given particle axis.
void apply_axis(const AxisOperator& op, const std::vector<cplx>& psi, int n, int n_particles,
                int particle, std::vector<cplx>& out) {
    if (n_particles == 1) {
        for (int i = 0; i < n; ++i) {
            cplx v = op.diag[i] * psi[i];
            if (i + 1 < n) v += op.upper[i] * psi[i + 1];
            if (i > 0) v += std::conj(op.upper[i - 1]) * psi[i - 1];
            out[i] += v;
        }
        return;
    }
    if (particle == 0) {
        // slow index: stride n
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                std::size_t idx = static_cast<std::size_t>(i) * n + j;
                cplx v = op.diag[i] * psi[idx];
                if (i + 1 < n) v += op.upper[i] * psi[idx + n];
                if (i > 0) v += std::conj(op.upper[i - 1]) * psi[idx - n];
                out[idx] += v;
            }
        }
    } else {
        for (int i = 0; i < n; ++i) {
            std::size_t row = static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) {
                cplx v = op.diag[j] * psi[row + j];
                if (j + 1 < n) v += op.upper[j] * psi[row + j + 1];
                if (j > 0) v += std::conj(op.upper[j - 1]) * psi[row + j - 1];
                out[row + j] += v;
            }
        }
    }
}

} // namespace

void apply_hamiltonian(const WaveFunction& psi, const HamiltonianSpec& spec, double t,
                       std::vector<cplx>& out) {
    if (psi.grid() != spec.grid)
        throw std::invalid_argument("apply_hamiltonian: state grid does not match spec grid");
    validate_spec(spec);

    out.assign(psi.size(), cplx(0.0, 0.0));
    const int n = spec.grid.n_points;
    for (int l = 0; l < spec.grid.n_particles; ++l) {
        AxisOperator op = build_axis_operator(spec, l, t);
        apply_axis(op, psi.amplitudes(), n, spec.grid.n_particles, l, out);
    }
    std::vector<double> v = static_potential(spec);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i] * psi[i];
}

std::vector<cplx> apply_hamiltonian(const WaveFunction& psi, const HamiltonianSpec& spec,
                                    double t) {
    std::vector<cplx> out;
    apply_hamiltonian(psi, spec, t, out);
    return out;
}

std::vector<cplx> apply_hamiltonian_general(const WaveFunction& psi, const HamiltonianSpec& spec,
                                            double t) {
    if (spec.gauge_form != GaugeForm::general)
        throw std::invalid_argument("apply_hamiltonian_general: spec is not in the general form");
    return apply_hamiltonian(psi, spec, t);
}

std::vector<cplx> apply_hamiltonian_coulomb(const WaveFunction& psi, const HamiltonianSpec& spec,
                                            double t) {
    if (spec.gauge_form != GaugeForm::coulomb)
        throw std::invalid_argument("apply_hamiltonian_coulomb: spec is not in the coulomb form");
    return apply_hamiltonian(psi, spec, t);
}

std::vector<cplx> apply_hamiltonian_length(const WaveFunction& psi, const HamiltonianSpec& spec,
                                           double t) {
    if (spec.gauge_form != GaugeForm::length)
        throw std::invalid_argument("apply_hamiltonian_length: spec is not in the length form");
    return apply_hamiltonian(psi, spec, t);
}

double vector_potential_at(const HamiltonianSpec& spec, double x, double t) {
    if (spec.gauge_form == GaugeForm::length || spec.fields.a_pot.empty()) return 0.0;
    return spec.fields.a_pot.value(x, t);
}

double drive_electric_field(const HamiltonianSpec& spec, double t) {
    switch (spec.gauge_form) {
    case GaugeForm::coulomb:
        return -spec.fields.a_pot.dt(0.0, t) + spec.fields.e0.value(t);
    case GaugeForm::length:
        return spec.efield.value(t);
    case GaugeForm::general:
        // Meaningful only for spatially uniform drives.
        return electric_field(spec.fields, 0.0, t);
    }
    return 0.0;
}

std::vector<double> dipole_coordinate(const Grid& grid, std::span<const ParticleSpec> particles) {
    int n = grid.n_points;
    if (grid.n_particles == 1) {
        std::vector<double> d(n);
        for (int i = 0; i < n; ++i) d[i] = particles[0].charge * grid.coordinate(i);
        return d;
    }
    std::vector<double> d(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        double d1 = particles[0].charge * grid.coordinate(i);
        for (int j = 0; j < n; ++j)
            d[static_cast<std::size_t>(i) * n + j] = d1 + particles[1].charge * grid.coordinate(j);
    }
    return d;
}

} // namespace qgauge
