#include "qgauge/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace qgauge {

double soft_coulomb_pair(double q1, double q2, double separation, double softening) {
    if (!(softening > 0.0))
        throw std::invalid_argument("soft_coulomb_pair: softening must be positive");
    return q1 * q2 / std::sqrt(separation * separation + softening * softening);
}

double soft_coulomb_pair_dd(double q1, double q2, double separation, double softening) {
    double r2 = separation * separation + softening * softening;
    return -q1 * q2 * separation / (r2 * std::sqrt(r2));
}

PotentialGrid zero_potential(const Grid& grid) {
    return PotentialGrid{grid, std::vector<double>(grid.config_size(), 0.0)};
}

namespace {

// Particle-charge sum along one axis.
std::vector<double> axis_charge_sum(double q_particle, const Grid& grid,
                                    std::span<const PointCharge> charges, double a) {
    std::vector<double> v(grid.n_points, 0.0);
    for (int i = 0; i < grid.n_points; ++i) {
        double x = grid.coordinate(i);
        for (const auto& c : charges) v[i] += soft_coulomb_pair(q_particle, c.charge, x - c.position, a);
    }
    return v;
}

} // namespace

PotentialGrid build_internal_potential(std::span<const ParticleSpec> particles, const Grid& grid,
                                       double softening,
                                       std::span<const PointCharge> fixed_nuclei) {
    if (static_cast<int>(particles.size()) != grid.n_particles)
        throw std::invalid_argument("build_internal_potential: particle count mismatch");
    PotentialGrid out = zero_potential(grid);

    // Nucleus-nucleus pairs shift the energy by a constant; include them so
    // the total matches the pair sum exactly.
    double nuc_const = 0.0;
    for (std::size_t a = 0; a < fixed_nuclei.size(); ++a)
        for (std::size_t b = a + 1; b < fixed_nuclei.size(); ++b)
            nuc_const += soft_coulomb_pair(fixed_nuclei[a].charge, fixed_nuclei[b].charge,
                                           fixed_nuclei[a].position - fixed_nuclei[b].position,
                                           softening);

    if (grid.n_particles == 1) {
        auto v1 = axis_charge_sum(particles[0].charge, grid, fixed_nuclei, softening);
        for (int i = 0; i < grid.n_points; ++i) out.values[i] = v1[i] + nuc_const;
        return out;
    }

    auto v1 = axis_charge_sum(particles[0].charge, grid, fixed_nuclei, softening);
    auto v2 = axis_charge_sum(particles[1].charge, grid, fixed_nuclei, softening);
    int n = grid.n_points;
    for (int i = 0; i < n; ++i) {
        double xi = grid.coordinate(i);
        for (int j = 0; j < n; ++j) {
            double pair = soft_coulomb_pair(particles[0].charge, particles[1].charge,
                                            xi - grid.coordinate(j), softening);
            out.values[static_cast<std::size_t>(i) * n + j] = v1[i] + v2[j] + pair + nuc_const;
        }
    }
    return out;
}

PotentialGrid build_external_potential(std::span<const PointCharge> external_charges,
                                       std::span<const ParticleSpec> particles, const Grid& grid,
                                       double softening) {
    if (static_cast<int>(particles.size()) != grid.n_particles)
        throw std::invalid_argument("build_external_potential: particle count mismatch");
    PotentialGrid out = zero_potential(grid);
    if (external_charges.empty()) return out;

    if (grid.n_particles == 1) {
        out.values = axis_charge_sum(particles[0].charge, grid, external_charges, softening);
        return out;
    }

    auto v1 = axis_charge_sum(particles[0].charge, grid, external_charges, softening);
    auto v2 = axis_charge_sum(particles[1].charge, grid, external_charges, softening);
    int n = grid.n_points;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.values[static_cast<std::size_t>(i) * n + j] = v1[i] + v2[j];
    return out;
}

std::vector<double> potential_force(std::span<const ParticleSpec> particles, const Grid& grid,
                                    double softening, std::span<const PointCharge> fixed_nuclei,
                                    std::span<const PointCharge> external_charges, int particle) {
    if (particle < 0 || particle >= grid.n_particles)
        throw std::invalid_argument("potential_force: particle index out of range");

    // Force from all fixed charges along this particle's axis.
    auto axis_force = [&](double q) {
        std::vector<double> f(grid.n_points, 0.0);
        for (int i = 0; i < grid.n_points; ++i) {
            double x = grid.coordinate(i);
            for (const auto& c : fixed_nuclei)
                f[i] -= soft_coulomb_pair_dd(q, c.charge, x - c.position, softening);
            for (const auto& c : external_charges)
                f[i] -= soft_coulomb_pair_dd(q, c.charge, x - c.position, softening);
        }
        return f;
    };

    if (grid.n_particles == 1) return axis_force(particles[0].charge);

    int n = grid.n_points;
    auto f_axis = axis_force(particles[particle].charge);
    std::vector<double> f(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        double xi = grid.coordinate(i);
        for (int j = 0; j < n; ++j) {
            double sep = xi - grid.coordinate(j); // x1 - x2
            // pair force on the chosen particle: -d/dx_l of the pair term
            double pair = -soft_coulomb_pair_dd(particles[0].charge, particles[1].charge, sep,
                                                softening);
            if (particle == 1) pair = -pair;
            std::size_t idx = static_cast<std::size_t>(i) * n + j;
            f[idx] = (particle == 0 ? f_axis[i] : f_axis[j]) + pair;
        }
    }
    return f;
}

} // namespace qgauge
