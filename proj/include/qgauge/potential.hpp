#ifndef QGAUGE_POTENTIAL_HPP
#define QGAUGE_POTENTIAL_HPP

#include <span>
#include <vector>

#include "qgauge/grid.hpp"

namespace qgauge {

struct PointCharge {
    double charge = 0.0;
    double position = 0.0;

    bool operator==(const PointCharge&) const = default;
};

/// Softened pair interaction q1*q2 / sqrt(d^2 + a^2); like charges repel.
double soft_coulomb_pair(double q1, double q2, double separation, double softening);

/// d/dd of soft_coulomb_pair at separation d.
double soft_coulomb_pair_dd(double q1, double q2, double separation, double softening);

struct PotentialGrid {
    Grid grid;
    std::vector<double> values;

    bool operator==(const PotentialGrid&) const = default;
};

PotentialGrid zero_potential(const Grid& grid);

/// Softened Coulomb energy of all unordered particle-particle and
/// particle-nucleus pairs (self terms excluded); enters the Hamiltonian
/// with a plus sign.
PotentialGrid build_internal_potential(std::span<const ParticleSpec> particles, const Grid& grid,
                                       double softening, std::span<const PointCharge> fixed_nuclei);

/// Softened interaction of each particle with each external point charge.
PotentialGrid build_external_potential(std::span<const PointCharge> external_charges,
                                       std::span<const ParticleSpec> particles, const Grid& grid,
                                       double softening);

/// -d/dx_l of the summed internal+external potential, on the configuration
/// grid, for the Ehrenfest force expectation.
std::vector<double> potential_force(std::span<const ParticleSpec> particles, const Grid& grid,
                                    double softening, std::span<const PointCharge> fixed_nuclei,
                                    std::span<const PointCharge> external_charges, int particle);

} // namespace qgauge

#endif
