#ifndef QGAUGE_HAMILTONIAN_HPP
#define QGAUGE_HAMILTONIAN_HPP

#include <span>
#include <vector>

#include "qgauge/fields.hpp"
#include "qgauge/grid.hpp"
#include "qgauge/potential.hpp"
#include "qgauge/profiles.hpp"

namespace qgauge {

/// Which realization of the matter Hamiltonian acts on the state:
///  - general: minimal coupling with arbitrary A(x,t), phi(x,t)
///  - coulomb: spatially uniform A(t) plus homogeneous field e0(t) coupled
///    through the many-body dipole operator
///  - length:  drive enters only as -E(t) * dipole
enum class GaugeForm { general, coulomb, length };

struct HamiltonianSpec {
    GaugeForm gauge_form = GaugeForm::general;
    Grid grid;
    std::vector<ParticleSpec> particles;
    FieldConfig fields;       // general/coulomb forms
    Drive efield;             // length form
    PotentialGrid internal_potential;
    PotentialGrid external_potential;
    double softening = 1.0;
};

/// Throws if the spec is internally inconsistent (grid/particle mismatch,
/// spatially varying A under the coulomb form).
void validate_spec(const HamiltonianSpec& spec);

/// One-body tridiagonal operator along a particle axis at fixed time;
/// the lower diagonal is the conjugate of the upper one.
struct AxisOperator {
    std::vector<double> diag;
    std::vector<cplx> upper;
};

AxisOperator build_axis_operator(const HamiltonianSpec& spec, int particle, double t);

/// Static configuration-space potential U_C + U_ie.
std::vector<double> static_potential(const HamiltonianSpec& spec);

/// All multiplicative (diagonal) parts of H at time t except the A^2 term:
/// U_C + U_ie plus the gauge-form drive diagonal.
std::vector<double> diagonal_potential(const HamiltonianSpec& spec, double t);

/// H psi with the centered 3-point second difference and the symmetrized
/// first-derivative coupling; Dirichlet boundaries.
void apply_hamiltonian(const WaveFunction& psi, const HamiltonianSpec& spec, double t,
                       std::vector<cplx>& out);
std::vector<cplx> apply_hamiltonian(const WaveFunction& psi, const HamiltonianSpec& spec,
                                    double t);

// Named forms; each checks the spec is in the corresponding gauge form.
std::vector<cplx> apply_hamiltonian_general(const WaveFunction& psi, const HamiltonianSpec& spec,
                                            double t);
std::vector<cplx> apply_hamiltonian_coulomb(const WaveFunction& psi, const HamiltonianSpec& spec,
                                            double t);
std::vector<cplx> apply_hamiltonian_length(const WaveFunction& psi, const HamiltonianSpec& spec,
                                           double t);

/// A(x, t) seen by the given form (zero in the length form).
double vector_potential_at(const HamiltonianSpec& spec, double x, double t);

/// Total drive electric field at time t for uniform-drive forms
/// (coulomb: -dA/dt + e0; length: E(t)); used by the Ehrenfest force route.
double drive_electric_field(const HamiltonianSpec& spec, double t);

/// sum_l e_l x_l per configuration point.
std::vector<double> dipole_coordinate(const Grid& grid, std::span<const ParticleSpec> particles);

} // namespace qgauge

#endif
