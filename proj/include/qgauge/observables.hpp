#ifndef QGAUGE_OBSERVABLES_HPP
#define QGAUGE_OBSERVABLES_HPP

#include <optional>
#include <span>
#include <vector>

#include "qgauge/hamiltonian.hpp"

namespace qgauge {

struct ObservableRecord {
    double time = 0.0;
    double norm = 0.0;
    double dipole = 0.0;
    std::vector<double> position;      // <x_l> per particle
    std::vector<double> mech_momentum; // <p - qA> per particle (gauge invariant)
    double kinetic_energy = 0.0;
    double total_energy = 0.0; // <H>, gauge dependent
    double edge_density = 0.0;
    double dipole_acceleration = 0.0; // Ehrenfest force route
    std::optional<std::vector<double>> charge_density;
    std::optional<std::vector<double>> current_density;
    std::optional<std::vector<double>> polarization;
};

/// rho(x) = sum_l e_l * (marginal density of particle l); integrates to the
/// total charge.
std::vector<double> charge_density(const WaveFunction& psi,
                                   std::span<const ParticleSpec> particles);

struct CurrentDensity {
    std::vector<double> total;
    std::vector<double> paramagnetic;
    std::vector<double> diamagnetic;
};

/// J(x) = sum_l (e_l/m_l) [ Im(marginal psi* d_l psi) - e_l A(x,t) n_l(x) ].
CurrentDensity current_density(const WaveFunction& psi, const HamiltonianSpec& spec, double t);

/// <sum_l e_l x_l> over quantum particles.
double dipole(const WaveFunction& psi, std::span<const ParticleSpec> particles);

/// <x_l> per particle.
std::vector<double> position_expectation(const WaveFunction& psi);

/// P(x) = -int_{x_min}^{x} rho dx' (trapezoidal). Sets *non_neutral when the
/// profile fails to vanish at the far boundary.
std::vector<double> polarization_profile(const Grid& grid, std::span<const double> rho,
                                         bool* non_neutral = nullptr,
                                         double neutral_tol = 1e-8);

/// <p_l - e_l A(x_l,t)> per particle.
std::vector<double> mechanical_momentum(const WaveFunction& psi, const HamiltonianSpec& spec,
                                        double t);

/// <H>; not gauge invariant, shifts by -<sum_l e_l dchi/dt> under a gauge
/// transformation.
double energy_expectation(const WaveFunction& psi, const HamiltonianSpec& spec, double t);

/// <H> minus all multiplicative potentials: the mechanical kinetic energy
/// <(p-qA)^2/2m> summed over particles.
double kinetic_energy(const WaveFunction& psi, const HamiltonianSpec& spec, double t);

/// Probability fraction in the outermost 5% of points on each side.
double edge_fraction(const WaveFunction& psi);

/// d^2/dt^2 of the dipole via the Ehrenfest force expectation
/// sum_l (e_l/m_l)(<-dV/dx_l> + e_l E_drive(t)); uniform-drive forms only.
double dipole_acceleration(const WaveFunction& psi, const HamiltonianSpec& spec,
                           std::span<const std::vector<double>> forces, double t);

struct RecordOptions {
    bool density = false;
    bool current = false;
    bool polarization = false;
};

ObservableRecord extract_observables(const WaveFunction& psi, const HamiltonianSpec& spec,
                                     double t, const RecordOptions& opts = {});

} // namespace qgauge

#endif
