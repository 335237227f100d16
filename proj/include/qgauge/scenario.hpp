#ifndef QGAUGE_SCENARIO_HPP
#define QGAUGE_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "qgauge/dynamics.hpp"
#include "qgauge/fields.hpp"
#include "qgauge/grid.hpp"
#include "qgauge/hamiltonian.hpp"
#include "qgauge/potential.hpp"

namespace qgauge {

struct InitialStateSpec {
    enum class Kind { ground_state, gaussian };
    Kind kind = Kind::ground_state;
    double gs_tol = 1e-10;               // imaginary-time energy tolerance
    std::vector<double> centers;         // gaussian packet, one entry per particle
    std::vector<double> widths;
    std::vector<double> momenta;

    bool operator==(const InitialStateSpec&) const = default;
};

/// Optional analytic model potential added to the internal potential
/// (a harmonic well replacing the Coulomb pairs in oscillator scenarios).
struct ModelPotential {
    enum class Kind { none, harmonic };
    Kind kind = Kind::none;
    double omega = 1.0;
    double center = 0.0;

    bool operator==(const ModelPotential&) const = default;
};

struct OutputPlan {
    std::string observables = "observables.csv";
    std::string report = "report.json";
    std::vector<std::string> arrays; // charge_density | current_density | polarization
    int array_every = 1;             // records between array snapshots

    bool operator==(const OutputPlan&) const = default;
};

struct Scenario {
    std::string name;
    Grid grid;
    std::vector<ParticleSpec> particles;
    std::vector<PointCharge> nuclei;
    std::vector<PointCharge> external_charges;
    double softening = 1.0;
    GaugeForm gauge_form = GaugeForm::general;
    SpaceTimeField phi;
    SpaceTimeField a_pot;
    Drive e0;
    Drive efield;
    std::optional<GaugeFunction> chi;
    ModelPotential model_potential;
    InitialStateSpec initial_state;
    PropagationPlan plan;
    OutputPlan outputs;

    bool operator==(const Scenario&) const = default;
};

/// Parses and fully validates a scenario file (strict JSON schema; unknown
/// keys are rejected; error messages carry the offending key path).
Scenario parse_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& text);

/// Canonical serialization; parse(serialize(s)) == s.
std::string serialize_scenario(const Scenario& s);

HamiltonianSpec build_hamiltonian_spec(const Scenario& s);

/// Spec with every time-dependent drive term removed; static terms
/// (constant fields, the Coulomb landscape) survive. Used to relax the
/// initial state.
HamiltonianSpec static_hamiltonian_spec(const Scenario& s);

/// Initial state per scenario: relaxed ground state or a Gaussian packet.
WaveFunction build_initial_state(const Scenario& s);

/// -dV/dx_l per particle on the configuration grid, including the model
/// potential; for the Ehrenfest force expectation.
std::vector<std::vector<double>> build_force_grids(const Scenario& s);

} // namespace qgauge

#endif
