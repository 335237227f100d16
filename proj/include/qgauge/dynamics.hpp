#ifndef QGAUGE_DYNAMICS_HPP
#define QGAUGE_DYNAMICS_HPP

#include <functional>
#include <span>
#include <vector>

#include "qgauge/hamiltonian.hpp"
#include "qgauge/observables.hpp"

namespace qgauge {

struct PropagationPlan {
    double dt = 0.01;
    int n_steps = 1;
    int record_every = 1;
    double solver_tol = 1e-12;

    bool operator==(const PropagationPlan&) const = default;
};

void validate_plan(const PropagationPlan& plan);

/// Crank-Nicolson stepper; fields are sampled at the half step. Owns the
/// workspaces so repeated stepping does not reallocate.
class Propagator {
public:
    Propagator(const HamiltonianSpec& spec, double solver_tol);

    /// (I + i dt/2 H(t+dt/2)) psi' = (I - i dt/2 H(t+dt/2)) psi
    void step(WaveFunction& psi, double t, double dt);
    /// Imaginary-time variant: (I + dtau/2 H) psi' = (I - dtau/2 H) psi.
    void step_imaginary(WaveFunction& psi, double dtau);

    const HamiltonianSpec& spec() const { return spec_; }

private:
    void step_impl(WaveFunction& psi, double t, cplx alpha);

    HamiltonianSpec spec_;
    double solver_tol_;
    std::vector<double> v_static_;
    std::vector<cplx> rhs_, work_, scratch_;
};

void step_crank_nicolson(WaveFunction& psi, const HamiltonianSpec& spec, double t, double dt,
                         double solver_tol = 1e-12);

/// Extra per-record hook (fidelity captures, state dumps, ...).
using Observer =
    std::function<void(const WaveFunction&, const HamiltonianSpec&, double, ObservableRecord&)>;

struct Trajectory {
    std::vector<ObservableRecord> records;
    WaveFunction final_state;
};

/// Repeated Crank-Nicolson stepping with records every record_every steps
/// (plus the initial and final states). Aborts with BoundaryError when the
/// edge density exceeds 1e-6 of the norm.
Trajectory evolve(const WaveFunction& psi0, const HamiltonianSpec& spec,
                  const PropagationPlan& plan, const RecordOptions& opts = {},
                  std::span<const Observer> observers = {});

inline constexpr double kEdgeGuardFraction = 1e-6;

struct GroundStateOptions {
    double dtau = 0.1;
    int max_iterations = 200000;
};

struct GroundStateResult {
    WaveFunction psi;
    double energy = 0.0;
    int iterations = 0;
};

/// Imaginary-time relaxation with per-step renormalization until the
/// Rayleigh quotient settles to within tol between steps. The spec may only
/// carry static drives.
GroundStateResult ground_state_imaginary_time(const HamiltonianSpec& spec, double tol,
                                              const GroundStateOptions& opts = {});

/// True when every drive descriptor in the spec is time independent.
bool drive_is_static(const HamiltonianSpec& spec);

} // namespace qgauge

#endif
