#ifndef QGAUGE_FIELDS_HPP
#define QGAUGE_FIELDS_HPP

#include <span>
#include <utility>
#include <vector>

#include "qgauge/grid.hpp"
#include "qgauge/profiles.hpp"

namespace qgauge {

/// Electromagnetic potentials in one dimension: scalar potential phi(x,t),
/// vector potential a_pot(x,t) (its single spatial component), and the
/// homogeneous longitudinal field e0(t), spatially constant by construction.
struct FieldConfig {
    SpaceTimeField phi;
    SpaceTimeField a_pot;
    Drive e0;

    bool operator==(const FieldConfig&) const = default;
};

/// Gauge scalar chi(x,t) with analytic spatial gradient and time derivative.
struct GaugeFunction {
    SpaceTimeField chi;

    double value(double x, double t) const { return chi.value(x, t); }
    double grad(double x, double t) const { return chi.dx(x, t); }
    double dt(double x, double t) const { return chi.dt(x, t); }

    bool operator==(const GaugeFunction&) const = default;
};

/// A' = A + grad(chi), phi' = phi - dt(chi); e0 is untouched.
FieldConfig apply_gauge_to_fields(const FieldConfig& fields, const GaugeFunction& chi);

/// Theta over the configuration grid: Theta(x1,..) = sum_l e_l chi(x_l, t).
std::vector<double> gauge_phase(const GaugeFunction& chi, std::span<const ParticleSpec> particles,
                                const Grid& grid, double t);

/// psi' = exp(i Theta) psi, with Theta evaluated at psi.time().
WaveFunction apply_gauge_to_state(const WaveFunction& psi, const GaugeFunction& chi,
                                  std::span<const ParticleSpec> particles);

/// Gauges away the spatially varying part of A via chi(x,t) = -int A dx'
/// (trapezoidal from x_min). Spatially uniform terms of A are kept as the
/// homogeneous A(t) of the dipole-approximation convention.
std::pair<FieldConfig, GaugeFunction> to_coulomb_gauge(const FieldConfig& fields,
                                                       const Grid& grid);

/// E(x,t) = -dA/dt - dphi/dx + e0(t), from the analytic term derivatives.
double electric_field(const FieldConfig& fields, double x, double t);

struct ChargeDensityProfile {
    Grid grid;
    std::vector<double> rho;

    double total_charge() const;
};

/// Solution of the 1D Gauss law dE/dx = rho split into the homogeneous part
/// e0 and the charge-induced part (1/2) int sign(x-x') rho(x') dx'.
struct LongitudinalField {
    double homogeneous = 0.0;
    std::vector<double> induced;
    std::vector<double> total;
};

LongitudinalField longitudinal_field_1d(const ChargeDensityProfile& rho, double e0);

} // namespace qgauge

#endif
