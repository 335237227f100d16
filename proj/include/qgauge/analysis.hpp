#ifndef QGAUGE_ANALYSIS_HPP
#define QGAUGE_ANALYSIS_HPP

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qgauge/scenario.hpp"

namespace qgauge {

struct GaugeCheckTolerances {
    double fidelity = 1e-6;     // bound on 1 - |<psi_direct | e^{i Theta} psi_original>|
    double observables = 1e-6;  // relative deltas of gauge-invariant observables
    double energy_shift = 1e-8; // deviation from the -<sum_l e_l dchi/dt> identity
};

/// Outcome of evolving the same physics in two gauges connected by chi.
struct GaugeCheckReport {
    std::string chi_description;
    double final_fidelity = 1.0;
    double min_fidelity = 1.0;
    std::map<std::string, double> observable_deltas;
    double energy_shift_predicted = 0.0; // at the worst record
    double energy_shift_measured = 0.0;
    double energy_shift_max_deviation = 0.0;
    GaugeCheckTolerances tolerances;
    bool pass = false;
    std::string failure_cause;
    std::vector<ObservableRecord> records_original, records_transformed;
};

GaugeCheckReport gauge_invariance_check(const Scenario& scenario, const GaugeFunction& chi,
                                        const GaugeCheckTolerances& tol = {});

struct VlTolerances {
    double dipole_l2 = 1e-5;
    double fidelity = 1e-6;
    double observables = 1e-5;
};

struct VlCheckReport {
    double dipole_l2 = 0.0;
    double final_fidelity = 1.0;
    bool residual_phase_warning = false; // A(T) != 0: states differ by a known phase
    std::map<std::string, double> observable_deltas;
    VlTolerances tolerances;
    bool pass = false;
    std::string failure_cause;
    std::vector<double> times, dipole_velocity, dipole_length;
};

/// Velocity-gauge run (uniform A(t)) against the length-gauge twin driven by
/// E(t) = -dA/dt, sharing the static Hamiltonian and initial state.
VlCheckReport velocity_length_check(const Scenario& scenario, const VlTolerances& tol = {});

enum class KickGauge { length, velocity };

struct ResponseSpectrum {
    std::vector<double> frequencies;
    std::vector<cplx> values; // alpha(omega), dipole per unit field
    double kick_strength = 0.0;
    std::string window = "hann-taper";
    double linearity_deviation = 0.0; // vs kick/2 rerun, relative to peak |alpha|
    bool linearity_ok = true;
};

/// Impulse response: the kick is the analytic delta limit, a phase
/// exp(i k D) in the length realization or a constant A = -k switched on at
/// t = 0 in the velocity realization.
ResponseSpectrum linear_susceptibility(const Scenario& scenario, double kick,
                                       KickGauge gauge = KickGauge::length,
                                       bool check_linearity = true);

struct HarmonicSpectrum {
    std::vector<double> frequencies;
    std::vector<double> power;
    double drive_omega = 0.0;
    std::vector<double> harmonic_peaks; // peak power within +-omega/2 of h*omega
    std::string window = "hann";
};

/// Power spectrum of the dipole acceleration (Ehrenfest force route) under
/// the scenario's pulse, evolved in the requested uniform-drive form.
HarmonicSpectrum harmonic_spectrum(const Scenario& scenario, GaugeForm variant,
                                   int max_harmonic = 9);

/// FFT of a real series: out_k = sum_j series_j exp(sign * 2 pi i j k / N).
std::vector<cplx> dft_real(std::span<const double> series, int sign);

/// omega_k = 2 pi k / (n dt_sample) for k = 0 .. n/2.
std::vector<double> dft_frequencies(std::size_t n, double dt_sample);

/// <sum_l e_l f(x_l)> on the state.
double charge_weighted_expectation(const WaveFunction& psi,
                                   std::span<const ParticleSpec> particles,
                                   const std::function<double(double)>& f);

} // namespace qgauge

#endif
