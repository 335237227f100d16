#ifndef QGAUGE_PROFILES_HPP
#define QGAUGE_PROFILES_HPP

#include <string>
#include <vector>

namespace qgauge {

/// Closed-form time dependence with analytic derivatives. The `table` kind
/// interpolates uniformly sampled data and differentiates by centered
/// differences instead.
enum class TimeKind { constant, linear, sinusoid, gaussian, gaussian_pulse, sin2_pulse, table };

struct TimeProfile {
    TimeKind kind = TimeKind::constant;

    double value_c = 0.0;                 // constant
    double offset = 0.0, slope = 0.0;     // linear: offset + slope*t
    double amplitude = 0.0;               // oscillatory/envelope kinds
    double omega = 0.0, phase = 0.0;      // carrier sin(omega*(t-t0)+phase)
    double center = 0.0, width = 1.0;     // gaussian exp(-((t-center)/width)^2)
    double t_start = 0.0, duration = 0.0; // sin2 envelope support [t_start, t_start+duration]
    std::vector<double> times, samples;   // table (uniform spacing)

    double value(double t) const;
    double d1(double t) const;
    double d2(double t) const;

    static TimeProfile make_constant(double c);
    static TimeProfile make_linear(double offset, double slope);
    static TimeProfile make_sinusoid(double amplitude, double omega, double phase = 0.0);
    static TimeProfile make_gaussian(double amplitude, double center, double width);
    static TimeProfile make_gaussian_pulse(double amplitude, double omega, double phase,
                                           double center, double width);
    static TimeProfile make_sin2_pulse(double amplitude, double omega, double phase,
                                       double t_start, double duration);
    static TimeProfile make_table(std::vector<double> times, std::vector<double> samples);

    bool operator==(const TimeProfile&) const = default;
};

/// Spatial dependence; closed under differentiation (the table kind
/// differentiates its samples by centered differences).
enum class SpaceKind { polynomial, sinusoid, table };

struct SpaceProfile {
    SpaceKind kind = SpaceKind::polynomial;

    std::vector<double> coeffs{1.0};     // polynomial: sum coeffs[k] x^k
    double amplitude = 0.0;              // sinusoid: amplitude*sin(wavenumber*x+phase)
    double wavenumber = 0.0, phase = 0.0;
    std::vector<double> positions, samples; // table (uniform spacing)

    double value(double x) const;
    double d1(double x) const;
    /// The spatial derivative as a profile of the same family.
    SpaceProfile derivative() const;
    bool is_constant() const;

    static SpaceProfile make_constant(double c);
    static SpaceProfile make_polynomial(std::vector<double> coeffs);
    static SpaceProfile make_sinusoid(double amplitude, double wavenumber, double phase = 0.0);
    static SpaceProfile make_table(std::vector<double> positions, std::vector<double> samples);

    bool operator==(const SpaceProfile&) const = default;
};

/// One separable term  coeff * S(x) * g^(t_deriv)(t).  Gauge transformations
/// stay inside this family because d/dt raises t_deriv and d/dx maps the
/// space part onto another profile.
struct FieldTerm {
    double coeff = 1.0;
    SpaceProfile space = SpaceProfile::make_constant(1.0);
    TimeProfile time = TimeProfile::make_constant(1.0);
    int t_deriv = 0; // 0, 1 or 2

    bool operator==(const FieldTerm&) const = default;
};

/// Scalar function of (x, t) as a sum of separable terms, with analytic
/// space and time derivatives.
struct SpaceTimeField {
    std::vector<FieldTerm> terms;

    double value(double x, double t) const;
    double dx(double x, double t) const;
    double dt(double x, double t) const;
    bool spatially_uniform() const;
    bool empty() const { return terms.empty(); }

    bool operator==(const SpaceTimeField&) const = default;
};

/// Pure function of time (drives: A(t), E0(t), E(t)) as sum of
/// coeff * g^(t_deriv)(t) terms.
struct DriveTerm {
    double coeff = 1.0;
    TimeProfile time = TimeProfile::make_constant(1.0);
    int t_deriv = 0;

    bool operator==(const DriveTerm&) const = default;
};

struct Drive {
    std::vector<DriveTerm> terms;

    double value(double t) const;
    double d1(double t) const;
    bool empty() const { return terms.empty(); }
    /// Analytic time derivative of this drive (raises t_deriv on each term).
    Drive derivative() const;

    bool operator==(const Drive&) const = default;
};

double time_profile_derivative(const TimeProfile& p, int order, double t);

/// True when g^(t_deriv) is constant in time.
bool is_static_time_term(const TimeProfile& p, int t_deriv);

} // namespace qgauge

#endif
