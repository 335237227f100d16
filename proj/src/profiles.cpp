#include "qgauge/profiles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgauge {

namespace {

// Linear interpolation with clamped ends on a uniform sample set.
double table_interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (xs.empty()) return 0.0;
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    double h = xs[1] - xs[0];
    auto i = static_cast<std::size_t>((x - xs.front()) / h);
    if (i + 1 >= xs.size()) i = xs.size() - 2;
    double w = (x - xs[i]) / h;
    return (1.0 - w) * ys[i] + w * ys[i + 1];
}

std::vector<double> table_diff(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> d(ys.size(), 0.0);
    if (ys.size() < 2) return d;
    double h = xs[1] - xs[0];
    d.front() = (ys[1] - ys[0]) / h;
    d.back() = (ys[ys.size() - 1] - ys[ys.size() - 2]) / h;
    for (std::size_t i = 1; i + 1 < ys.size(); ++i) d[i] = (ys[i + 1] - ys[i - 1]) / (2.0 * h);
    return d;
}

void check_table(const std::vector<double>& xs, const std::vector<double>& ys,
                 const char* what) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument(std::string(what) + ": table needs >= 2 matching samples");
    double h = xs[1] - xs[0];
    if (!(h > 0.0)) throw std::invalid_argument(std::string(what) + ": table must be increasing");
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double hi = xs[i] - xs[i - 1];
        if (std::fabs(hi - h) > 1e-9 * std::fabs(h))
            throw std::invalid_argument(std::string(what) + ": table spacing must be uniform");
    }
}

} // namespace

double TimeProfile::value(double t) const {
    switch (kind) {
    case TimeKind::constant: return value_c;
    case TimeKind::linear: return offset + slope * t;
    case TimeKind::sinusoid: return amplitude * std::sin(omega * t + phase);
    case TimeKind::gaussian: {
        double u = (t - center) / width;
        return amplitude * std::exp(-u * u);
    }
    case TimeKind::gaussian_pulse: {
        double u = (t - center) / width;
        return amplitude * std::exp(-u * u) * std::sin(omega * (t - center) + phase);
    }
    case TimeKind::sin2_pulse: {
        if (t < t_start || t > t_start + duration) return 0.0;
        double s = std::sin(std::numbers::pi * (t - t_start) / duration);
        return amplitude * s * s * std::sin(omega * (t - t_start) + phase);
    }
    case TimeKind::table: return table_interp(times, samples, t);
    }
    return 0.0;
}

double TimeProfile::d1(double t) const {
    switch (kind) {
    case TimeKind::constant: return 0.0;
    case TimeKind::linear: return slope;
    case TimeKind::sinusoid: return amplitude * omega * std::cos(omega * t + phase);
    case TimeKind::gaussian: {
        double u = (t - center) / width;
        return amplitude * std::exp(-u * u) * (-2.0 * u / width);
    }
    case TimeKind::gaussian_pulse: {
        double u = (t - center) / width;
        double env = amplitude * std::exp(-u * u);
        double arg = omega * (t - center) + phase;
        return env * (omega * std::cos(arg) - 2.0 * u / width * std::sin(arg));
    }
    case TimeKind::sin2_pulse: {
        if (t < t_start || t > t_start + duration) return 0.0;
        double w = std::numbers::pi / duration;
        double u = t - t_start;
        double s = std::sin(w * u), c = std::cos(w * u);
        double arg = omega * u + phase;
        return amplitude * (2.0 * w * s * c * std::sin(arg) + s * s * omega * std::cos(arg));
    }
    case TimeKind::table: {
        auto d = table_diff(times, samples);
        return table_interp(times, d, t);
    }
    }
    return 0.0;
}

double TimeProfile::d2(double t) const {
    switch (kind) {
    case TimeKind::constant:
    case TimeKind::linear: return 0.0;
    case TimeKind::sinusoid: return -amplitude * omega * omega * std::sin(omega * t + phase);
    case TimeKind::gaussian: {
        double u = (t - center) / width;
        return amplitude * std::exp(-u * u) * (4.0 * u * u - 2.0) / (width * width);
    }
    case TimeKind::gaussian_pulse: {
        double u = (t - center) / width;
        double env = amplitude * std::exp(-u * u);
        double arg = omega * (t - center) + phase;
        double s = std::sin(arg), c = std::cos(arg);
        double g1 = -2.0 * u / width;                        // env'/env
        double g2 = (4.0 * u * u - 2.0) / (width * width);   // env''/env
        return env * (g2 * s + 2.0 * g1 * omega * c - omega * omega * s);
    }
    case TimeKind::sin2_pulse: {
        if (t < t_start || t > t_start + duration) return 0.0;
        double w = std::numbers::pi / duration;
        double u = t - t_start;
        double s = std::sin(w * u), c = std::cos(w * u);
        double arg = omega * u + phase;
        double sa = std::sin(arg), ca = std::cos(arg);
        // d2 of sin^2(wu) sin(arg): (2w^2 cos(2wu) - omega^2 sin^2(wu)) sin(arg)
        //                           + 4 w s c omega cos(arg)
        double env2 = 2.0 * w * w * (c * c - s * s);
        return amplitude * ((env2 - omega * omega * s * s) * sa + 4.0 * w * s * c * omega * ca);
    }
    case TimeKind::table: {
        auto d = table_diff(times, samples);
        auto dd = table_diff(times, d);
        return table_interp(times, dd, t);
    }
    }
    return 0.0;
}

TimeProfile TimeProfile::make_constant(double c) {
    TimeProfile p;
    p.kind = TimeKind::constant;
    p.value_c = c;
    return p;
}

TimeProfile TimeProfile::make_linear(double offset, double slope) {
    TimeProfile p;
    p.kind = TimeKind::linear;
    p.offset = offset;
    p.slope = slope;
    return p;
}

TimeProfile TimeProfile::make_sinusoid(double amplitude, double omega, double phase) {
    TimeProfile p;
    p.kind = TimeKind::sinusoid;
    p.amplitude = amplitude;
    p.omega = omega;
    p.phase = phase;
    return p;
}

TimeProfile TimeProfile::make_gaussian(double amplitude, double center, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian profile: width must be positive");
    TimeProfile p;
    p.kind = TimeKind::gaussian;
    p.amplitude = amplitude;
    p.center = center;
    p.width = width;
    return p;
}

TimeProfile TimeProfile::make_gaussian_pulse(double amplitude, double omega, double phase,
                                             double center, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian-pulse: width must be positive");
    TimeProfile p;
    p.kind = TimeKind::gaussian_pulse;
    p.amplitude = amplitude;
    p.omega = omega;
    p.phase = phase;
    p.center = center;
    p.width = width;
    return p;
}

TimeProfile TimeProfile::make_sin2_pulse(double amplitude, double omega, double phase,
                                         double t_start, double duration) {
    if (!(duration > 0.0)) throw std::invalid_argument("sin2-pulse: duration must be positive");
    TimeProfile p;
    p.kind = TimeKind::sin2_pulse;
    p.amplitude = amplitude;
    p.omega = omega;
    p.phase = phase;
    p.t_start = t_start;
    p.duration = duration;
    return p;
}

TimeProfile TimeProfile::make_table(std::vector<double> times, std::vector<double> samples) {
    check_table(times, samples, "time table");
    TimeProfile p;
    p.kind = TimeKind::table;
    p.times = std::move(times);
    p.samples = std::move(samples);
    return p;
}

double time_profile_derivative(const TimeProfile& p, int order, double t) {
    switch (order) {
    case 0: return p.value(t);
    case 1: return p.d1(t);
    case 2: return p.d2(t);
    default:
        throw std::logic_error("time_profile_derivative: order > 2 not supported");
    }
}

bool is_static_time_term(const TimeProfile& p, int t_deriv) {
    switch (p.kind) {
    case TimeKind::constant: return true;
    case TimeKind::linear: return t_deriv >= 1;
    default: return false;
    }
}

double SpaceProfile::value(double x) const {
    switch (kind) {
    case SpaceKind::polynomial: {
        double v = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
        return v;
    }
    case SpaceKind::sinusoid: return amplitude * std::sin(wavenumber * x + phase);
    case SpaceKind::table: return table_interp(positions, samples, x);
    }
    return 0.0;
}

double SpaceProfile::d1(double x) const {
    switch (kind) {
    case SpaceKind::polynomial: {
        double v = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 1;) v = v * x + coeffs[k] * static_cast<double>(k);
        return v;
    }
    case SpaceKind::sinusoid: return amplitude * wavenumber * std::cos(wavenumber * x + phase);
    case SpaceKind::table: {
        auto d = table_diff(positions, samples);
        return table_interp(positions, d, x);
    }
    }
    return 0.0;
}

SpaceProfile SpaceProfile::derivative() const {
    switch (kind) {
    case SpaceKind::polynomial: {
        std::vector<double> d;
        for (std::size_t k = 1; k < coeffs.size(); ++k)
            d.push_back(coeffs[k] * static_cast<double>(k));
        if (d.empty()) d.push_back(0.0);
        return make_polynomial(std::move(d));
    }
    case SpaceKind::sinusoid:
        return make_sinusoid(amplitude * wavenumber, wavenumber,
                             phase + std::numbers::pi / 2.0);
    case SpaceKind::table:
        return make_table(positions, table_diff(positions, samples));
    }
    return make_constant(0.0);
}

bool SpaceProfile::is_constant() const {
    switch (kind) {
    case SpaceKind::polynomial:
        for (std::size_t k = 1; k < coeffs.size(); ++k)
            if (coeffs[k] != 0.0) return false;
        return true;
    case SpaceKind::sinusoid: return amplitude == 0.0 || wavenumber == 0.0;
    case SpaceKind::table: {
        for (double v : samples)
            if (v != samples.front()) return false;
        return true;
    }
    }
    return true;
}

SpaceProfile SpaceProfile::make_constant(double c) { return make_polynomial({c}); }

SpaceProfile SpaceProfile::make_polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    SpaceProfile p;
    p.kind = SpaceKind::polynomial;
    p.coeffs = std::move(coeffs);
    return p;
}

SpaceProfile SpaceProfile::make_sinusoid(double amplitude, double wavenumber, double phase) {
    SpaceProfile p;
    p.kind = SpaceKind::sinusoid;
    p.coeffs.clear();
    p.amplitude = amplitude;
    p.wavenumber = wavenumber;
    p.phase = phase;
    return p;
}

SpaceProfile SpaceProfile::make_table(std::vector<double> positions, std::vector<double> samples) {
    check_table(positions, samples, "space table");
    SpaceProfile p;
    p.kind = SpaceKind::table;
    p.coeffs.clear();
    p.positions = std::move(positions);
    p.samples = std::move(samples);
    return p;
}

double SpaceTimeField::value(double x, double t) const {
    double v = 0.0;
    for (const auto& term : terms)
        v += term.coeff * term.space.value(x) * time_profile_derivative(term.time, term.t_deriv, t);
    return v;
}

double SpaceTimeField::dx(double x, double t) const {
    double v = 0.0;
    for (const auto& term : terms)
        v += term.coeff * term.space.d1(x) * time_profile_derivative(term.time, term.t_deriv, t);
    return v;
}

double SpaceTimeField::dt(double x, double t) const {
    double v = 0.0;
    for (const auto& term : terms)
        v += term.coeff * term.space.value(x) *
             time_profile_derivative(term.time, term.t_deriv + 1, t);
    return v;
}

bool SpaceTimeField::spatially_uniform() const {
    for (const auto& term : terms)
        if (!term.space.is_constant()) return false;
    return true;
}

double Drive::value(double t) const {
    double v = 0.0;
    for (const auto& term : terms)
        v += term.coeff * time_profile_derivative(term.time, term.t_deriv, t);
    return v;
}

double Drive::d1(double t) const {
    double v = 0.0;
    for (const auto& term : terms)
        v += term.coeff * time_profile_derivative(term.time, term.t_deriv + 1, t);
    return v;
}

Drive Drive::derivative() const {
    Drive d;
    for (const auto& term : terms)
        d.terms.push_back(DriveTerm{term.coeff, term.time, term.t_deriv + 1});
    return d;
}

} // namespace qgauge
