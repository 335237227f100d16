#ifndef QGAUGE_ERRORS_HPP
#define QGAUGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qgauge {

/// Malformed or physically inconsistent scenario input.
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Linear solve or iteration failed to reach tolerance.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& msg, double residual)
        : std::runtime_error(msg), residual(residual) {}
    double residual;
};

/// Probability reached the grid edge beyond the contamination guard.
class BoundaryError : public std::runtime_error {
public:
    BoundaryError(const std::string& msg, double edge_fraction, double time)
        : std::runtime_error(msg), edge_fraction(edge_fraction), time(time) {}
    double edge_fraction;
    double time;
};

} // namespace qgauge

#endif
