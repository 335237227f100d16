#ifndef QGAUGE_GRID_HPP
#define QGAUGE_GRID_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace qgauge {

using cplx = std::complex<double>;

/// Uniform 1D lattice; the configuration space of two particles is its
/// tensor square, stored row-major with particle 1 as the slow index.
struct Grid {
    int n_points = 0;
    double dx = 0.0;
    double x_min = 0.0;
    int n_particles = 1;

    double coordinate(int i) const { return x_min + i * dx; }
    int nearest_index(double x) const;
    std::size_t config_size() const;
    /// dx^n_particles, the configuration-space volume element.
    double volume_element() const;
    double x_max() const { return x_min + (n_points - 1) * dx; }

    bool operator==(const Grid&) const = default;
};

/// Validates and builds a grid. Throws std::invalid_argument on bad input.
Grid make_grid(int n_points, double dx, double x_min, int n_particles);

struct ParticleSpec {
    double mass = 1.0;
    double charge = -1.0;

    bool operator==(const ParticleSpec&) const = default;
};

class WaveFunction {
public:
    WaveFunction() = default;
    WaveFunction(Grid grid, double time = 0.0);
    WaveFunction(Grid grid, std::vector<cplx> amplitudes, double time = 0.0);

    const Grid& grid() const { return grid_; }
    double time() const { return time_; }
    void set_time(double t) { time_ = t; }

    std::vector<cplx>& amplitudes() { return amp_; }
    const std::vector<cplx>& amplitudes() const { return amp_; }
    std::size_t size() const { return amp_.size(); }
    cplx& operator[](std::size_t i) { return amp_[i]; }
    const cplx& operator[](std::size_t i) const { return amp_[i]; }

    /// sqrt(sum |psi_i|^2 dx^n)
    double norm() const;
    double norm_squared() const;
    /// Rescales to unit norm; throws std::domain_error on zero norm.
    void normalize();

private:
    Grid grid_;
    std::vector<cplx> amp_;
    double time_ = 0.0;
};

cplx inner_product(const WaveFunction& bra, const WaveFunction& ket);

} // namespace qgauge

#endif
