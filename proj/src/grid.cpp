#include "qgauge/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace qgauge {

int Grid::nearest_index(double x) const {
    int i = static_cast<int>(std::lround((x - x_min) / dx));
    if (i < 0) i = 0;
    if (i >= n_points) i = n_points - 1;
    return i;
}

std::size_t Grid::config_size() const {
    std::size_t n = static_cast<std::size_t>(n_points);
    return n_particles == 2 ? n * n : n;
}

double Grid::volume_element() const {
    return n_particles == 2 ? dx * dx : dx;
}

Grid make_grid(int n_points, double dx, double x_min, int n_particles) {
    if (n_points < 8)
        throw std::invalid_argument("make_grid: n_points must be >= 8, got " +
                                    std::to_string(n_points));
    if (!(dx > 0.0))
        throw std::invalid_argument("make_grid: dx must be positive, got " +
                                    std::to_string(dx));
    if (n_particles != 1 && n_particles != 2)
        throw std::invalid_argument("make_grid: n_particles must be 1 or 2, got " +
                                    std::to_string(n_particles));
    return Grid{n_points, dx, x_min, n_particles};
}

WaveFunction::WaveFunction(Grid grid, double time)
    : grid_(grid), amp_(grid.config_size(), cplx(0.0, 0.0)), time_(time) {}

WaveFunction::WaveFunction(Grid grid, std::vector<cplx> amplitudes, double time)
    : grid_(grid), amp_(std::move(amplitudes)), time_(time) {
    if (amp_.size() != grid_.config_size())
        throw std::invalid_argument("WaveFunction: amplitude length does not match grid");
}

double WaveFunction::norm_squared() const {
    double s = 0.0;
    for (const cplx& a : amp_) s += std::norm(a);
    return s * grid_.volume_element();
}

double WaveFunction::norm() const { return std::sqrt(norm_squared()); }

void WaveFunction::normalize() {
    double n = norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw std::domain_error("normalize: state has zero or non-finite norm");
    double inv = 1.0 / n;
    for (cplx& a : amp_) a *= inv;
}

cplx inner_product(const WaveFunction& bra, const WaveFunction& ket) {
    cplx s(0.0, 0.0);
    const auto& a = bra.amplitudes();
    const auto& b = ket.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s * bra.grid().volume_element();
}

} // namespace qgauge
