#include "qgauge/observables.hpp"

#include <cmath>

namespace qgauge {

namespace {

// Marginal probability density of each particle on the axis grid.
std::vector<std::vector<double>> marginal_densities(const WaveFunction& psi) {
    const Grid& g = psi.grid();
    int n = g.n_points;
    const auto& a = psi.amplitudes();
    if (g.n_particles == 1) {
        std::vector<double> m(n);
        for (int i = 0; i < n; ++i) m[i] = std::norm(a[i]);
        return {m};
    }
    std::vector<double> m1(n, 0.0), m2(n, 0.0);
    for (int i = 0; i < n; ++i) {
        std::size_t row = static_cast<std::size_t>(i) * n;
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            double p = std::norm(a[row + j]);
            s += p;
            m2[j] += p;
        }
        m1[i] = s;
    }
    for (int i = 0; i < n; ++i) {
        m1[i] *= g.dx;
        m2[i] *= g.dx;
    }
    return {m1, m2};
}

// Marginal of Im(psi* d_l psi) with centered differences (Dirichlet ends).
std::vector<double> marginal_flux(const WaveFunction& psi, int particle) {
    const Grid& g = psi.grid();
    int n = g.n_points;
    const auto& a = psi.amplitudes();
    std::vector<double> f(n, 0.0);
    double inv2dx = 1.0 / (2.0 * g.dx);

    auto im_grad = [&](std::size_t idx, std::size_t stride, int k) {
        cplx up = (k + 1 < n) ? a[idx + stride] : cplx(0.0);
        cplx dn = (k > 0) ? a[idx - stride] : cplx(0.0);
        return std::imag(std::conj(a[idx]) * (up - dn) * inv2dx);
    };

    if (g.n_particles == 1) {
        for (int i = 0; i < n; ++i) f[i] = im_grad(i, 1, i);
        return f;
    }
    if (particle == 0) {
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += im_grad(static_cast<std::size_t>(i) * n + j, n, i);
            f[i] = s * g.dx;
        }
    } else {
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += im_grad(static_cast<std::size_t>(i) * n + j, 1, j);
            f[j] = s * g.dx;
        }
    }
    return f;
}

} // namespace

std::vector<double> charge_density(const WaveFunction& psi,
                                   std::span<const ParticleSpec> particles) {
    auto marg = marginal_densities(psi);
    const Grid& g = psi.grid();
    std::vector<double> rho(g.n_points, 0.0);
    for (int l = 0; l < g.n_particles; ++l)
        for (int i = 0; i < g.n_points; ++i) rho[i] += particles[l].charge * marg[l][i];
    return rho;
}

CurrentDensity current_density(const WaveFunction& psi, const HamiltonianSpec& spec, double t) {
    const Grid& g = psi.grid();
    int n = g.n_points;
    auto marg = marginal_densities(psi);

    CurrentDensity out;
    out.total.assign(n, 0.0);
    out.paramagnetic.assign(n, 0.0);
    out.diamagnetic.assign(n, 0.0);

    for (int l = 0; l < g.n_particles; ++l) {
        const double q = spec.particles[l].charge;
        const double m = spec.particles[l].mass;
        auto flux = marginal_flux(psi, l);
        for (int i = 0; i < n; ++i) {
            double para = q / m * flux[i];
            double dia = -q * q / m * vector_potential_at(spec, g.coordinate(i), t) * marg[l][i];
            out.paramagnetic[i] += para;
            out.diamagnetic[i] += dia;
            out.total[i] += para + dia;
        }
    }
    return out;
}

double dipole(const WaveFunction& psi, std::span<const ParticleSpec> particles) {
    auto marg = marginal_densities(psi);
    const Grid& g = psi.grid();
    double d = 0.0;
    for (int l = 0; l < g.n_particles; ++l)
        for (int i = 0; i < g.n_points; ++i)
            d += particles[l].charge * g.coordinate(i) * marg[l][i] * g.dx;
    return d;
}

std::vector<double> position_expectation(const WaveFunction& psi) {
    auto marg = marginal_densities(psi);
    const Grid& g = psi.grid();
    std::vector<double> pos(g.n_particles, 0.0);
    for (int l = 0; l < g.n_particles; ++l)
        for (int i = 0; i < g.n_points; ++i) pos[l] += g.coordinate(i) * marg[l][i] * g.dx;
    return pos;
}

std::vector<double> polarization_profile(const Grid& grid, std::span<const double> rho,
                                         bool* non_neutral, double neutral_tol) {
    std::vector<double> p(rho.size(), 0.0);
    for (std::size_t i = 1; i < rho.size(); ++i)
        p[i] = p[i - 1] - 0.5 * grid.dx * (rho[i - 1] + rho[i]);
    if (non_neutral) *non_neutral = std::fabs(p.back()) > neutral_tol;
    return p;
}

std::vector<double> mechanical_momentum(const WaveFunction& psi, const HamiltonianSpec& spec,
                                        double t) {
    const Grid& g = psi.grid();
    auto marg = marginal_densities(psi);
    std::vector<double> p(g.n_particles, 0.0);
    for (int l = 0; l < g.n_particles; ++l) {
        const double q = spec.particles[l].charge;
        auto flux = marginal_flux(psi, l);
        double canonical = 0.0, dia = 0.0;
        for (int i = 0; i < g.n_points; ++i) {
            canonical += flux[i] * g.dx;
            dia += vector_potential_at(spec, g.coordinate(i), t) * marg[l][i] * g.dx;
        }
        p[l] = canonical - q * dia;
    }
    return p;
}

double energy_expectation(const WaveFunction& psi, const HamiltonianSpec& spec, double t) {
    auto h_psi = apply_hamiltonian(psi, spec, t);
    const auto& a = psi.amplitudes();
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        e += std::real(std::conj(a[i]) * h_psi[i]);
    return e * psi.grid().volume_element();
}

double kinetic_energy(const WaveFunction& psi, const HamiltonianSpec& spec, double t) {
    auto v = diagonal_potential(spec, t);
    const auto& a = psi.amplitudes();
    double pot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) pot += v[i] * std::norm(a[i]);
    pot *= psi.grid().volume_element();
    return energy_expectation(psi, spec, t) - pot;
}

double edge_fraction(const WaveFunction& psi) {
    const Grid& g = psi.grid();
    int n = g.n_points;
    int m = (n * 5 + 99) / 100; // ceil(0.05 n)
    const auto& a = psi.amplitudes();
    double edge = 0.0, total = 0.0;

    if (g.n_particles == 1) {
        for (int i = 0; i < n; ++i) {
            double p = std::norm(a[i]);
            total += p;
            if (i < m || i >= n - m) edge += p;
        }
    } else {
        for (int i = 0; i < n; ++i) {
            bool ei = (i < m || i >= n - m);
            std::size_t row = static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) {
                double p = std::norm(a[row + j]);
                total += p;
                if (ei || j < m || j >= n - m) edge += p;
            }
        }
    }
    return total > 0.0 ? edge / total : 0.0;
}

double dipole_acceleration(const WaveFunction& psi, const HamiltonianSpec& spec,
                           std::span<const std::vector<double>> forces, double t) {
    const auto& a = psi.amplitudes();
    const double dv = psi.grid().volume_element();
    double e_drive = drive_electric_field(spec, t);
    double acc = 0.0;
    for (int l = 0; l < spec.grid.n_particles; ++l) {
        const double q = spec.particles[l].charge;
        const double m = spec.particles[l].mass;
        double f = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) f += forces[l][i] * std::norm(a[i]);
        f *= dv;
        acc += q / m * (f + q * e_drive);
    }
    return acc;
}

ObservableRecord extract_observables(const WaveFunction& psi, const HamiltonianSpec& spec,
                                     double t, const RecordOptions& opts) {
    ObservableRecord rec;
    rec.time = t;
    rec.norm = psi.norm();
    rec.dipole = dipole(psi, spec.particles);
    rec.position = position_expectation(psi);
    rec.mech_momentum = mechanical_momentum(psi, spec, t);
    rec.kinetic_energy = kinetic_energy(psi, spec, t);
    rec.total_energy = energy_expectation(psi, spec, t);
    rec.edge_density = edge_fraction(psi);
    if (opts.density || opts.polarization) {
        auto rho = charge_density(psi, spec.particles);
        if (opts.polarization) rec.polarization = polarization_profile(psi.grid(), rho);
        if (opts.density) rec.charge_density = std::move(rho);
    }
    if (opts.current) rec.current_density = current_density(psi, spec, t).total;
    return rec;
}

} // namespace qgauge
