#include "qgauge/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace qgauge {

FieldConfig apply_gauge_to_fields(const FieldConfig& fields, const GaugeFunction& chi) {
    FieldConfig out = fields;
    for (const auto& term : chi.chi.terms) {
        // A' = A + grad(chi)
        out.a_pot.terms.push_back(FieldTerm{term.coeff, term.space.derivative(),
                                            term.time, term.t_deriv});
        // phi' = phi - dt(chi)
        out.phi.terms.push_back(FieldTerm{-term.coeff, term.space, term.time, term.t_deriv + 1});
    }
    return out;
}

std::vector<double> gauge_phase(const GaugeFunction& chi, std::span<const ParticleSpec> particles,
                                const Grid& grid, double t) {
    if (static_cast<int>(particles.size()) != grid.n_particles)
        throw std::invalid_argument("gauge_phase: particle count does not match grid");

    std::vector<double> chi_axis(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) chi_axis[i] = chi.value(grid.coordinate(i), t);

    if (grid.n_particles == 1) {
        std::vector<double> theta(grid.n_points);
        for (int i = 0; i < grid.n_points; ++i) theta[i] = particles[0].charge * chi_axis[i];
        return theta;
    }

    int n = grid.n_points;
    std::vector<double> theta(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        double t1 = particles[0].charge * chi_axis[i];
        for (int j = 0; j < n; ++j)
            theta[static_cast<std::size_t>(i) * n + j] = t1 + particles[1].charge * chi_axis[j];
    }
    return theta;
}

WaveFunction apply_gauge_to_state(const WaveFunction& psi, const GaugeFunction& chi,
                                  std::span<const ParticleSpec> particles) {
    std::vector<double> theta = gauge_phase(chi, particles, psi.grid(), psi.time());
    WaveFunction out = psi;
    auto& a = out.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] *= cplx(std::cos(theta[i]), std::sin(theta[i]));
    return out;
}

std::pair<FieldConfig, GaugeFunction> to_coulomb_gauge(const FieldConfig& fields,
                                                       const Grid& grid) {
    FieldConfig out;
    out.phi = fields.phi;
    out.e0 = fields.e0;
    GaugeFunction chi;

    std::vector<double> xs(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) xs[i] = grid.coordinate(i);

    for (const auto& term : fields.a_pot.terms) {
        if (term.space.is_constant()) {
            out.a_pot.terms.push_back(term); // uniform drive stays as A(t)
            continue;
        }
        // chi picks up -coeff * (cumulative trapezoid of S) * g^(t_deriv)
        std::vector<double> anti(grid.n_points, 0.0);
        double prev = term.space.value(xs[0]);
        for (int i = 1; i < grid.n_points; ++i) {
            double cur = term.space.value(xs[i]);
            anti[i] = anti[i - 1] + 0.5 * grid.dx * (prev + cur);
            prev = cur;
        }
        FieldTerm chi_term{-term.coeff, SpaceProfile::make_table(xs, std::move(anti)),
                           term.time, term.t_deriv};
        // phi' = phi - dt(chi)
        out.phi.terms.push_back(FieldTerm{-chi_term.coeff, chi_term.space, chi_term.time,
                                          chi_term.t_deriv + 1});
        chi.chi.terms.push_back(std::move(chi_term));
    }
    return {out, chi};
}

double electric_field(const FieldConfig& fields, double x, double t) {
    return -fields.a_pot.dt(x, t) - fields.phi.dx(x, t) + fields.e0.value(t);
}

double ChargeDensityProfile::total_charge() const {
    // Trapezoidal integral over the axis.
    if (rho.size() < 2) return 0.0;
    double s = 0.5 * (rho.front() + rho.back());
    for (std::size_t i = 1; i + 1 < rho.size(); ++i) s += rho[i];
    return s * grid.dx;
}

LongitudinalField longitudinal_field_1d(const ChargeDensityProfile& profile, double e0) {
    const auto& rho = profile.rho;
    int n = static_cast<int>(rho.size());
    LongitudinalField out;
    out.homogeneous = e0;
    out.induced.assign(n, 0.0);

    // E_ind(x) = (1/2) int sign(x - x') rho(x') dx'
    //          = (1/2) [ int_{<x} rho - int_{>x} rho ]  (trapezoidal)
    // Running trapezoid prefix makes this O(n).
    std::vector<double> prefix(n, 0.0);
    for (int i = 1; i < n; ++i)
        prefix[i] = prefix[i - 1] + 0.5 * profile.grid.dx * (rho[i - 1] + rho[i]);
    double total = prefix[n - 1];
    for (int i = 0; i < n; ++i) out.induced[i] = 0.5 * (prefix[i] - (total - prefix[i]));

    out.total.resize(n);
    for (int i = 0; i < n; ++i) out.total[i] = e0 + out.induced[i];
    return out;
}

} // namespace qgauge
