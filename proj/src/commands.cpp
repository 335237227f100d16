#include "qgauge/commands.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qgauge/csv.hpp"
#include "qgauge/errors.hpp"
#include "qgauge/version.hpp"

namespace qgauge {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

json apply_overrides(json j, const std::vector<std::string>& overrides) {
    for (const auto& ov : overrides) {
        auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ScenarioError("override '" + ov + "' is not of the form key.path=value");
        std::string path = ov.substr(0, eq);
        std::string raw = ov.substr(eq + 1);

        json value;
        try {
            value = json::parse(raw);
        } catch (const json::parse_error&) {
            value = raw; // bare strings stay strings
        }

        json* node = &j;
        std::istringstream ss(path);
        std::string seg;
        std::vector<std::string> segs;
        while (std::getline(ss, seg, '.')) segs.push_back(seg);
        if (segs.empty()) throw ScenarioError("override '" + ov + "' has an empty key path");
        for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
            if (node->is_array()) {
                std::size_t idx = std::stoul(segs[i]);
                if (idx >= node->size())
                    throw ScenarioError("override path '" + path + "': index out of range");
                node = &(*node)[idx];
            } else {
                node = &(*node)[segs[i]];
            }
        }
        if (node->is_array()) {
            std::size_t idx = std::stoul(segs.back());
            if (idx >= node->size())
                throw ScenarioError("override path '" + path + "': index out of range");
            (*node)[idx] = value;
        } else {
            (*node)[segs.back()] = value;
        }
    }
    return j;
}

std::string hash_string(const std::string& text) {
    std::ostringstream ss;
    ss << "fnv1a64:" << std::hex << fnv1a64(text);
    return ss.str();
}

json report_envelope(const std::string& command, const Scenario& s,
                     const std::string& scenario_hash) {
    json j;
    j["command"] = command;
    j["scenario"] = s.name;
    j["scenario_hash"] = scenario_hash;
    j["version"] = kVersion;
    j["parameters"] = {{"dt", s.plan.dt},
                       {"n_steps", s.plan.n_steps},
                       {"record_every", s.plan.record_every},
                       {"solver_tol", s.plan.solver_tol},
                       {"n_points", s.grid.n_points},
                       {"dx", s.grid.dx},
                       {"x_min", s.grid.x_min},
                       {"n_particles", s.grid.n_particles},
                       {"softening", s.softening}};
    return j;
}

void write_report(const fs::path& path, const json& j) {
    write_file(path.string(), j.dump(2) + "\n");
}

std::vector<std::string> observable_header(int n_particles) {
    std::vector<std::string> h{"time", "norm", "dipole"};
    for (int l = 1; l <= n_particles; ++l) h.push_back("position_" + std::to_string(l));
    for (int l = 1; l <= n_particles; ++l) h.push_back("mech_momentum_" + std::to_string(l));
    h.insert(h.end(), {"kinetic_energy", "total_energy", "edge_density"});
    return h;
}

void write_observables_csv(const fs::path& path, const std::vector<ObservableRecord>& records,
                           int n_particles) {
    CsvWriter csv(path.string());
    csv.header(observable_header(n_particles));
    for (const auto& r : records) {
        std::vector<double> row{r.time, r.norm, r.dipole};
        for (int l = 0; l < n_particles; ++l) row.push_back(r.position[l]);
        for (int l = 0; l < n_particles; ++l) row.push_back(r.mech_momentum[l]);
        row.insert(row.end(), {r.kinetic_energy, r.total_energy, r.edge_density});
        csv.row(row);
    }
    csv.close();
}

void write_array_csv(const fs::path& path, const Grid& grid, std::span<const double> values) {
    CsvWriter csv(path.string());
    std::vector<std::string> h{"x", "value"};
    csv.header(h);
    for (int i = 0; i < grid.n_points; ++i) {
        double row[2] = {grid.coordinate(i), values[i]};
        csv.row(row);
    }
    csv.close();
}

void write_arrays(const fs::path& dir, const Scenario& s,
                  const std::vector<ObservableRecord>& records) {
    if (s.outputs.arrays.empty()) return;
    char name[64];
    for (std::size_t k = 0; k < records.size(); ++k) {
        if (k % static_cast<std::size_t>(s.outputs.array_every) != 0) continue;
        const auto& r = records[k];
        for (const auto& which : s.outputs.arrays) {
            const std::vector<double>* arr = nullptr;
            if (which == "charge_density" && r.charge_density) arr = &*r.charge_density;
            if (which == "current_density" && r.current_density) arr = &*r.current_density;
            if (which == "polarization" && r.polarization) arr = &*r.polarization;
            if (!arr) continue;
            std::snprintf(name, sizeof(name), "%s_%06zu.csv", which.c_str(), k);
            write_array_csv(dir / name, s.grid, *arr);
        }
    }
}

RecordOptions record_options(const Scenario& s) {
    RecordOptions o;
    for (const auto& a : s.outputs.arrays) {
        if (a == "charge_density") o.density = true;
        if (a == "current_density") o.current = true;
        if (a == "polarization") o.polarization = true;
    }
    return o;
}

json check_entry(const std::string& name, double value, double tolerance, bool ok) {
    return json{{"name", name}, {"value", value}, {"tolerance", tolerance}, {"pass", ok}};
}

int cmd_ground_state(const Scenario& s, const fs::path& out, json report) {
    auto spec = static_hamiltonian_spec(s);
    auto gs = ground_state_imaginary_time(spec, s.initial_state.gs_tol);

    report["pass"] = true;
    report["ground_state"] = {{"energy", gs.energy},
                              {"iterations", gs.iterations},
                              {"tolerance", s.initial_state.gs_tol},
                              {"dipole", dipole(gs.psi, s.particles)}};
    write_report(out / s.outputs.report, report);

    auto rho = charge_density(gs.psi, s.particles);
    write_array_csv(out / "ground_state_density.csv", s.grid, rho);
    if (s.grid.n_particles == 1) {
        CsvWriter csv((out / "ground_state.csv").string());
        std::vector<std::string> h{"x", "re", "im"};
        csv.header(h);
        for (int i = 0; i < s.grid.n_points; ++i) {
            double row[3] = {s.grid.coordinate(i), gs.psi[i].real(), gs.psi[i].imag()};
            csv.row(row);
        }
        csv.close();
    }
    std::cout << "ground-state: E0 = " << gs.energy << " after " << gs.iterations
              << " iterations\n";
    return kExitPass;
}

int cmd_evolve(const Scenario& s, const fs::path& out, json report) {
    WaveFunction psi0 = build_initial_state(s);
    auto spec = build_hamiltonian_spec(s);
    Trajectory traj = evolve(psi0, spec, s.plan, record_options(s));

    write_observables_csv(out / s.outputs.observables, traj.records, s.grid.n_particles);
    write_arrays(out, s, traj.records);

    report["pass"] = true;
    report["records"] = traj.records.size();
    report["final"] = {{"time", traj.records.back().time},
                       {"norm", traj.records.back().norm},
                       {"dipole", traj.records.back().dipole},
                       {"total_energy", traj.records.back().total_energy}};
    write_report(out / s.outputs.report, report);
    std::cout << "evolve: " << traj.records.size() << " records written\n";
    return kExitPass;
}

int cmd_gauge_check(const Scenario& s, const fs::path& out, json report,
                    const CommandOptions& opts) {
    if (!s.chi) throw ScenarioError("gauge-check needs a gauge.chi descriptor in the scenario");
    auto rep = gauge_invariance_check(s, *s.chi, opts.gauge_tol);

    json checks = json::array();
    checks.push_back(check_entry("min_fidelity", rep.min_fidelity, 1.0 - opts.gauge_tol.fidelity,
                                 rep.min_fidelity >= 1.0 - opts.gauge_tol.fidelity));
    for (const auto& [name, delta] : rep.observable_deltas)
        checks.push_back(check_entry("delta_" + name, delta, opts.gauge_tol.observables,
                                     delta <= opts.gauge_tol.observables));
    checks.push_back(check_entry("energy_shift_deviation", rep.energy_shift_max_deviation,
                                 opts.gauge_tol.energy_shift,
                                 rep.energy_shift_max_deviation <= opts.gauge_tol.energy_shift));

    report["chi"] = rep.chi_description;
    report["pass"] = rep.pass;
    if (!rep.pass) report["failure_cause"] = rep.failure_cause;
    report["final_fidelity"] = rep.final_fidelity;
    report["energy_shift"] = {{"predicted", rep.energy_shift_predicted},
                              {"measured", rep.energy_shift_measured}};
    report["checks"] = std::move(checks);
    write_report(out / s.outputs.report, report);

    if (!rep.records_original.empty()) {
        write_observables_csv(out / "observables_original.csv", rep.records_original,
                              s.grid.n_particles);
        write_observables_csv(out / "observables_transformed.csv", rep.records_transformed,
                              s.grid.n_particles);
    }
    std::cout << "gauge-check: " << (rep.pass ? "pass" : "FAIL")
              << " (min fidelity " << rep.min_fidelity << ")\n";
    return rep.pass ? kExitPass : kExitCheckFailed;
}

int cmd_vl_check(const Scenario& s, const fs::path& out, json report,
                 const CommandOptions& opts) {
    auto rep = velocity_length_check(s, opts.vl_tol);

    json checks = json::array();
    checks.push_back(check_entry("dipole_l2", rep.dipole_l2, opts.vl_tol.dipole_l2,
                                 rep.dipole_l2 <= opts.vl_tol.dipole_l2));
    checks.push_back(check_entry("final_fidelity", rep.final_fidelity,
                                 1.0 - opts.vl_tol.fidelity,
                                 rep.residual_phase_warning ||
                                     rep.final_fidelity >= 1.0 - opts.vl_tol.fidelity));
    for (const auto& [name, delta] : rep.observable_deltas)
        checks.push_back(check_entry("delta_" + name, delta, opts.vl_tol.observables,
                                     delta <= opts.vl_tol.observables));

    report["pass"] = rep.pass;
    if (!rep.pass) report["failure_cause"] = rep.failure_cause;
    report["residual_phase_warning"] = rep.residual_phase_warning;
    report["checks"] = std::move(checks);
    write_report(out / s.outputs.report, report);

    CsvWriter csv((out / "dipole_series.csv").string());
    std::vector<std::string> h{"time", "dipole_velocity", "dipole_length"};
    csv.header(h);
    for (std::size_t k = 0; k < rep.times.size(); ++k) {
        double row[3] = {rep.times[k], rep.dipole_velocity[k], rep.dipole_length[k]};
        csv.row(row);
    }
    csv.close();

    std::cout << "vl-check: " << (rep.pass ? "pass" : "FAIL") << " (dipole L2 " << rep.dipole_l2
              << ")\n";
    return rep.pass ? kExitPass : kExitCheckFailed;
}

int cmd_response(const Scenario& s, const fs::path& out, json report,
                 const CommandOptions& opts) {
    KickGauge gauge = KickGauge::length;
    if (opts.response_gauge == "velocity")
        gauge = KickGauge::velocity;
    else if (opts.response_gauge != "length")
        throw ScenarioError("response: --gauge must be length or velocity");

    auto spec = linear_susceptibility(s, opts.kick, gauge, true);

    CsvWriter csv((out / "spectrum.csv").string());
    std::vector<std::string> h{"omega", "re_alpha", "im_alpha"};
    csv.header(h);
    for (std::size_t k = 0; k < spec.frequencies.size(); ++k) {
        double row[3] = {spec.frequencies[k], spec.values[k].real(), spec.values[k].imag()};
        csv.row(row);
    }
    csv.close();

    report["pass"] = spec.linearity_ok;
    if (!spec.linearity_ok)
        report["failure_cause"] =
            "kick too large: nonlinearity " + format_double(spec.linearity_deviation);
    report["kick"] = spec.kick_strength;
    report["gauge"] = opts.response_gauge;
    report["window"] = spec.window;
    report["alpha_static"] = spec.values.empty() ? 0.0 : spec.values[0].real();
    report["checks"] = json::array(
        {check_entry("linearity_deviation", spec.linearity_deviation, 0.01, spec.linearity_ok)});
    write_report(out / s.outputs.report, report);

    std::cout << "response: alpha(0) = " << (spec.values.empty() ? 0.0 : spec.values[0].real())
              << (spec.linearity_ok ? "" : " [NONLINEAR]") << "\n";
    return spec.linearity_ok ? kExitPass : kExitCheckFailed;
}

int cmd_harmonics(const Scenario& s, const fs::path& out, json report,
                  const CommandOptions& opts) {
    auto sv = harmonic_spectrum(s, GaugeForm::coulomb, opts.max_harmonic);
    auto sl = harmonic_spectrum(s, GaugeForm::length, opts.max_harmonic);

    auto dump = [&](const char* name, const HarmonicSpectrum& hs) {
        CsvWriter csv((out / name).string());
        std::vector<std::string> h{"omega", "power"};
        csv.header(h);
        for (std::size_t k = 0; k < hs.frequencies.size(); ++k) {
            double row[2] = {hs.frequencies[k], hs.power[k]};
            csv.row(row);
        }
        csv.close();
    };
    dump("harmonics_velocity.csv", sv);
    dump("harmonics_length.csv", sl);

    json checks = json::array();
    double worst = 0.0;
    json peaks = json::array();
    for (std::size_t h = 0; h < sv.harmonic_peaks.size(); ++h) {
        double pv = sv.harmonic_peaks[h], pl = sl.harmonic_peaks[h];
        double top = std::max(pv, pl);
        double rel = top > 0.0 ? std::fabs(pv - pl) / top : 0.0;
        worst = std::max(worst, rel);
        peaks.push_back(json{{"harmonic", h + 1},
                             {"velocity", pv},
                             {"length", pl},
                             {"relative_difference", rel}});
    }
    bool ok = worst <= opts.harmonic_tol;
    checks.push_back(check_entry("max_peak_difference", worst, opts.harmonic_tol, ok));

    report["pass"] = ok;
    if (!ok) report["failure_cause"] = "gauge peak mismatch " + format_double(worst);
    report["drive_omega"] = sv.drive_omega;
    report["window"] = sv.window;
    report["peaks"] = std::move(peaks);
    report["checks"] = std::move(checks);
    write_report(out / s.outputs.report, report);

    std::cout << "harmonics: " << (ok ? "pass" : "FAIL") << " (max peak difference " << worst
              << ")\n";
    return ok ? kExitPass : kExitCheckFailed;
}

} // namespace

int run_command(const std::string& subcommand, const CommandOptions& opts) {
    fs::path out(opts.out_dir);
    std::string text, scenario_hash;
    Scenario scenario;
    try {
        std::error_code ec;
        fs::create_directories(out, ec);
        text = read_file(opts.config_path);
        json j = json::parse(text);
        j = apply_overrides(j, opts.overrides);
        std::string effective = j.dump(2) + "\n";
        scenario_hash = hash_string(effective);
        scenario = parse_scenario_text(effective);
    } catch (const json::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ScenarioError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    }

    json report = report_envelope(subcommand, scenario, scenario_hash);
    try {
        if (subcommand == "ground-state") return cmd_ground_state(scenario, out, report);
        if (subcommand == "evolve") return cmd_evolve(scenario, out, report);
        if (subcommand == "gauge-check") return cmd_gauge_check(scenario, out, report, opts);
        if (subcommand == "vl-check") return cmd_vl_check(scenario, out, report, opts);
        if (subcommand == "response") return cmd_response(scenario, out, report, opts);
        if (subcommand == "harmonics") return cmd_harmonics(scenario, out, report, opts);
        std::cerr << "input error: unknown subcommand '" << subcommand << "'\n";
        return kExitInputError;
    } catch (const ScenarioError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        report["pass"] = false;
        report["failure_cause"] = e.what();
        write_report(out / scenario.outputs.report, report);
        return kExitInputError;
    } catch (const BoundaryError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        report["pass"] = false;
        report["failure_cause"] = std::string("boundary_contamination: ") + e.what();
        write_report(out / scenario.outputs.report, report);
        return kExitNumericalFailure;
    } catch (const SolverError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        report["pass"] = false;
        report["failure_cause"] = std::string("solver_failure: ") + e.what();
        write_report(out / scenario.outputs.report, report);
        return kExitNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        report["pass"] = false;
        report["failure_cause"] = e.what();
        write_report(out / scenario.outputs.report, report);
        return kExitNumericalFailure;
    }
}

} // namespace qgauge
