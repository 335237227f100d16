#include <string>

#include <CLI11.hpp>

#include "qgauge/commands.hpp"
#include "qgauge/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"1D time-dependent Schrodinger simulator with gauge-invariance checks"};
    app.set_version_flag("--version", std::string(qgauge::kVersion));
    app.require_subcommand(1);

    qgauge::CommandOptions opts;
    std::string subcommand;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "scenario file (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
        cmd->add_option("--override", opts.overrides,
                        "scenario override key.path=value (repeatable)");
        cmd->callback([&, cmd] { subcommand = cmd->get_name(); });
    };

    add_common(app.add_subcommand("ground-state", "relax the ground state by imaginary time"));
    add_common(app.add_subcommand("evolve", "propagate the scenario and record observables"));

    auto* gc = app.add_subcommand("gauge-check",
                                  "evolve in two gauges related by chi and compare");
    add_common(gc);
    gc->add_option("--tol-fidelity", opts.gauge_tol.fidelity, "bound on 1 - fidelity")
        ->capture_default_str();
    gc->add_option("--tol-observables", opts.gauge_tol.observables,
                   "relative observable tolerance")
        ->capture_default_str();
    gc->add_option("--tol-energy", opts.gauge_tol.energy_shift,
                   "energy-shift identity tolerance")
        ->capture_default_str();

    auto* vl = app.add_subcommand("vl-check", "velocity vs length gauge comparison");
    add_common(vl);
    vl->add_option("--tol-dipole-l2", opts.vl_tol.dipole_l2, "relative dipole L2 tolerance")
        ->capture_default_str();
    vl->add_option("--tol-fidelity", opts.vl_tol.fidelity, "bound on 1 - fidelity")
        ->capture_default_str();
    vl->add_option("--tol-observables", opts.vl_tol.observables,
                   "final observable tolerance")
        ->capture_default_str();

    auto* rsp = app.add_subcommand("response", "delta-kick linear response spectrum");
    add_common(rsp);
    rsp->add_option("--kick", opts.kick, "impulse strength (field a.u.)")->capture_default_str();
    rsp->add_option("--gauge", opts.response_gauge, "kick realization: length | velocity")
        ->capture_default_str();

    auto* hrm = app.add_subcommand("harmonics", "harmonic spectra in both gauges");
    add_common(hrm);
    hrm->add_option("--max-harmonic", opts.max_harmonic, "highest harmonic compared")
        ->capture_default_str();
    hrm->add_option("--tol-peaks", opts.harmonic_tol, "relative peak-height tolerance")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : qgauge::kExitInputError;
    }

    return qgauge::run_command(subcommand, opts);
}
