#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "qgauge/commands.hpp"
#include "qgauge/csv.hpp"

using namespace qgauge;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("qgauge_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string write_scenario(const fs::path& dir, const std::string& name,
                           const std::string& text) {
    fs::path p = dir / name;
    write_file(p.string(), text);
    return p.string();
}

const char* kEvolveScenario = R"({
  "name": "well-evolve",
  "grid": {"n_points": 161, "dx": 0.1, "x_min": -8.0, "n_particles": 1},
  "particles": [{"mass": 1.0, "charge": -1.0}],
  "model_potential": {"kind": "harmonic", "omega": 1.0},
  "gauge": {"form": "length",
            "efield": [{"time": {"kind": "sinusoid", "amplitude": 0.02, "omega": 0.8, "phase": 0.0}}]},
  "initial_state": {"kind": "ground-state", "gs_tol": 1e-10},
  "plan": {"dt": 0.01, "n_steps": 200, "record_every": 20},
  "outputs": {"arrays": ["charge_density", "polarization"], "array_every": 5}
})";

} // namespace

TEST_CASE("evolve writes deterministic observables and arrays") {
    TempDir tmp("evolve");
    CommandOptions opts;
    opts.config_path = write_scenario(tmp.path, "s.json", kEvolveScenario);
    opts.out_dir = (tmp.path / "out1").string();
    CHECK(run_command("evolve", opts) == kExitPass);

    CHECK(fs::exists(tmp.path / "out1/observables.csv"));
    CHECK(fs::exists(tmp.path / "out1/report.json"));
    CHECK(fs::exists(tmp.path / "out1/charge_density_000000.csv"));
    CHECK(fs::exists(tmp.path / "out1/polarization_000010.csv"));

    std::string header = read_file((tmp.path / "out1/observables.csv").string());
    CHECK(header.rfind("time,norm,dipole,position_1,mech_momentum_1,kinetic_energy,"
                       "total_energy,edge_density\n",
                       0) == 0);
    CHECK(header.back() == '\n');

    auto report = nlohmann::json::parse(read_file((tmp.path / "out1/report.json").string()));
    CHECK(report.at("pass") == true);
    CHECK(report.at("command") == "evolve");
    CHECK(report.at("scenario") == "well-evolve");
    CHECK(report.at("records") == 11);
    CHECK(report.contains("scenario_hash"));

    // byte-identical rerun
    opts.out_dir = (tmp.path / "out2").string();
    CHECK(run_command("evolve", opts) == kExitPass);
    CHECK(read_file((tmp.path / "out1/observables.csv").string()) ==
          read_file((tmp.path / "out2/observables.csv").string()));
    CHECK(read_file((tmp.path / "out1/report.json").string()) ==
          read_file((tmp.path / "out2/report.json").string()));
}

TEST_CASE("ground-state command reports the relaxed energy") {
    TempDir tmp("gs");
    CommandOptions opts;
    opts.config_path = write_scenario(tmp.path, "s.json", kEvolveScenario);
    opts.out_dir = (tmp.path / "out").string();
    CHECK(run_command("ground-state", opts) == kExitPass);
    auto report = nlohmann::json::parse(read_file((tmp.path / "out/report.json").string()));
    double e0 = report.at("ground_state").at("energy").get<double>();
    CHECK(e0 == doctest::Approx(0.5).epsilon(2e-3));
    CHECK(fs::exists(tmp.path / "out/ground_state.csv"));
    CHECK(fs::exists(tmp.path / "out/ground_state_density.csv"));
}

TEST_CASE("gauge-check with zero chi passes and reports") {
    TempDir tmp("gc");
    const char* scenario = R"({
      "name": "gc-trivial",
      "grid": {"n_points": 241, "dx": 0.1, "x_min": -12.0, "n_particles": 1},
      "particles": [{"mass": 1.0, "charge": -1.0}],
      "nuclei": [{"charge": 1.0, "position": 0.0}],
      "gauge": {"form": "general",
                "a": [{"time": {"kind": "sinusoid", "amplitude": 0.05, "omega": 0.5, "phase": 0.0}}],
                "chi": []},
      "plan": {"dt": 0.005, "n_steps": 200, "record_every": 50}
    })";
    CommandOptions opts;
    opts.config_path = write_scenario(tmp.path, "s.json", scenario);
    opts.out_dir = (tmp.path / "out").string();
    CHECK(run_command("gauge-check", opts) == kExitPass);
    auto report = nlohmann::json::parse(read_file((tmp.path / "out/report.json").string()));
    CHECK(report.at("pass") == true);
    CHECK(fs::exists(tmp.path / "out/observables_original.csv"));
    CHECK(fs::exists(tmp.path / "out/observables_transformed.csv"));
}

TEST_CASE("boundary contamination exits with the numerical-failure code") {
    TempDir tmp("guard");
    const char* scenario = R"({
      "name": "runaway",
      "grid": {"n_points": 161, "dx": 0.1, "x_min": -8.0, "n_particles": 1},
      "particles": [{"mass": 1.0, "charge": -1.0}],
      "gauge": {"form": "length"},
      "initial_state": {"kind": "gaussian", "centers": [4.0], "widths": [1.0], "momenta": [3.0]},
      "plan": {"dt": 0.01, "n_steps": 500}
    })";
    CommandOptions opts;
    opts.config_path = write_scenario(tmp.path, "s.json", scenario);
    opts.out_dir = (tmp.path / "out").string();
    CHECK(run_command("evolve", opts) == kExitNumericalFailure);
    auto report = nlohmann::json::parse(read_file((tmp.path / "out/report.json").string()));
    CHECK(report.at("pass") == false);
    std::string cause = report.at("failure_cause");
    CHECK(cause.find("boundary_contamination") != std::string::npos);
}

TEST_CASE("bad input exits with the input-error code") {
    TempDir tmp("bad");
    CommandOptions opts;
    opts.config_path = (tmp.path / "missing.json").string();
    opts.out_dir = (tmp.path / "out").string();
    CHECK(run_command("evolve", opts) == kExitInputError);

    opts.config_path = write_scenario(tmp.path, "bad.json", "{ nope");
    CHECK(run_command("evolve", opts) == kExitInputError);

    opts.config_path = write_scenario(tmp.path, "unknown.json",
                                      R"({"name": "x", "polarisation": 1})");
    CHECK(run_command("evolve", opts) == kExitInputError);

    opts.config_path = write_scenario(tmp.path, "ok.json", kEvolveScenario);
    CHECK(run_command("not-a-command", opts) == kExitInputError);
}

TEST_CASE("overrides rewrite scenario values before validation") {
    TempDir tmp("override");
    CommandOptions opts;
    opts.config_path = write_scenario(tmp.path, "s.json", kEvolveScenario);
    opts.out_dir = (tmp.path / "out").string();
    opts.overrides = {"plan.n_steps=40", "plan.record_every=10", "name=renamed"};
    CHECK(run_command("evolve", opts) == kExitPass);
    auto report = nlohmann::json::parse(read_file((tmp.path / "out/report.json").string()));
    CHECK(report.at("scenario") == "renamed");
    CHECK(report.at("records") == 5);

    // an override that breaks the schema is an input error
    opts.overrides = {"plan.dt=-1"};
    CHECK(run_command("evolve", opts) == kExitInputError);
    opts.overrides = {"plan.no_such_key=1"};
    CHECK(run_command("evolve", opts) == kExitInputError);
}

TEST_CASE("response command writes the spectrum") {
    TempDir tmp("resp");
    const char* scenario = R"({
      "name": "well-response",
      "grid": {"n_points": 201, "dx": 0.1, "x_min": -10.0, "n_particles": 1},
      "particles": [{"mass": 1.0, "charge": -1.0}],
      "model_potential": {"kind": "harmonic", "omega": 1.0},
      "gauge": {"form": "length"},
      "plan": {"dt": 0.01, "n_steps": 10000, "record_every": 10}
    })";
    CommandOptions opts;
    opts.config_path = write_scenario(tmp.path, "s.json", scenario);
    opts.out_dir = (tmp.path / "out").string();
    opts.kick = 0.002;
    CHECK(run_command("response", opts) == kExitPass);
    auto report = nlohmann::json::parse(read_file((tmp.path / "out/report.json").string()));
    CHECK(report.at("pass") == true);
    CHECK(report.at("alpha_static").get<double>() == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fs::exists(tmp.path / "out/spectrum.csv"));
}
