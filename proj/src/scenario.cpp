#include "qgauge/scenario.hpp"

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <string>

#include <json.hpp>

#include "qgauge/csv.hpp"
#include "qgauge/errors.hpp"

namespace qgauge {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& ctx, const std::string& msg) {
    throw ScenarioError(ctx + ": " + msg);
}

void check_keys(const json& j, const std::string& ctx, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(ctx, "expected an object");
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) fail(ctx, "unknown key '" + key + "'");
    }
}

const json& require(const json& j, const std::string& ctx, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(ctx, std::string("missing required key '") + key + "'");
    return *it;
}

double as_double(const json& j, const std::string& ctx) {
    if (!j.is_number()) fail(ctx, "expected a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& ctx) {
    if (!j.is_number_integer()) fail(ctx, "expected an integer");
    return j.get<int>();
}

std::string as_string(const json& j, const std::string& ctx) {
    if (!j.is_string()) fail(ctx, "expected a string");
    return j.get<std::string>();
}

double get_double(const json& j, const std::string& ctx, const char* key) {
    return as_double(require(j, ctx, key), ctx + "." + key);
}

double get_double_or(const json& j, const std::string& ctx, const char* key, double fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : as_double(*it, ctx + "." + key);
}

int get_int(const json& j, const std::string& ctx, const char* key) {
    return as_int(require(j, ctx, key), ctx + "." + key);
}

int get_int_or(const json& j, const std::string& ctx, const char* key, int fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : as_int(*it, ctx + "." + key);
}

std::vector<double> as_double_array(const json& j, const std::string& ctx) {
    if (!j.is_array()) fail(ctx, "expected an array of numbers");
    std::vector<double> v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(as_double(j[i], ctx + "[" + std::to_string(i) + "]"));
    return v;
}

TimeProfile parse_time_profile(const json& j, const std::string& ctx) {
    std::string kind = as_string(require(j, ctx, "kind"), ctx + ".kind");
    if (kind == "constant") {
        check_keys(j, ctx, {"kind", "value"});
        return TimeProfile::make_constant(get_double(j, ctx, "value"));
    }
    if (kind == "linear") {
        check_keys(j, ctx, {"kind", "offset", "slope"});
        return TimeProfile::make_linear(get_double_or(j, ctx, "offset", 0.0),
                                        get_double(j, ctx, "slope"));
    }
    if (kind == "sinusoid") {
        check_keys(j, ctx, {"kind", "amplitude", "omega", "phase"});
        return TimeProfile::make_sinusoid(get_double(j, ctx, "amplitude"),
                                          get_double(j, ctx, "omega"),
                                          get_double_or(j, ctx, "phase", 0.0));
    }
    if (kind == "gaussian") {
        check_keys(j, ctx, {"kind", "amplitude", "center", "width"});
        return TimeProfile::make_gaussian(get_double(j, ctx, "amplitude"),
                                          get_double_or(j, ctx, "center", 0.0),
                                          get_double(j, ctx, "width"));
    }
    if (kind == "gaussian-pulse") {
        check_keys(j, ctx, {"kind", "amplitude", "omega", "phase", "center", "width"});
        return TimeProfile::make_gaussian_pulse(
            get_double(j, ctx, "amplitude"), get_double(j, ctx, "omega"),
            get_double_or(j, ctx, "phase", 0.0), get_double_or(j, ctx, "center", 0.0),
            get_double(j, ctx, "width"));
    }
    if (kind == "sin2-pulse") {
        check_keys(j, ctx, {"kind", "amplitude", "omega", "phase", "t_start", "cycles", "duration"});
        double omega = get_double(j, ctx, "omega");
        bool has_cycles = j.contains("cycles"), has_duration = j.contains("duration");
        if (has_cycles == has_duration)
            fail(ctx, "sin2-pulse needs exactly one of 'cycles' or 'duration'");
        double duration = has_duration
                              ? get_double(j, ctx, "duration")
                              : get_double(j, ctx, "cycles") * 2.0 * std::numbers::pi / omega;
        return TimeProfile::make_sin2_pulse(get_double(j, ctx, "amplitude"), omega,
                                            get_double_or(j, ctx, "phase", 0.0),
                                            get_double_or(j, ctx, "t_start", 0.0), duration);
    }
    if (kind == "table") {
        check_keys(j, ctx, {"kind", "times", "values"});
        return TimeProfile::make_table(as_double_array(require(j, ctx, "times"), ctx + ".times"),
                                       as_double_array(require(j, ctx, "values"), ctx + ".values"));
    }
    fail(ctx + ".kind", "unknown time profile kind '" + kind + "'");
}

SpaceProfile parse_space_profile(const json& j, const std::string& ctx) {
    std::string kind = as_string(require(j, ctx, "kind"), ctx + ".kind");
    if (kind == "polynomial") {
        check_keys(j, ctx, {"kind", "coeffs"});
        return SpaceProfile::make_polynomial(
            as_double_array(require(j, ctx, "coeffs"), ctx + ".coeffs"));
    }
    if (kind == "sinusoid") {
        check_keys(j, ctx, {"kind", "amplitude", "wavenumber", "phase"});
        return SpaceProfile::make_sinusoid(get_double(j, ctx, "amplitude"),
                                           get_double(j, ctx, "wavenumber"),
                                           get_double_or(j, ctx, "phase", 0.0));
    }
    if (kind == "table") {
        check_keys(j, ctx, {"kind", "positions", "values"});
        return SpaceProfile::make_table(
            as_double_array(require(j, ctx, "positions"), ctx + ".positions"),
            as_double_array(require(j, ctx, "values"), ctx + ".values"));
    }
    fail(ctx + ".kind", "unknown space profile kind '" + kind + "'");
}

SpaceTimeField parse_field(const json& j, const std::string& ctx) {
    if (!j.is_array()) fail(ctx, "expected an array of field terms");
    SpaceTimeField f;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string tctx = ctx + "[" + std::to_string(i) + "]";
        const json& t = j[i];
        check_keys(t, tctx, {"coeff", "space", "time", "time_derivative"});
        FieldTerm term;
        term.coeff = get_double_or(t, tctx, "coeff", 1.0);
        if (t.contains("space")) term.space = parse_space_profile(t["space"], tctx + ".space");
        if (t.contains("time")) term.time = parse_time_profile(t["time"], tctx + ".time");
        term.t_deriv = get_int_or(t, tctx, "time_derivative", 0);
        if (term.t_deriv < 0 || term.t_deriv > 2)
            fail(tctx + ".time_derivative", "must be 0, 1 or 2");
        f.terms.push_back(std::move(term));
    }
    return f;
}

Drive parse_drive(const json& j, const std::string& ctx) {
    if (!j.is_array()) fail(ctx, "expected an array of drive terms");
    Drive d;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string tctx = ctx + "[" + std::to_string(i) + "]";
        const json& t = j[i];
        check_keys(t, tctx, {"coeff", "time", "time_derivative"});
        DriveTerm term;
        term.coeff = get_double_or(t, tctx, "coeff", 1.0);
        term.time = parse_time_profile(require(t, tctx, "time"), tctx + ".time");
        term.t_deriv = get_int_or(t, tctx, "time_derivative", 0);
        if (term.t_deriv < 0 || term.t_deriv > 1)
            fail(tctx + ".time_derivative", "must be 0 or 1");
        d.terms.push_back(std::move(term));
    }
    return d;
}

std::vector<PointCharge> parse_charges(const json& j, const std::string& ctx) {
    if (!j.is_array()) fail(ctx, "expected an array of point charges");
    std::vector<PointCharge> v;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string cctx = ctx + "[" + std::to_string(i) + "]";
        check_keys(j[i], cctx, {"charge", "position"});
        v.push_back(PointCharge{get_double(j[i], cctx, "charge"),
                                get_double(j[i], cctx, "position")});
    }
    return v;
}

json time_profile_to_json(const TimeProfile& p) {
    json j;
    switch (p.kind) {
    case TimeKind::constant:
        j["kind"] = "constant";
        j["value"] = p.value_c;
        break;
    case TimeKind::linear:
        j["kind"] = "linear";
        j["offset"] = p.offset;
        j["slope"] = p.slope;
        break;
    case TimeKind::sinusoid:
        j["kind"] = "sinusoid";
        j["amplitude"] = p.amplitude;
        j["omega"] = p.omega;
        j["phase"] = p.phase;
        break;
    case TimeKind::gaussian:
        j["kind"] = "gaussian";
        j["amplitude"] = p.amplitude;
        j["center"] = p.center;
        j["width"] = p.width;
        break;
    case TimeKind::gaussian_pulse:
        j["kind"] = "gaussian-pulse";
        j["amplitude"] = p.amplitude;
        j["omega"] = p.omega;
        j["phase"] = p.phase;
        j["center"] = p.center;
        j["width"] = p.width;
        break;
    case TimeKind::sin2_pulse:
        j["kind"] = "sin2-pulse";
        j["amplitude"] = p.amplitude;
        j["omega"] = p.omega;
        j["phase"] = p.phase;
        j["t_start"] = p.t_start;
        j["duration"] = p.duration;
        break;
    case TimeKind::table:
        j["kind"] = "table";
        j["times"] = p.times;
        j["values"] = p.samples;
        break;
    }
    return j;
}

json space_profile_to_json(const SpaceProfile& p) {
    json j;
    switch (p.kind) {
    case SpaceKind::polynomial:
        j["kind"] = "polynomial";
        j["coeffs"] = p.coeffs;
        break;
    case SpaceKind::sinusoid:
        j["kind"] = "sinusoid";
        j["amplitude"] = p.amplitude;
        j["wavenumber"] = p.wavenumber;
        j["phase"] = p.phase;
        break;
    case SpaceKind::table:
        j["kind"] = "table";
        j["positions"] = p.positions;
        j["values"] = p.samples;
        break;
    }
    return j;
}

json field_to_json(const SpaceTimeField& f) {
    json arr = json::array();
    for (const auto& t : f.terms) {
        json j;
        j["coeff"] = t.coeff;
        j["space"] = space_profile_to_json(t.space);
        j["time"] = time_profile_to_json(t.time);
        j["time_derivative"] = t.t_deriv;
        arr.push_back(std::move(j));
    }
    return arr;
}

json drive_to_json(const Drive& d) {
    json arr = json::array();
    for (const auto& t : d.terms) {
        json j;
        j["coeff"] = t.coeff;
        j["time"] = time_profile_to_json(t.time);
        j["time_derivative"] = t.t_deriv;
        arr.push_back(std::move(j));
    }
    return arr;
}

json charges_to_json(const std::vector<PointCharge>& cs) {
    json arr = json::array();
    for (const auto& c : cs) arr.push_back(json{{"charge", c.charge}, {"position", c.position}});
    return arr;
}

GaugeForm parse_gauge_form(const std::string& s, const std::string& ctx) {
    if (s == "general") return GaugeForm::general;
    if (s == "coulomb") return GaugeForm::coulomb;
    if (s == "length") return GaugeForm::length;
    fail(ctx, "unknown gauge form '" + s + "' (expected general, coulomb or length)");
}

const char* gauge_form_name(GaugeForm f) {
    switch (f) {
    case GaugeForm::general: return "general";
    case GaugeForm::coulomb: return "coulomb";
    case GaugeForm::length: return "length";
    }
    return "general";
}

Scenario scenario_from_json(const json& j) {
    const std::string ctx = "scenario";
    check_keys(j, ctx,
               {"name", "grid", "particles", "nuclei", "external_charges", "softening",
                "model_potential", "gauge", "initial_state", "plan", "outputs"});

    Scenario s;
    s.name = as_string(require(j, ctx, "name"), ctx + ".name");

    {
        const json& g = require(j, ctx, "grid");
        check_keys(g, ctx + ".grid", {"n_points", "dx", "x_min", "n_particles"});
        try {
            s.grid = make_grid(get_int(g, ctx + ".grid", "n_points"),
                               get_double(g, ctx + ".grid", "dx"),
                               get_double(g, ctx + ".grid", "x_min"),
                               get_int(g, ctx + ".grid", "n_particles"));
        } catch (const std::invalid_argument& e) {
            fail(ctx + ".grid", e.what());
        }
    }

    {
        const json& p = require(j, ctx, "particles");
        if (!p.is_array() || p.empty()) fail(ctx + ".particles", "expected a non-empty array");
        for (std::size_t i = 0; i < p.size(); ++i) {
            std::string pctx = ctx + ".particles[" + std::to_string(i) + "]";
            check_keys(p[i], pctx, {"mass", "charge"});
            double mass = get_double(p[i], pctx, "mass");
            if (!(mass > 0.0)) fail(pctx + ".mass", "must be positive");
            s.particles.push_back(ParticleSpec{mass, get_double(p[i], pctx, "charge")});
        }
        if (static_cast<int>(s.particles.size()) != s.grid.n_particles)
            fail(ctx + ".particles", "length must equal grid.n_particles");
    }

    if (j.contains("nuclei")) s.nuclei = parse_charges(j["nuclei"], ctx + ".nuclei");
    if (j.contains("external_charges"))
        s.external_charges = parse_charges(j["external_charges"], ctx + ".external_charges");

    s.softening = get_double_or(j, ctx, "softening", 1.0);
    if (!(s.softening > 0.0)) fail(ctx + ".softening", "must be positive");

    if (j.contains("model_potential")) {
        const json& m = j["model_potential"];
        std::string mctx = ctx + ".model_potential";
        std::string kind = as_string(require(m, mctx, "kind"), mctx + ".kind");
        if (kind == "none") {
            check_keys(m, mctx, {"kind"});
        } else if (kind == "harmonic") {
            check_keys(m, mctx, {"kind", "omega", "center"});
            s.model_potential.kind = ModelPotential::Kind::harmonic;
            s.model_potential.omega = get_double(m, mctx, "omega");
            s.model_potential.center = get_double_or(m, mctx, "center", 0.0);
        } else {
            fail(mctx + ".kind", "unknown model potential '" + kind + "'");
        }
    }

    {
        const json& g = require(j, ctx, "gauge");
        std::string gctx = ctx + ".gauge";
        s.gauge_form = parse_gauge_form(as_string(require(g, gctx, "form"), gctx + ".form"),
                                        gctx + ".form");
        switch (s.gauge_form) {
        case GaugeForm::general: check_keys(g, gctx, {"form", "phi", "a", "e0", "chi"}); break;
        case GaugeForm::coulomb: check_keys(g, gctx, {"form", "a", "e0", "chi"}); break;
        case GaugeForm::length: check_keys(g, gctx, {"form", "efield"}); break;
        }
        if (g.contains("phi")) s.phi = parse_field(g["phi"], gctx + ".phi");
        if (g.contains("a")) s.a_pot = parse_field(g["a"], gctx + ".a");
        if (g.contains("e0")) s.e0 = parse_drive(g["e0"], gctx + ".e0");
        if (g.contains("efield")) s.efield = parse_drive(g["efield"], gctx + ".efield");
        if (g.contains("chi")) s.chi = GaugeFunction{parse_field(g["chi"], gctx + ".chi")};
        if (s.gauge_form == GaugeForm::coulomb && !s.a_pot.spatially_uniform())
            fail(gctx + ".a",
                 "the coulomb form requires a spatially uniform vector potential; "
                 "use form 'general' for spatially varying A(x,t)");
    }

    if (j.contains("initial_state")) {
        const json& is = j["initial_state"];
        std::string ictx = ctx + ".initial_state";
        std::string kind = as_string(require(is, ictx, "kind"), ictx + ".kind");
        if (kind == "ground-state") {
            check_keys(is, ictx, {"kind", "gs_tol"});
            s.initial_state.kind = InitialStateSpec::Kind::ground_state;
            s.initial_state.gs_tol = get_double_or(is, ictx, "gs_tol", 1e-10);
        } else if (kind == "gaussian") {
            check_keys(is, ictx, {"kind", "centers", "widths", "momenta"});
            s.initial_state.kind = InitialStateSpec::Kind::gaussian;
            s.initial_state.centers =
                as_double_array(require(is, ictx, "centers"), ictx + ".centers");
            s.initial_state.widths = as_double_array(require(is, ictx, "widths"), ictx + ".widths");
            s.initial_state.momenta =
                as_double_array(require(is, ictx, "momenta"), ictx + ".momenta");
            auto np = static_cast<std::size_t>(s.grid.n_particles);
            if (s.initial_state.centers.size() != np || s.initial_state.widths.size() != np ||
                s.initial_state.momenta.size() != np)
                fail(ictx, "centers/widths/momenta must have one entry per particle");
            for (double w : s.initial_state.widths)
                if (!(w > 0.0)) fail(ictx + ".widths", "must be positive");
        } else {
            fail(ictx + ".kind", "unknown initial state kind '" + kind + "'");
        }
    }

    {
        const json& p = require(j, ctx, "plan");
        std::string pctx = ctx + ".plan";
        check_keys(p, pctx, {"dt", "n_steps", "record_every", "solver_tol"});
        s.plan.dt = get_double(p, pctx, "dt");
        s.plan.n_steps = get_int(p, pctx, "n_steps");
        s.plan.record_every = get_int_or(p, pctx, "record_every", 1);
        s.plan.solver_tol = get_double_or(p, pctx, "solver_tol", 1e-12);
        try {
            validate_plan(s.plan);
        } catch (const std::invalid_argument& e) {
            fail(pctx, e.what());
        }
    }

    if (j.contains("outputs")) {
        const json& o = j["outputs"];
        std::string octx = ctx + ".outputs";
        check_keys(o, octx, {"observables", "report", "arrays", "array_every"});
        if (o.contains("observables"))
            s.outputs.observables = as_string(o["observables"], octx + ".observables");
        if (o.contains("report")) s.outputs.report = as_string(o["report"], octx + ".report");
        if (o.contains("arrays")) {
            if (!o["arrays"].is_array()) fail(octx + ".arrays", "expected an array of names");
            for (const auto& a : o["arrays"]) {
                std::string name = as_string(a, octx + ".arrays");
                if (name != "charge_density" && name != "current_density" &&
                    name != "polarization")
                    fail(octx + ".arrays", "unknown array '" + name + "'");
                s.outputs.arrays.push_back(name);
            }
        }
        s.outputs.array_every = get_int_or(o, octx, "array_every", 1);
        if (s.outputs.array_every < 1) fail(octx + ".array_every", "must be >= 1");
    }

    return s;
}

} // namespace

Scenario parse_scenario_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("scenario: JSON parse error: ") + e.what());
    }
    return scenario_from_json(j);
}

Scenario parse_scenario(const std::string& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::runtime_error& e) {
        throw ScenarioError(e.what());
    }
    return parse_scenario_text(text);
}

std::string serialize_scenario(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["grid"] = {{"n_points", s.grid.n_points},
                 {"dx", s.grid.dx},
                 {"x_min", s.grid.x_min},
                 {"n_particles", s.grid.n_particles}};
    json parts = json::array();
    for (const auto& p : s.particles)
        parts.push_back(json{{"mass", p.mass}, {"charge", p.charge}});
    j["particles"] = std::move(parts);
    j["nuclei"] = charges_to_json(s.nuclei);
    j["external_charges"] = charges_to_json(s.external_charges);
    j["softening"] = s.softening;
    if (s.model_potential.kind == ModelPotential::Kind::harmonic)
        j["model_potential"] = {{"kind", "harmonic"},
                                {"omega", s.model_potential.omega},
                                {"center", s.model_potential.center}};
    json g;
    g["form"] = gauge_form_name(s.gauge_form);
    switch (s.gauge_form) {
    case GaugeForm::general:
        g["phi"] = field_to_json(s.phi);
        g["a"] = field_to_json(s.a_pot);
        g["e0"] = drive_to_json(s.e0);
        if (s.chi) g["chi"] = field_to_json(s.chi->chi);
        break;
    case GaugeForm::coulomb:
        g["a"] = field_to_json(s.a_pot);
        g["e0"] = drive_to_json(s.e0);
        if (s.chi) g["chi"] = field_to_json(s.chi->chi);
        break;
    case GaugeForm::length:
        g["efield"] = drive_to_json(s.efield);
        break;
    }
    j["gauge"] = std::move(g);
    json is;
    if (s.initial_state.kind == InitialStateSpec::Kind::ground_state) {
        is["kind"] = "ground-state";
        is["gs_tol"] = s.initial_state.gs_tol;
    } else {
        is["kind"] = "gaussian";
        is["centers"] = s.initial_state.centers;
        is["widths"] = s.initial_state.widths;
        is["momenta"] = s.initial_state.momenta;
    }
    j["initial_state"] = std::move(is);
    j["plan"] = {{"dt", s.plan.dt},
                 {"n_steps", s.plan.n_steps},
                 {"record_every", s.plan.record_every},
                 {"solver_tol", s.plan.solver_tol}};
    j["outputs"] = {{"observables", s.outputs.observables},
                    {"report", s.outputs.report},
                    {"arrays", s.outputs.arrays},
                    {"array_every", s.outputs.array_every}};
    return j.dump(2) + "\n";
}

HamiltonianSpec build_hamiltonian_spec(const Scenario& s) {
    HamiltonianSpec spec;
    spec.gauge_form = s.gauge_form;
    spec.grid = s.grid;
    spec.particles = s.particles;
    spec.fields = FieldConfig{s.phi, s.a_pot, s.e0};
    spec.efield = s.efield;
    spec.softening = s.softening;
    spec.internal_potential = build_internal_potential(s.particles, s.grid, s.softening, s.nuclei);
    spec.external_potential =
        build_external_potential(s.external_charges, s.particles, s.grid, s.softening);

    if (s.model_potential.kind == ModelPotential::Kind::harmonic) {
        const Grid& g = s.grid;
        int n = g.n_points;
        auto well = [&](int l, int i) {
            double u = g.coordinate(i) - s.model_potential.center;
            return 0.5 * s.particles[l].mass * s.model_potential.omega * s.model_potential.omega *
                   u * u;
        };
        if (g.n_particles == 1) {
            for (int i = 0; i < n; ++i) spec.internal_potential.values[i] += well(0, i);
        } else {
            for (int i = 0; i < n; ++i)
                for (int jj = 0; jj < n; ++jj)
                    spec.internal_potential.values[static_cast<std::size_t>(i) * n + jj] +=
                        well(0, i) + well(1, jj);
        }
    }

    validate_spec(spec);
    return spec;
}

HamiltonianSpec static_hamiltonian_spec(const Scenario& s) {
    HamiltonianSpec spec = build_hamiltonian_spec(s);
    auto keep_static_field = [](SpaceTimeField& f) {
        std::vector<FieldTerm> kept;
        for (auto& t : f.terms)
            if (t.coeff == 0.0 || is_static_time_term(t.time, t.t_deriv)) kept.push_back(t);
        f.terms = std::move(kept);
    };
    auto keep_static_drive = [](Drive& d) {
        std::vector<DriveTerm> kept;
        for (auto& t : d.terms)
            if (t.coeff == 0.0 || is_static_time_term(t.time, t.t_deriv)) kept.push_back(t);
        d.terms = std::move(kept);
    };
    keep_static_field(spec.fields.phi);
    keep_static_field(spec.fields.a_pot);
    keep_static_drive(spec.fields.e0);
    keep_static_drive(spec.efield);
    return spec;
}

WaveFunction build_initial_state(const Scenario& s) {
    if (s.initial_state.kind == InitialStateSpec::Kind::ground_state) {
        auto gs = ground_state_imaginary_time(static_hamiltonian_spec(s), s.initial_state.gs_tol);
        gs.psi.set_time(0.0);
        return std::move(gs.psi);
    }

    const Grid& g = s.grid;
    int n = g.n_points;
    const auto& is = s.initial_state;
    auto packet = [&](int l, double x) {
        double u = (x - is.centers[l]) / is.widths[l];
        return cplx(std::exp(-0.5 * u * u), 0.0) *
               cplx(std::cos(is.momenta[l] * x), std::sin(is.momenta[l] * x));
    };
    WaveFunction psi(g, 0.0);
    if (g.n_particles == 1) {
        for (int i = 0; i < n; ++i) psi[i] = packet(0, g.coordinate(i));
    } else {
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj)
                psi[static_cast<std::size_t>(i) * n + jj] =
                    packet(0, g.coordinate(i)) * packet(1, g.coordinate(jj));
    }
    psi.normalize();
    return psi;
}

std::vector<std::vector<double>> build_force_grids(const Scenario& s) {
    std::vector<std::vector<double>> forces;
    const Grid& g = s.grid;
    int n = g.n_points;
    for (int l = 0; l < g.n_particles; ++l) {
        auto f = potential_force(s.particles, g, s.softening, s.nuclei, s.external_charges, l);
        if (s.model_potential.kind == ModelPotential::Kind::harmonic) {
            double k = s.particles[l].mass * s.model_potential.omega * s.model_potential.omega;
            auto spring = [&](int i) { return -k * (g.coordinate(i) - s.model_potential.center); };
            if (g.n_particles == 1) {
                for (int i = 0; i < n; ++i) f[i] += spring(i);
            } else {
                for (int i = 0; i < n; ++i)
                    for (int jj = 0; jj < n; ++jj)
                        f[static_cast<std::size_t>(i) * n + jj] += spring(l == 0 ? i : jj);
            }
        }
        forces.push_back(std::move(f));
    }
    return forces;
}

} // namespace qgauge
