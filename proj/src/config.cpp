#include "spectra/config.hpp"

#include "spectra/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace spectra {

namespace {

using nlohmann::json;

void reject_unknown(const json& object, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = object.begin(); it != object.end(); ++it) {
        if (allowed.count(it.key()) == 0) {
            throw ValidationError("unknown key '" + it.key() + "' in " + where);
        }
    }
}

double finite_number(const json& value, const std::string& field) {
    if (!value.is_number()) {
        throw ValidationError(field + " must be a number");
    }
    const double x = value.get<double>();
    if (!std::isfinite(x)) {
        throw ValidationError(field + " must be finite");
    }
    return x;
}

int integer(const json& value, const std::string& field) {
    if (!value.is_number_integer()) {
        throw ValidationError(field + " must be an integer");
    }
    return value.get<int>();
}

std::vector<double> read_series(const json& root, const std::string& name) {
    if (!root.contains(name) || !root[name].is_object()) {
        throw ValidationError("missing object '" + name + "'");
    }
    const json& profile = root[name];
    reject_unknown(profile, {"series"}, name);
    if (!profile.contains("series") || !profile["series"].is_array() || profile["series"].empty()) {
        throw ValidationError(name + ".series must be a nonempty array");
    }
    std::vector<double> series;
    for (std::size_t k = 0; k < profile["series"].size(); ++k) {
        series.push_back(finite_number(profile["series"][k], name + ".series[" + std::to_string(k) + "]"));
    }
    return series;
}

// Returns the π/n phase shift needed to make the profile nondecreasing on (0, π/n).
double normalize(const std::string& name, const RadialProfile& profile) {
    const ProfileValidation v = validate_profile(profile);
    if (!v.positive) {
        throw ValidationError(name + " profile is not positive: " + v.summary());
    }
    if (v.nondecreasing) {
        return 0.0;
    }
    if (v.valid_after_phase_shift()) {
        return v.phase_shift;
    }
    throw ValidationError(name + " profile is not monotone on (0, pi/n): " + v.summary());
}

}  // namespace

DomainPair RunConfig::pair() const {
    RadialProfile outer(n, outer_series);
    RadialProfile inner(n, inner_series);
    if (outer_phase_shift != 0.0) {
        outer = outer.phase_shifted();
    }
    if (inner_phase_shift != 0.0) {
        inner = inner.phase_shifted();
    }
    return DomainPair(outer, inner);
}

RunConfig parse_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ValidationError("config must be a JSON object");
    }
    reject_unknown(root,
                   {"n", "outer", "inner", "t_samples", "mesh", "alpha", "finite_difference", "fd_delta", "probe_t",
                    "reflection_t", "reflection_samples", "mode"},
                   "config");

    RunConfig cfg;
    if (!root.contains("n")) {
        throw ValidationError("missing integer 'n'");
    }
    cfg.n = integer(root["n"], "n");
    if (cfg.n < 2) {
        throw ValidationError("n must be at least 2");
    }
    cfg.outer_series = read_series(root, "outer");
    cfg.inner_series = read_series(root, "inner");

    if (root.contains("t_samples")) {
        cfg.t_samples = integer(root["t_samples"], "t_samples");
        if (cfg.t_samples < 2) {
            throw ValidationError("t_samples must be at least 2");
        }
    }
    cfg.mesh.target_h = 0.02;
    cfg.mesh.refinement_levels = 1;
    if (root.contains("mesh")) {
        const json& mesh = root["mesh"];
        if (!mesh.is_object()) {
            throw ValidationError("mesh must be an object");
        }
        reject_unknown(mesh, {"target_h", "refinement_levels", "boundary_samples_outer", "boundary_samples_inner"},
                       "mesh");
        if (mesh.contains("target_h")) {
            cfg.mesh.target_h = finite_number(mesh["target_h"], "mesh.target_h");
        }
        if (mesh.contains("refinement_levels")) {
            cfg.mesh.refinement_levels = integer(mesh["refinement_levels"], "mesh.refinement_levels");
        }
        if (mesh.contains("boundary_samples_outer")) {
            cfg.mesh.boundary_samples_outer = integer(mesh["boundary_samples_outer"], "mesh.boundary_samples_outer");
        }
        if (mesh.contains("boundary_samples_inner")) {
            cfg.mesh.boundary_samples_inner = integer(mesh["boundary_samples_inner"], "mesh.boundary_samples_inner");
        }
    }
    cfg.mesh.validate(cfg.n);

    if (root.contains("alpha")) {
        cfg.alpha = finite_number(root["alpha"], "alpha");
    }
    if (root.contains("finite_difference")) {
        if (!root["finite_difference"].is_boolean()) {
            throw ValidationError("finite_difference must be a boolean");
        }
        cfg.finite_difference = root["finite_difference"].get<bool>();
    }
    if (root.contains("fd_delta")) {
        cfg.fd_delta = finite_number(root["fd_delta"], "fd_delta");
        if (!(cfg.fd_delta > 0.0 && cfg.fd_delta < 0.1)) {
            throw ValidationError("fd_delta must lie in (0, 0.1)");
        }
    }
    const double half = kPi / cfg.n;
    cfg.probe_t = 3.0 * half / 8.0;
    if (root.contains("probe_t")) {
        cfg.probe_t = finite_number(root["probe_t"], "probe_t");
        if (!(cfg.probe_t > 0.0 && cfg.probe_t < half)) {
            throw ValidationError("probe_t must lie in (0, pi/n)");
        }
    }
    cfg.reflection_t = {half / 4.0, half / 2.0, 3.0 * half / 4.0};
    if (root.contains("reflection_t")) {
        if (!root["reflection_t"].is_array() || root["reflection_t"].empty()) {
            throw ValidationError("reflection_t must be a nonempty array");
        }
        cfg.reflection_t.clear();
        for (std::size_t i = 0; i < root["reflection_t"].size(); ++i) {
            const double t = finite_number(root["reflection_t"][i], "reflection_t[" + std::to_string(i) + "]");
            if (!(t > 0.0 && t < half)) {
                throw ValidationError("reflection_t entries must lie in (0, pi/n)");
            }
            cfg.reflection_t.push_back(t);
        }
    }
    if (root.contains("reflection_samples")) {
        cfg.reflection_samples = integer(root["reflection_samples"], "reflection_samples");
        if (cfg.reflection_samples < 1) {
            throw ValidationError("reflection_samples must be positive");
        }
    }
    if (root.contains("mode")) {
        static const std::set<std::string> modes{"validate", "sweep", "verify", "schrodinger", "torsion", "oracle"};
        if (!root["mode"].is_string() || modes.count(root["mode"].get<std::string>()) == 0) {
            throw ValidationError("mode must name one of the CLI commands");
        }
    }

    const RadialProfile outer(cfg.n, cfg.outer_series);
    const RadialProfile inner(cfg.n, cfg.inner_series);
    cfg.outer_phase_shift = normalize("outer", outer);
    cfg.inner_phase_shift = normalize("inner", inner);

    const FreeRotation free = check_free_rotation(cfg.pair());
    if (!free.ok) {
        std::ostringstream msg;
        msg << "free rotation violated: max f = f(pi/n) must be below min g = g(0), margin " << free.margin;
        throw ValidationError(msg.str());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read config file " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

}  // namespace spectra
