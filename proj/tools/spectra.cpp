#include "spectra/config.hpp"
#include "spectra/errors.hpp"
#include "spectra/oracle.hpp"
#include "spectra/report_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

using namespace spectra;
using json = nlohmann::ordered_json;

enum ExitCode { kPass = 0, kInvalidInput = 1, kCheckFailed = 2, kNumericalFailure = 3 };

json config_json(const RunConfig& cfg) {
    json j{{"n", cfg.n},
           {"outer", {{"series", cfg.outer_series}}},
           {"inner", {{"series", cfg.inner_series}}},
           {"t_samples", cfg.t_samples},
           {"mesh",
            {{"target_h", cfg.mesh.target_h},
             {"refinement_levels", cfg.mesh.refinement_levels},
             {"boundary_samples_outer", cfg.mesh.boundary_samples_outer},
             {"boundary_samples_inner", cfg.mesh.boundary_samples_inner}}},
           {"alpha", nullptr},
           {"finite_difference", cfg.finite_difference},
           {"fd_delta", cfg.fd_delta},
           {"probe_t", cfg.probe_t},
           {"reflection_t", cfg.reflection_t},
           {"reflection_samples", cfg.reflection_samples},
           {"outer_phase_shift", cfg.outer_phase_shift},
           {"inner_phase_shift", cfg.inner_phase_shift}};
    if (cfg.alpha) {
        j["alpha"] = *cfg.alpha;
    }
    return j;
}

void write_sweep_outputs(const std::string& out, const std::string& csv, const std::string& title,
                         const std::string& label, const std::vector<double>& t, const std::vector<double>& values) {
    write_text_file(out + "/sweep.csv", csv);
    write_text_file(out + "/lambda_vs_t.svg", line_plot_svg(title, label, t, values));
}

TheoremReport run_sweep(const RunConfig& cfg, const std::string& out, json& report) {
    const DomainPair pair = cfg.pair();
    SweepOptions options;
    options.finite_difference = cfg.finite_difference;
    options.fd_delta = cfg.fd_delta;
    const auto records = sweep(pair, cfg.mesh, cfg.t_samples, options);

    TheoremReport checks = theorem_checks(pair, records);
    checks.append(domain_monotonicity_checks(pair, cfg.mesh, records));

    std::vector<double> t, lambda;
    json rows = json::array();
    for (const auto& r : records) {
        t.push_back(r.t);
        lambda.push_back(r.lambda);
        rows.push_back(to_json(r));
    }
    report["records"] = rows;
    write_sweep_outputs(out, sweep_csv(records), "first Dirichlet eigenvalue vs obstacle angle", "lambda(t)", t,
                        lambda);
    return checks;
}

TheoremReport run_verify(const RunConfig& cfg, const std::string& out, json& report) {
    const DomainPair pair = cfg.pair();
    TheoremReport checks = run_sweep(cfg, out, report);
    checks.append(verify_symmetries(pair, cfg.mesh, cfg.probe_t));

    json reflections = json::array();
    if (!pair.outer.is_constant() && !pair.inner.is_constant()) {
        for (double t : cfg.reflection_t) {
            const ReflectionReport r = reflection_test(pair, cfg.mesh, t, cfg.reflection_samples);
            reflections.push_back(to_json(r));
            checks.add({"reflection w <= 0 at t=" + format_number(t), r.passed, r.max_w, 1e-3 * r.max_u,
                        "max w against 1e-3 max u"});
            checks.add({"reflection strictly negative near the outer boundary at t=" + format_number(t), r.strict,
                        r.min_w_near_outer, -1e-2 * r.max_u, "min w near the outer boundary against -1e-2 max u"});
        }
    }
    report["reflection"] = reflections;
    return checks;
}

TheoremReport run_quantity(const QuantitySweep& result, const std::string& out, json& report, const std::string& title) {
    std::vector<double> t, values;
    json rows = json::array();
    for (const auto& r : result.records) {
        t.push_back(r.t);
        values.push_back(r.value);
        rows.push_back({{"t", r.t},
                        {result.quantity, r.value},
                        {result.quantity + "_coarse", r.value_coarse},
                        {"mesh_h", r.mesh_h},
                        {"residual", r.residual},
                        {"iterations", r.iterations},
                        {"shift", r.shift}});
    }
    report["quantity"] = result.quantity;
    report["records"] = rows;
    write_sweep_outputs(out, quantity_csv(result), title, result.quantity + "(t)", t, values);
    return result.report;
}

TheoremReport run_oracle(const RunConfig& cfg, json& report) {
    const DomainPair pair = cfg.pair();
    if (!pair.outer.is_constant() || !pair.inner.is_constant()) {
        throw ValidationError("oracle needs constant outer and inner profiles (concentric disks)");
    }
    const double r = pair.inner.radius(0.0);
    const double big_r = pair.outer.radius(0.0);
    const Configuration config{pair, 0.0};

    const double annulus_ref = oracle::oracle_annulus(r, big_r);
    const double annulus_fem = smallest_eigenpair(assemble(triangulate(config, cfg.mesh, MeshMode::annular))).lambda;
    const double disk_ref = oracle::disk_eigenvalue(big_r);
    const double disk_fem = smallest_eigenpair(assemble(triangulate(config, cfg.mesh, MeshMode::full))).lambda;
    report["oracle"] = {{"inner_radius", r},
                        {"outer_radius", big_r},
                        {"annulus_lambda", annulus_ref},
                        {"annulus_lambda_fem", annulus_fem},
                        {"disk_lambda", disk_ref},
                        {"disk_lambda_fem", disk_fem},
                        {"disk_torsion_max", oracle::disk_torsion_max(big_r)}};

    TheoremReport checks;
    auto relative = [](const std::string& name, double fem, double ref) {
        const double rel = std::fabs(fem - ref) / ref;
        return TheoremCheck{name, rel <= 5e-3, rel, 5e-3, "FEM " + format_number(fem) + ", oracle " + format_number(ref)};
    };
    checks.add(relative("annulus eigenvalue matches Bessel cross-product root", annulus_fem, annulus_ref));
    checks.add(relative("disk eigenvalue matches first J0 zero squared", disk_fem, disk_ref));
    checks.add(torsion_disk_check(big_r, cfg.mesh));
    return checks;
}

int run(const std::string& command, const std::string& config_path, const std::string& out) {
    json report{{"command", command}};
    auto finish = [&](int code) {
        report["exit_code"] = code;
        try {
            std::filesystem::create_directories(out);
            write_text_file(out + "/report.json", report.dump(2) + "\n");
        } catch (const std::exception& e) {
            std::cerr << "spectra: " << e.what() << "\n";
        }
        return code;
    };

    try {
        const RunConfig cfg = load_config(config_path);
        report["config"] = config_json(cfg);
        std::filesystem::create_directories(out);

        TheoremReport checks;
        if (command == "validate") {
            const FreeRotation free = check_free_rotation(cfg.pair());
            checks.add({"profiles valid", true, 0.0, 0.0, "positive and monotone on (0, pi/n) after normalization"});
            checks.add({"free rotation", free.ok, free.margin, 0.0, "g(0) - f(pi/n)"});
        } else if (command == "sweep") {
            checks = run_sweep(cfg, out, report);
        } else if (command == "verify") {
            checks = run_verify(cfg, out, report);
        } else if (command == "schrodinger") {
            if (!cfg.alpha) {
                throw ValidationError("schrodinger needs 'alpha' in the config");
            }
            checks = run_quantity(schrodinger_sweep(cfg.pair(), *cfg.alpha, cfg.mesh, cfg.t_samples), out, report,
                                  "fundamental eigenvalue of the Schrodinger operator vs obstacle angle");
        } else if (command == "torsion") {
            checks = run_quantity(torsion_sweep(cfg.pair(), cfg.mesh, cfg.t_samples), out, report,
                                  "torsion energy vs obstacle angle");
        } else {
            checks = run_oracle(cfg, report);
        }

        report["report"] = to_json(checks);
        for (const auto& c : checks.checks) {
            if (!c.passed) {
                std::cerr << "FAIL " << c.name << " (margin " << c.margin << ", tolerance " << c.tolerance << ")\n";
            }
        }
        std::cout << command << ": " << checks.checks.size() << " checks, "
                  << (checks.all_passed() ? "all passed" : "some failed") << "\n";
        return finish(checks.all_passed() ? kPass : kCheckFailed);
    } catch (const ValidationError& e) {
        std::cerr << "spectra: invalid input: " << e.what() << "\n";
        report["error"] = {{"kind", "validation"}, {"message", e.what()}};
        return finish(kInvalidInput);
    } catch (const TheoryViolation& e) {
        std::cerr << "spectra: theorem violation: " << e.what() << "\n";
        report["error"] = {{"kind", "theory_violation"}, {"message", e.what()}};
        return finish(kCheckFailed);
    } catch (const std::exception& e) {
        std::cerr << "spectra: numerical failure: " << e.what() << "\n";
        report["error"] = {{"kind", "numerical"}, {"message", e.what()}};
        return finish(kNumericalFailure);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet eigenvalue of a domain with a rotating obstacle"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"validate", "check the configuration and the free-rotation condition"},
        {"sweep", "lambda(t) sweep with Hadamard and finite-difference derivatives"},
        {"verify", "sweep plus symmetry and reflection checks"},
        {"schrodinger", "soft obstacle or well sweep (needs alpha)"},
        {"torsion", "torsion energy sweep"},
        {"oracle", "concentric disks against Bessel and closed-form references"}};
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", out_dir, "output directory")->required();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInvalidInput;
    }
    return run(app.get_subcommands().front()->get_name(), config_path, out_dir);
}
