#include "spectra/experiments.hpp"

#include "spectra/errors.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

namespace spectra {

namespace {

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(6);
    out << x;
    return out.str();
}

// Rethrows solver and mesh failures with the offending angle attached.
template <class Fn>
auto at_angle(double t, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const NumericalError& e) {
        throw NumericalError(std::string(e.what()) + " (t = " + fmt(t) + ")");
    } catch (const MeshError& e) {
        throw MeshError(std::string(e.what()) + " (t = " + fmt(t) + ")");
    }
}

// Evaluates fn at every angle, in batches of hardware threads, keeping input order.
template <class Fn>
auto map_angles(const std::vector<double>& ts, Fn fn) -> std::vector<decltype(fn(0.0))> {
    using Result = decltype(fn(0.0));
    const std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
    std::vector<Result> results;
    results.reserve(ts.size());
    if (workers == 1) {
        for (double t : ts) {
            results.push_back(at_angle(t, [&] { return fn(t); }));
        }
        return results;
    }
    for (std::size_t begin = 0; begin < ts.size(); begin += workers) {
        const std::size_t end = std::min(ts.size(), begin + workers);
        std::vector<std::future<Result>> batch;
        for (std::size_t i = begin; i < end; ++i) {
            const double t = ts[i];
            batch.push_back(std::async(std::launch::async, [t, &fn] { return at_angle(t, [&] { return fn(t); }); }));
        }
        for (auto& f : batch) {
            results.push_back(f.get());
        }
    }
    return results;
}

bool is_disk_case(const DomainPair& pair) { return pair.outer.is_constant() || pair.inner.is_constant(); }

TheoremCheck constancy_check(const std::string& quantity, const std::vector<double>& values) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    TheoremCheck c;
    c.name = quantity + " constant in t";
    c.margin = (*hi - *lo) / std::fabs(mean);
    c.tolerance = 1e-3;
    c.passed = c.margin <= c.tolerance;
    c.detail = "(max - min) / |mean| over " + std::to_string(values.size()) + " samples";
    return c;
}

// a > b with |Δ_fine − Δ_coarse| as the uncertainty of Δ = a − b.
TheoremCheck strict_greater(const std::string& name, double a_fine, double b_fine, double a_coarse, double b_coarse) {
    const double diff = a_fine - b_fine;
    const double uncertainty = std::fabs(diff - (a_coarse - b_coarse));
    TheoremCheck c;
    c.name = name;
    c.margin = diff;
    c.tolerance = 3.0 * uncertainty;
    c.passed = diff > 0.0 && diff > c.tolerance;
    c.detail = "difference " + fmt(diff) + ", refinement uncertainty " + fmt(uncertainty);
    return c;
}

double solve_lambda(const Configuration& config, const MeshParams& params) {
    return smallest_eigenpair(assemble(triangulate(config, params, MeshMode::annular))).lambda;
}

void require_samples(int t_samples, int minimum) {
    if (t_samples < minimum) {
        throw ValidationError("t_samples must be at least " + std::to_string(minimum));
    }
}

double van_der_corput(int index, int base) {
    double value = 0.0;
    double scale = 1.0 / base;
    while (index > 0) {
        value += scale * (index % base);
        index /= base;
        scale /= base;
    }
    return value;
}

}  // namespace

bool TheoremReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const TheoremCheck& c) { return c.passed; });
}

void TheoremReport::append(const TheoremReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::vector<double> t_grid(int order, int count) {
    std::vector<double> ts(count);
    for (int j = 0; j < count; ++j) {
        ts[j] = j * (kPi / order) / (count - 1);
    }
    return ts;
}

std::pair<PlanarMesh, PlanarMesh> two_level_meshes(const Configuration& config, const MeshParams& params,
                                                   MeshMode mode) {
    if (params.refinement_levels == 0) {
        MeshParams coarse = params;
        coarse.target_h = 2.0 * params.target_h;
        return {triangulate_base(config, coarse, mode), triangulate_base(config, params, mode)};
    }
    auto levels = triangulate_hierarchy(config, params, mode);
    const std::size_t last = levels.size() - 1;
    return {std::move(levels[last - 1]), std::move(levels[last])};
}

std::vector<SweepRecord> sweep(const DomainPair& pair, const MeshParams& params, int t_samples,
                               const SweepOptions& options) {
    require_samples(t_samples, 5);
    const auto free = check_free_rotation(pair);
    if (!free.ok) {
        throw ValidationError("free rotation violated: f(pi/n) - g(0) = " + fmt(-free.margin));
    }
    return map_angles(t_grid(pair.outer.order(), t_samples), [&](double t) {
        const auto [coarse, fine] = two_level_meshes(Configuration{pair, t}, params, MeshMode::annular);
        const DirichletSystem coarse_sys = assemble(coarse);
        const EigenSolution coarse_sol = smallest_eigenpair(coarse_sys);
        const DirichletSystem fine_sys = assemble(fine);
        const EigenSolution fine_sol = smallest_eigenpair(fine_sys);
        const BoundaryFlux flux = recover_flux(fine_sol, fine, fine_sys);

        SweepRecord r;
        r.t = t;
        r.lambda = fine_sol.lambda;
        r.hadamard_deriv = hadamard_derivative(flux);
        r.mesh_h = fine.max_edge_length();
        r.solver_residual = fine_sol.residual;
        r.iterations = fine_sol.iterations;
        r.lambda_coarse = coarse_sol.lambda;
        r.hadamard_coarse = hadamard_derivative(recover_flux(coarse_sol, coarse, coarse_sys));
        r.min_flux = flux.min_flux;
        r.max_flux = flux.max_flux;
        if (options.finite_difference) {
            r.fd_deriv = finite_difference_derivative(fine, options.fd_delta);
        }
        return r;
    });
}

TheoremReport decreasing_checks(const std::string& quantity, const std::vector<double>& t,
                                const std::vector<double>& fine, const std::vector<double>& coarse) {
    TheoremReport report;
    for (std::size_t j = 0; j + 1 < fine.size(); ++j) {
        report.add(strict_greater(quantity + " decreasing from t=" + fmt(t[j]) + " to t=" + fmt(t[j + 1]), fine[j],
                                  fine[j + 1], coarse[j], coarse[j + 1]));
    }
    return report;
}

TheoremReport theorem_checks(const DomainPair& pair, const std::vector<SweepRecord>& records) {
    TheoremReport report;
    std::vector<double> t, lambda, lambda_coarse;
    for (const auto& r : records) {
        t.push_back(r.t);
        lambda.push_back(r.lambda);
        lambda_coarse.push_back(r.lambda_coarse);
    }
    const std::size_t last = records.size() - 1;

    if (is_disk_case(pair)) {
        report.add(constancy_check("lambda", lambda));
        double mean = 0.0, largest_had = 0.0, largest_fd = 0.0;
        bool any_fd = false;
        for (const auto& r : records) {
            mean += r.lambda / static_cast<double>(records.size());
            largest_had = std::max(largest_had, std::fabs(r.hadamard_deriv));
            if (r.fd_deriv) {
                any_fd = true;
                largest_fd = std::max(largest_fd, std::fabs(*r.fd_deriv));
            }
        }
        report.add({"hadamard derivative vanishes", largest_had <= 1e-3 * mean, largest_had, 1e-3 * mean,
                    "largest |derivative| against 1e-3 of mean lambda"});
        if (any_fd) {
            report.add({"finite difference vanishes", largest_fd <= 1e-3 * mean, largest_fd, 1e-3 * mean,
                        "largest |derivative| against 1e-3 of mean lambda"});
        }
        return report;
    }

    report.append(decreasing_checks("lambda", t, lambda, lambda_coarse));

    double max_interior = 0.0;
    for (std::size_t j = 1; j < last; ++j) {
        max_interior = std::max(max_interior, std::fabs(records[j].hadamard_deriv));
    }
    for (std::size_t j = 1; j < last; ++j) {
        const auto& r = records[j];
        TheoremCheck c;
        c.name = "hadamard derivative negative at t=" + fmt(r.t);
        c.margin = -r.hadamard_deriv;
        c.tolerance = 3.0 * std::fabs(r.hadamard_deriv - r.hadamard_coarse);
        c.passed = c.margin > 0.0 && c.margin > c.tolerance;
        c.detail = "fine " + fmt(r.hadamard_deriv) + ", coarse " + fmt(r.hadamard_coarse);
        report.add(c);
    }
    for (std::size_t j : {std::size_t{0}, last}) {
        TheoremCheck c;
        c.name = "hadamard derivative vanishes at t=" + fmt(records[j].t);
        c.margin = std::fabs(records[j].hadamard_deriv);
        c.tolerance = 1e-2 * max_interior;
        c.passed = c.margin <= c.tolerance;
        c.detail = "tolerance is 1e-2 of the largest interior |derivative|";
        report.add(c);
    }

    // Critical points: near-zero samples and sign changes between samples.
    std::vector<std::size_t> critical;
    for (std::size_t j = 0; j <= last; ++j) {
        if (std::fabs(records[j].hadamard_deriv) <= 1e-2 * max_interior) {
            critical.push_back(j);
        }
    }
    int interior_changes = 0;
    for (std::size_t j = 1; j + 1 < last; ++j) {
        if ((records[j].hadamard_deriv < 0.0) != (records[j + 1].hadamard_deriv < 0.0)) {
            ++interior_changes;
        }
    }
    {
        TheoremCheck c;
        c.name = "critical points only at t=0 and t=pi/n";
        const bool endpoints_only = critical.size() == 2 && critical.front() == 0 && critical.back() == last;
        c.margin = static_cast<double>(interior_changes) +
                   static_cast<double>(critical.size()) - (endpoints_only ? 2.0 : 0.0);
        c.tolerance = 0.0;
        c.passed = endpoints_only && interior_changes == 0;
        c.detail = std::to_string(critical.size()) + " near-zero samples, " + std::to_string(interior_changes) +
                   " interior sign changes";
        report.add(c);
    }

    {
        std::size_t arg = 1;
        for (std::size_t j = 1; j <= last; ++j) {
            if (lambda[j] > lambda[arg]) {
                arg = j;
            }
        }
        report.add(strict_greater("ON position is the maximum", lambda[0], lambda[arg], lambda_coarse[0],
                                  lambda_coarse[arg]));
        arg = 0;
        for (std::size_t j = 0; j < last; ++j) {
            if (lambda[j] < lambda[arg]) {
                arg = j;
            }
        }
        report.add(strict_greater("OFF position is the minimum", lambda[arg], lambda[last], lambda_coarse[arg],
                                  lambda_coarse[last]));
    }

    for (std::size_t j = 0; j <= last; ++j) {
        const auto& r = records[j];
        if (!r.fd_deriv) {
            continue;
        }
        TheoremCheck c;
        const double fd = *r.fd_deriv;
        if (j == 0 || j == last) {
            c.name = "finite difference agrees at t=" + fmt(r.t);
            c.margin = std::fabs(r.hadamard_deriv - fd);
            c.tolerance = 1e-2 * max_interior;
            c.detail = "absolute difference, both near zero";
        } else {
            c.name = "finite difference agrees at t=" + fmt(r.t);
            c.margin = std::fabs(r.hadamard_deriv - fd) / std::fabs(fd);
            c.tolerance = 0.05;
            c.detail = "hadamard " + fmt(r.hadamard_deriv) + ", finite difference " + fmt(fd);
        }
        c.passed = c.margin <= c.tolerance;
        report.add(c);
    }
    return report;
}

TheoremReport domain_monotonicity_checks(const DomainPair& pair, const MeshParams& params,
                                         const std::vector<SweepRecord>& records) {
    const PlanarMesh mesh = triangulate(Configuration{pair, 0.0}, params, MeshMode::full);
    const double lambda_d = smallest_eigenpair(assemble(mesh)).lambda;
    TheoremReport report;
    for (const auto& r : records) {
        TheoremCheck c;
        c.name = "obstacle raises lambda at t=" + fmt(r.t);
        c.margin = (r.lambda - lambda_d) / lambda_d;
        c.tolerance = 1e-6;
        c.passed = c.margin > c.tolerance;
        c.detail = "lambda(D) = " + fmt(lambda_d) + ", lambda(t) = " + fmt(r.lambda);
        report.add(c);
    }
    return report;
}

TheoremReport verify_symmetries(const DomainPair& pair, const MeshParams& params, double probe_t) {
    const int n = pair.outer.order();
    const double period = kTwoPi / n;
    const double half = kPi / n;
    if (!(probe_t > 0.0 && probe_t < half)) {
        throw ValidationError("probe angle must lie in (0, pi/n)");
    }
    const std::vector<double> angles{probe_t, -probe_t, probe_t + period, half - probe_t, half + probe_t};
    const auto lambdas =
        map_angles(angles, [&](double t) { return solve_lambda(Configuration{pair, t}, params); });

    auto compare = [](const std::string& name, double a, double b) {
        TheoremCheck c;
        c.name = name;
        c.margin = std::fabs(a - b) / std::fabs(a);
        c.tolerance = 1e-3;
        c.passed = c.margin <= c.tolerance;
        c.detail = fmt(a) + " vs " + fmt(b);
        return c;
    };
    TheoremReport report;
    report.add(compare("lambda even in t", lambdas[0], lambdas[1]));
    report.add(compare("lambda periodic with period 2pi/n", lambdas[0], lambdas[2]));
    report.add(compare("lambda symmetric about pi/n", lambdas[3], lambdas[4]));
    return report;
}

ReflectionReport reflection_test(const DomainPair& pair, const MeshParams& params, double t, int num_samples) {
    const int n = pair.outer.order();
    const double half = kPi / n;
    if (!(t > 0.0 && t < half)) {
        throw ValidationError("reflection test needs t in (0, pi/n)");
    }
    if (pair.outer.is_constant() || pair.inner.is_constant()) {
        throw ValidationError("reflection test needs two nonconstant profiles");
    }
    if (num_samples < 1) {
        throw ValidationError("reflection test needs at least one sample");
    }

    const PlanarMesh mesh = at_angle(t, [&] { return triangulate(Configuration{pair, t}, params, MeshMode::annular); });
    const EigenSolution sol = at_angle(t, [&] { return smallest_eigenpair(assemble(mesh)); });
    const TriangleLocator locator(mesh);
    const PolarCurve& outer = mesh.outer_curve;
    const PolarCurve& obstacle = mesh.obstacle_curve;

    ReflectionReport rep;
    rep.t = t;
    rep.max_u = sol.u.maxCoeff();
    rep.max_w = -std::numeric_limits<double>::infinity();
    rep.min_w_near_outer = std::numeric_limits<double>::infinity();

    const double axis = half + t;
    const double eps = 0.05 * params.target_h;
    for (int i = 0; i < num_samples; ++i) {
        const int index = kReflectionSeed + i + 1;
        const double theta = axis + half * van_der_corput(index, 2);
        const double lo = obstacle.radius(theta) + eps;
        const double hi = outer.radius(theta) - eps;
        const double r = std::sqrt(lo * lo + van_der_corput(index, 3) * (hi * hi - lo * lo));
        const Vec2 x(r * std::cos(theta), r * std::sin(theta));
        const Vec2 mirror = reflect(x, axis);

        const auto ux = locator.interpolate(sol.u, x);
        if (!ux) {
            throw MeshError("sample point outside the mesh at theta = " + fmt(theta));
        }
        const auto um = locator.interpolate(sol.u, mirror);
        if (!um) {
            throw TheoryViolation("mirror image of a point of H(t) left the domain at theta = " + fmt(theta) +
                                  ", t = " + fmt(t));
        }
        const double w = *ux - *um;
        const bool near = outer.radius(theta) - r <= 0.25 * (outer.radius(theta) - obstacle.radius(theta));
        rep.points.push_back(x);
        rep.w.push_back(w);
        rep.near_outer.push_back(near);
        rep.max_w = std::max(rep.max_w, w);
        if (near) {
            rep.min_w_near_outer = std::min(rep.min_w_near_outer, w);
        }
    }
    rep.passed = rep.max_w <= 1e-3 * rep.max_u;
    rep.strict = rep.min_w_near_outer < -1e-2 * rep.max_u;
    return rep;
}

namespace {

void monotone_report(QuantitySweep& out, const std::string& quantity, bool decreasing) {
    std::vector<double> t, fine, coarse;
    const double sign = decreasing ? 1.0 : -1.0;
    for (const auto& r : out.records) {
        t.push_back(r.t);
        fine.push_back(sign * r.value);
        coarse.push_back(sign * r.value_coarse);
    }
    const std::string label = decreasing ? quantity : "-" + quantity;
    out.report.append(decreasing_checks(label, t, fine, coarse));
    const std::size_t last = fine.size() - 1;
    out.report.add(strict_greater(decreasing ? "ON value exceeds OFF value" : "OFF value exceeds ON value", fine[0],
                                  fine[last], coarse[0], coarse[last]));
}

}  // namespace

QuantitySweep schrodinger_sweep(const DomainPair& pair, double alpha, const MeshParams& params, int t_samples) {
    require_samples(t_samples, 2);
    if (!std::isfinite(alpha)) {
        throw ValidationError("alpha must be finite");
    }
    QuantitySweep out;
    out.quantity = "mu";
    out.records = map_angles(t_grid(pair.outer.order(), t_samples), [&](double t) {
        const auto [coarse, fine] = two_level_meshes(Configuration{pair, t}, params, MeshMode::full);
        auto solve = [alpha](const PlanarMesh& mesh) {
            const DirichletSystem sys = assemble(mesh);
            const PotentialTerm potential = assemble_potential(mesh, sys, alpha);
            return smallest_eigenpair(sys, &potential);
        };
        const EigenSolution c = solve(coarse);
        const EigenSolution f = solve(fine);
        QuantityRecord r;
        r.t = t;
        r.value = f.lambda;
        r.value_coarse = c.lambda;
        r.mesh_h = fine.max_edge_length();
        r.residual = f.residual;
        r.iterations = f.iterations;
        r.shift = f.shift;
        return r;
    });
    if (alpha == 0.0 || is_disk_case(pair)) {
        std::vector<double> values;
        for (const auto& r : out.records) {
            values.push_back(r.value);
        }
        out.report.add(constancy_check("mu", values));
    } else {
        monotone_report(out, "mu", alpha > 0.0);
    }
    return out;
}

QuantitySweep torsion_sweep(const DomainPair& pair, const MeshParams& params, int t_samples) {
    require_samples(t_samples, 2);
    QuantitySweep out;
    out.quantity = "J";
    out.records = map_angles(t_grid(pair.outer.order(), t_samples), [&](double t) {
        const auto [coarse, fine] = two_level_meshes(Configuration{pair, t}, params, MeshMode::annular);
        auto solve = [](const PlanarMesh& mesh) { return solve_linear(assemble(mesh), assemble_torsion_load(mesh)); };
        const LinearSolution c = solve(coarse);
        const LinearSolution f = solve(fine);
        QuantityRecord r;
        r.t = t;
        r.value = f.energy;
        r.value_coarse = c.energy;
        r.mesh_h = fine.max_edge_length();
        r.residual = std::fabs(f.energy - f.load_work) / f.load_work;
        return r;
    });
    double min_energy = std::numeric_limits<double>::infinity();
    for (const auto& r : out.records) {
        min_energy = std::min(min_energy, r.value);
    }
    TheoremCheck positive;
    positive.name = "J positive";
    positive.margin = min_energy;
    positive.tolerance = 0.0;
    positive.passed = min_energy > 0.0;
    positive.detail = "smallest J over the sweep";
    out.report.add(positive);

    if (is_disk_case(pair)) {
        std::vector<double> values;
        for (const auto& r : out.records) {
            values.push_back(r.value);
        }
        out.report.add(constancy_check("J", values));
    } else {
        monotone_report(out, "J", true);
    }
    return out;
}

TheoremCheck torsion_disk_check(double radius, const MeshParams& params) {
    if (!(radius > 0.0)) {
        throw ValidationError("disk radius must be positive");
    }
    const DomainPair pair(RadialProfile(3, {radius}), RadialProfile(3, {0.3 * radius}));
    const PlanarMesh mesh = triangulate(Configuration{pair, 0.0}, params, MeshMode::full);
    const LinearSolution sol = solve_linear(assemble(mesh), assemble_torsion_load(mesh));
    const double expected = radius * radius / 4.0;
    TheoremCheck c;
    c.name = "disk torsion maximum equals R^2/4";
    c.margin = std::fabs(sol.u.maxCoeff() - expected) / expected;
    c.tolerance = 1e-2;
    c.passed = c.margin <= c.tolerance;
    c.detail = "max u " + fmt(sol.u.maxCoeff()) + ", closed form " + fmt(expected);
    return c;
}

}  // namespace spectra
