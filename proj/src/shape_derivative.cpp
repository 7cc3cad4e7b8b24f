#include "spectra/shape_derivative.hpp"

#include "spectra/errors.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>

namespace spectra {

BoundaryFlux recover_flux(const EigenSolution& solution, const PlanarMesh& mesh, const DirichletSystem& system) {
    if (mesh.mode != MeshMode::annular) {
        throw ValidationError("flux recovery needs an annular mesh");
    }
    const Eigen::VectorXd residual = system.stiffness * solution.u - solution.lambda * (system.mass * solution.u);

    const auto& loop = mesh.obstacle;
    const int m = static_cast<int>(loop.vertices.size());
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(4 * m);
    for (int j = 0; j < m; ++j) {
        const int k = (j + 1) % m;
        const double len = (mesh.vertices[loop.vertices[k]] - mesh.vertices[loop.vertices[j]]).norm();
        entries.emplace_back(j, j, len / 3.0);
        entries.emplace_back(k, k, len / 3.0);
        entries.emplace_back(j, k, len / 6.0);
        entries.emplace_back(k, j, len / 6.0);
    }
    SparseSymMatrix boundary_mass(m, m);
    boundary_mass.setFromTriplets(entries.begin(), entries.end());

    // The outward normal of Ω on ∂B is −η, so the moments equal −∫ ∂u/∂η φ_i.
    Eigen::VectorXd rhs(m);
    for (int j = 0; j < m; ++j) {
        rhs[j] = -residual[loop.vertices[j]];
    }
    Eigen::SimplicialLDLT<SparseSymMatrix> solver(boundary_mass);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("boundary mass matrix is singular");
    }
    const Eigen::VectorXd q = solver.solve(rhs);

    BoundaryFlux out;
    out.theta = loop.theta;
    out.flux.assign(q.data(), q.data() + m);
    out.normal_dot_velocity.resize(m);
    out.speed.resize(m);
    for (int j = 0; j < m; ++j) {
        out.normal_dot_velocity[j] = normal_dot_velocity(mesh.obstacle_curve, loop.theta[j]);
        out.speed[j] = mesh.obstacle_curve.speed(loop.theta[j]);
    }
    out.min_flux = q.minCoeff();
    out.max_flux = q.maxCoeff();
    return out;
}

double hadamard_derivative(const BoundaryFlux& flux) {
    const std::size_t m = flux.theta.size();
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t k = (j + 1) % m;
        double step = flux.theta[k] - flux.theta[j];
        if (k == 0) {
            step += kTwoPi;
        }
        const double fj = flux.flux[j] * flux.flux[j] * flux.normal_dot_velocity[j] * flux.speed[j];
        const double fk = flux.flux[k] * flux.flux[k] * flux.normal_dot_velocity[k] * flux.speed[k];
        total += 0.5 * step * (fj + fk);
    }
    return total;
}

double eigenvalue_on(const PlanarMesh& mesh) { return smallest_eigenpair(assemble(mesh)).lambda; }

double finite_difference_derivative(const PlanarMesh& mesh, double delta) {
    if (!(delta > 0.0)) {
        throw ValidationError("finite-difference step must be positive");
    }
    const double plus = eigenvalue_on(rotate_obstacle(mesh, delta));
    const double minus = eigenvalue_on(rotate_obstacle(mesh, -delta));
    return (plus - minus) / (2.0 * delta);
}

double finite_difference_derivative(const Configuration& config, double delta, const MeshParams& params) {
    return finite_difference_derivative(triangulate(config, params, MeshMode::annular), delta);
}

}  // namespace spectra
