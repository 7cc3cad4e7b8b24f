#pragma once

#include "spectra/eigensolve.hpp"

#include <vector>

namespace spectra {

/// Normal derivative of the eigenfunction along the obstacle cycle, one entry
/// per obstacle-boundary vertex in loop order.
struct BoundaryFlux {
    std::vector<double> theta;
    std::vector<double> flux;                 ///< ∂u/∂η, η pointing out of the obstacle
    std::vector<double> normal_dot_velocity;  ///< analytic η·v at theta
    std::vector<double> speed;                ///< analytic √(h² + h'²) at theta
    double min_flux = 0.0;
    double max_flux = 0.0;
};

/// Residual-based flux recovery: the moments K u − λ M u on obstacle rows are
/// turned into nodal values by the 1D boundary mass matrix of the cycle.
/// Requires an annular mesh.
BoundaryFlux recover_flux(const EigenSolution& solution, const PlanarMesh& mesh, const DirichletSystem& system);

/// Periodic trapezoid rule in θ for ∫ (∂u/∂η)² (η·v) dσ.
double hadamard_derivative(const BoundaryFlux& flux);

/// λ at the configuration angle on a fixed mesh, convenience for FD work.
double eigenvalue_on(const PlanarMesh& mesh);

/// Central difference (λ(t+δ) − λ(t−δ)) / 2δ. Both perturbed meshes share the
/// connectivity of the level-L mesh of the configuration; only the obstacle
/// neighbourhood is turned by ±δ.
double finite_difference_derivative(const Configuration& config, double delta, const MeshParams& params);

/// Same, on an existing annular mesh.
double finite_difference_derivative(const PlanarMesh& mesh, double delta);

}  // namespace spectra
