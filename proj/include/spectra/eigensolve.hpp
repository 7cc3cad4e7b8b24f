#pragma once

#include "spectra/fem.hpp"

#include <vector>

namespace spectra {

/// Fundamental eigenpair of (K [+ αM_B]) u = λ M u.
struct EigenSolution {
    double lambda = 0.0;
    Eigen::VectorXd u;        ///< nodal values on every vertex, zero on Dirichlet vertices, uᵀMu = 1
    int iterations = 0;
    double residual = 0.0;    ///< ‖Au − λMu‖ / (max(|λ|, 1)‖Mu‖) on the free dofs
    double shift = 0.0;       ///< final σ of the factored A + σM (negative after acceleration)
    std::vector<double> residual_history;
};

struct EigenOptions {
    int max_iterations = 500;
    double lambda_tolerance = 1e-12;
    double residual_tolerance = 1e-10;
    int acceleration_start = 8;  ///< iteration at which a certified Rayleigh shift is tried; 0 disables
};

/// Inverse iteration from the all-ones vector with a sparse Cholesky factor
/// of A, reused across iterations. When A is indefinite (a deep well), the
/// pencil is first shifted by σ = 1 + |α|. After a few plain steps the
/// factor is replaced by one of A − σM with σ just below λ₁.
/// Throws NumericalError on non-convergence.
EigenSolution smallest_eigenpair(const DirichletSystem& system, const PotentialTerm* potential = nullptr,
                                 const EigenOptions& options = {});

/// Second eigenvalue by inverse iteration kept M-orthogonal to the first eigenvector.
double second_eigenvalue(const DirichletSystem& system, const EigenSolution& first,
                         const PotentialTerm* potential = nullptr);

struct LinearSolution {
    Eigen::VectorXd u;      ///< all vertices, zero on Dirichlet vertices
    double energy = 0.0;    ///< uᵀKu
    double load_work = 0.0; ///< bᵀu
};

/// Solves K u = b on the free dofs. Throws NumericalError if the factorization
/// fails or uᵀKu and bᵀu disagree beyond 1e−10 relative.
LinearSolution solve_linear(const DirichletSystem& system, const Eigen::VectorXd& load);

}  // namespace spectra
