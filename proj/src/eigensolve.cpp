#include "spectra/eigensolve.hpp"

#include "spectra/errors.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace spectra {

namespace {

using Factor = Eigen::SimplicialLLT<SparseSymMatrix, Eigen::Lower, Eigen::AMDOrdering<int>>;

SparseSymMatrix operator_matrix(const DirichletSystem& system, const PotentialTerm* potential) {
    SparseSymMatrix a = system.stiffness_free;
    if (potential != nullptr && potential->alpha != 0.0) {
        a += potential->alpha * potential->region_mass_free;
    }
    return a;
}

double m_norm(const SparseSymMatrix& m, const Eigen::VectorXd& x) { return std::sqrt(x.dot(m * x)); }

std::string history_tail(const std::vector<double>& history) {
    std::ostringstream out;
    const std::size_t first = history.size() > 5 ? history.size() - 5 : 0;
    for (std::size_t i = first; i < history.size(); ++i) {
        out << (i == first ? "" : ", ") << history[i];
    }
    return out.str();
}

}  // namespace

EigenSolution smallest_eigenpair(const DirichletSystem& system, const PotentialTerm* potential,
                                 const EigenOptions& options) {
    if (system.num_free() == 0) {
        throw NumericalError("eigenproblem has no free degrees of freedom");
    }
    const SparseSymMatrix& b = system.mass_free;
    const SparseSymMatrix a = operator_matrix(system, potential);

    EigenSolution sol;
    Factor factor(a);
    if (factor.info() != Eigen::Success) {
        const double alpha = potential != nullptr ? potential->alpha : 0.0;
        if (alpha >= 0.0) {
            throw NumericalError("stiffness matrix is not positive definite on the free dofs");
        }
        sol.shift = 1.0 + std::fabs(alpha);
        factor.compute(SparseSymMatrix(a + sol.shift * b));
        if (factor.info() != Eigen::Success) {
            throw NumericalError("shifted pencil is not positive definite");
        }
    }

    Eigen::VectorXd x = Eigen::VectorXd::Ones(system.num_free());
    x /= m_norm(b, x);
    double previous = std::numeric_limits<double>::infinity();
    bool converged = false;
    bool accelerated = false;
    for (int it = 1; it <= options.max_iterations; ++it) {
        const Eigen::VectorXd bx = b * x;
        Eigen::VectorXd y = factor.solve(bx);
        const Eigen::VectorXd by = b * y;
        const double shifted = y.dot(bx) / y.dot(by);
        const double scale = std::sqrt(y.dot(by));
        y /= scale;

        const double lambda = shifted - sol.shift;
        const Eigen::VectorXd my = by / scale;
        const Eigen::VectorXd ay = a * y;
        const double scale_lambda = std::max(std::fabs(lambda), 1.0);
        const double residual = (ay - lambda * my).norm() / (scale_lambda * my.norm());
        sol.residual_history.push_back(residual);
        sol.lambda = lambda;
        sol.residual = residual;
        sol.iterations = it;
        x = y;
        if (std::fabs(lambda - previous) <= options.lambda_tolerance * scale_lambda &&
            residual <= options.residual_tolerance) {
            converged = true;
            break;
        }
        previous = lambda;

        if (!accelerated && it == options.acceleration_start) {
            // yᵀAy/yᵀMy bounds λ₁ from above; a successful Cholesky of
            // A − σM certifies σ < λ₁, so the ground state stays dominant
            // while the ratio against λ₂ shrinks.
            accelerated = true;
            const double rayleigh = y.dot(ay);
            double gap = 0.02 * std::max(std::fabs(rayleigh), 1.0);
            for (int attempt = 0; attempt < 6; ++attempt, gap *= 2.0) {
                const double sigma = rayleigh - gap;
                if (sigma <= -sol.shift) {
                    break;
                }
                Factor trial(SparseSymMatrix(a - sigma * b));
                if (trial.info() == Eigen::Success) {
                    factor.compute(SparseSymMatrix(a - sigma * b));
                    sol.shift = -sigma;
                    break;
                }
            }
        }
    }
    if (!converged) {
        throw NumericalError("inverse iteration did not converge in " + std::to_string(options.max_iterations) +
                             " iterations; last residuals: " + history_tail(sol.residual_history));
    }

    sol.u = system.extend_from_free(x);
    const double norm = m_norm(system.mass, sol.u);
    sol.u /= norm;
    if ((system.mass * sol.u).sum() < 0.0) {
        sol.u = -sol.u;
    }
    return sol;
}

double second_eigenvalue(const DirichletSystem& system, const EigenSolution& first, const PotentialTerm* potential) {
    const SparseSymMatrix& b = system.mass_free;
    SparseSymMatrix a = operator_matrix(system, potential);
    if (first.shift != 0.0) {
        a += first.shift * b;
    }
    Factor factor(a);
    if (factor.info() != Eigen::Success) {
        throw NumericalError("cannot factor the operator for the second eigenvalue");
    }
    const Eigen::VectorXd u1 = system.restrict_to_free(first.u);
    const Eigen::VectorXd bu1 = b * u1;
    const double u1_norm2 = u1.dot(bu1);
    auto deflate = [&](Eigen::VectorXd& v) { v -= (v.dot(bu1) / u1_norm2) * u1; };

    // A generic linear function of position has no particular symmetry, so it
    // overlaps the second eigenspace.
    Eigen::VectorXd x(system.num_free());
    for (int i = 0; i < system.num_free(); ++i) {
        x[i] = 1.0 + 0.61 * static_cast<double>(i % 7) / 7.0 + 0.37 * static_cast<double>(i % 11) / 11.0;
    }
    deflate(x);
    x /= m_norm(b, x);
    double previous = std::numeric_limits<double>::infinity();
    double value = previous;
    for (int it = 0; it < 1000; ++it) {
        Eigen::VectorXd y = factor.solve(b * x);
        deflate(y);
        const Eigen::VectorXd by = b * y;
        value = y.dot(b * x) / y.dot(by);
        x = y / std::sqrt(y.dot(by));
        if (std::fabs(value - previous) <= 1e-10 * std::fabs(value)) {
            break;
        }
        previous = value;
    }
    return value - first.shift;
}

LinearSolution solve_linear(const DirichletSystem& system, const Eigen::VectorXd& load) {
    Factor factor(system.stiffness_free);
    if (factor.info() != Eigen::Success) {
        throw NumericalError("stiffness factorization failed");
    }
    const Eigen::VectorXd free = factor.solve(system.restrict_to_free(load));
    LinearSolution sol;
    sol.u = system.extend_from_free(free);
    sol.energy = sol.u.dot(system.stiffness * sol.u);
    sol.load_work = load.dot(sol.u);
    if (std::fabs(sol.energy - sol.load_work) > 1e-10 * std::fabs(sol.load_work)) {
        throw NumericalError("energy identity uᵀKu = bᵀu violated");
    }
    return sol;
}

}  // namespace spectra
