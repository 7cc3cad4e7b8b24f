#include "fixtures.hpp"

#include "spectra/eigensolve.hpp"
#include "spectra/errors.hpp"
#include "spectra/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace spectra {
namespace {

using testing::coarse_params;
using testing::d3_pair;
using testing::disk_pair;

TEST(SmallestEigenpair, AnnulusAgainstBesselOracle) {
    const PlanarMesh mesh = triangulate(Configuration{disk_pair(), 0.0}, coarse_params(0.04, 1), MeshMode::annular);
    const DirichletSystem sys = assemble(mesh);
    const EigenSolution sol = smallest_eigenpair(sys);
    EXPECT_NEAR(sol.lambda / oracle::oracle_annulus(0.3, 1.0), 1.0, 5e-3);
    EXPECT_LE(sol.residual, 1e-10);
    EXPECT_NEAR(sol.u.dot(sys.mass * sol.u), 1.0, 1e-12);
    EXPECT_GE(sol.u.minCoeff(), -1e-10 * sol.u.maxCoeff());
    EXPECT_EQ(sol.residual_history.size(), static_cast<std::size_t>(sol.iterations));
    for (int v : sys.boundary_dofs) {
        EXPECT_EQ(sol.u[v], 0.0);
    }
    const Eigen::VectorXd r = sys.restrict_to_free(sys.stiffness * sol.u - sol.lambda * (sys.mass * sol.u));
    EXPECT_LE(r.norm(), 1e-8 * (sys.stiffness * sol.u).norm());
}

TEST(SmallestEigenpair, DiskAgainstFirstBesselZero) {
    const PlanarMesh mesh = triangulate(Configuration{disk_pair(), 0.0}, coarse_params(0.04, 1), MeshMode::full);
    const EigenSolution sol = smallest_eigenpair(assemble(mesh));
    EXPECT_NEAR(sol.lambda / oracle::disk_eigenvalue(1.0), 1.0, 5e-3);
}

TEST(SmallestEigenpair, RefinementLowersTheEigenvalue) {
    const auto levels =
        triangulate_hierarchy(Configuration{disk_pair(), 0.0}, coarse_params(0.08, 2), MeshMode::annular);
    double previous = std::numeric_limits<double>::infinity();
    for (const auto& mesh : levels) {
        const double lambda = smallest_eigenpair(assemble(mesh)).lambda;
        EXPECT_LT(lambda, previous * (1.0 + 1e-4));
        EXPECT_GT(lambda, oracle::oracle_annulus(0.3, 1.0) * (1.0 - 1e-4));
        previous = lambda;
    }
}

TEST(SmallestEigenpair, AccelerationDoesNotChangeTheAnswer) {
    const PlanarMesh mesh = triangulate(Configuration{d3_pair(), 0.4}, coarse_params(0.05), MeshMode::annular);
    const DirichletSystem sys = assemble(mesh);
    EigenOptions plain;
    plain.acceleration_start = 0;
    plain.max_iterations = 5000;
    const EigenSolution a = smallest_eigenpair(sys, nullptr, plain);
    const EigenSolution b = smallest_eigenpair(sys);
    EXPECT_NEAR(a.lambda, b.lambda, 1e-9 * a.lambda);
    EXPECT_EQ(a.shift, 0.0);
    EXPECT_LT(b.shift, 0.0);
    EXPECT_LT(b.iterations, a.iterations);
    EXPECT_NEAR((a.u - b.u).norm() / a.u.norm(), 0.0, 1e-6);
}

TEST(SmallestEigenpair, NonConvergenceReportsHistory) {
    const PlanarMesh mesh = triangulate(Configuration{d3_pair(), 0.4}, coarse_params(0.08), MeshMode::annular);
    EigenOptions opts;
    opts.max_iterations = 3;
    opts.acceleration_start = 0;
    try {
        smallest_eigenpair(assemble(mesh), nullptr, opts);
        FAIL() << "expected NumericalError";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("residuals"), std::string::npos);
    }
}

TEST(SmallestEigenpair, DeepWellUsesShift) {
    const PlanarMesh mesh = triangulate(Configuration{d3_pair(), 0.0}, coarse_params(0.05), MeshMode::full);
    const DirichletSystem sys = assemble(mesh);
    const PotentialTerm well = assemble_potential(mesh, sys, -200.0);
    EigenOptions plain;
    plain.acceleration_start = 0;
    const EigenSolution a = smallest_eigenpair(sys, &well, plain);
    EXPECT_NEAR(a.shift, 201.0, 1e-12);
    EXPECT_LT(a.lambda, 0.0);
    EXPECT_GT(a.lambda, smallest_eigenpair(sys).lambda - 200.0);
    const EigenSolution b = smallest_eigenpair(sys, &well);
    EXPECT_NEAR(a.lambda, b.lambda, 1e-9 * std::fabs(a.lambda));
}

TEST(SecondEigenvalue, FundamentalIsSimple) {
    for (const DomainPair& pair : {d3_pair(), disk_pair()}) {
        const PlanarMesh mesh = triangulate(Configuration{pair, 0.3}, coarse_params(0.05), MeshMode::annular);
        const DirichletSystem sys = assemble(mesh);
        const EigenSolution first = smallest_eigenpair(sys);
        const double second = second_eigenvalue(sys, first);
        EXPECT_GT(second - first.lambda, 1e-6 * first.lambda);
    }
}

TEST(SmallestEigenpair, EigenfunctionHasDihedralRotationSymmetry) {
    const PlanarMesh mesh = triangulate(Configuration{d3_pair(), 0.3}, coarse_params(0.03, 1), MeshMode::annular);
    const EigenSolution sol = smallest_eigenpair(assemble(mesh));
    const TriangleLocator locator(mesh);
    const double c = std::cos(kTwoPi / 3), s = std::sin(kTwoPi / 3);
    double worst = 0.0;
    int used = 0;
    for (int i = 0; used < 200 && i < 5000; ++i) {
        const double r = 0.2 + 1.0 * std::fmod(0.618034 * i, 1.0);
        const double th = kTwoPi * std::fmod(0.7548777 * i, 1.0);
        const Vec2 p(r * std::cos(th), r * std::sin(th));
        const Vec2 q(c * p.x() - s * p.y(), s * p.x() + c * p.y());
        const auto up = locator.interpolate(sol.u, p);
        const auto uq = locator.interpolate(sol.u, q);
        if (up && uq) {
            worst = std::max(worst, std::fabs(*up - *uq));
            ++used;
        }
    }
    EXPECT_EQ(used, 200);
    EXPECT_LE(worst, 1e-3 * sol.u.maxCoeff());
}

TEST(SmallestEigenpair, ObstacleRaisesTheEigenvalue) {
    const MeshParams p = coarse_params(0.05);
    const double lambda_d = smallest_eigenpair(assemble(triangulate(Configuration{d3_pair(), 0.0}, p, MeshMode::full))).lambda;
    for (double t : {0.0, 0.5, kPi / 3}) {
        const double lambda = smallest_eigenpair(assemble(triangulate(Configuration{d3_pair(), t}, p, MeshMode::annular))).lambda;
        EXPECT_GT(lambda, lambda_d * (1.0 + 1e-6));
    }
}

TEST(SolveLinear, TorsionIdentityPositivityAndDisk) {
    const PlanarMesh mesh = triangulate(Configuration{d3_pair(), 0.2}, coarse_params(0.05), MeshMode::annular);
    const DirichletSystem sys = assemble(mesh);
    const LinearSolution sol = solve_linear(sys, assemble_torsion_load(mesh));
    EXPECT_NEAR(sol.energy, sol.load_work, 1e-10 * sol.load_work);
    EXPECT_GT(sol.energy, 0.0);
    for (int v : sys.free_dofs) {
        EXPECT_GT(sol.u[v], 0.0);
    }

    const DomainPair disk(RadialProfile(3, {1.5}), RadialProfile(3, {0.4}));
    const PlanarMesh full = triangulate(Configuration{disk, 0.0}, coarse_params(0.05, 1), MeshMode::full);
    const LinearSolution d = solve_linear(assemble(full), assemble_torsion_load(full));
    EXPECT_NEAR(d.u.maxCoeff() / oracle::disk_torsion_max(1.5), 1.0, 1e-2);
}

}  // namespace
}  // namespace spectra
