#include "fixtures.hpp"

#include "spectra/errors.hpp"
#include "spectra/oracle.hpp"
#include "spectra/shape_derivative.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace spectra {
namespace {

using testing::coarse_params;
using testing::d3_pair;
using testing::disk_pair;

struct Solved {
    PlanarMesh mesh;
    DirichletSystem sys;
    EigenSolution sol;
    BoundaryFlux flux;
};

Solved solve_at(const DomainPair& pair, double t, const MeshParams& params) {
    PlanarMesh mesh = triangulate(Configuration{pair, t}, params, MeshMode::annular);
    DirichletSystem sys = assemble(mesh);
    EigenSolution sol = smallest_eigenpair(sys);
    BoundaryFlux flux = recover_flux(sol, mesh, sys);
    return {std::move(mesh), std::move(sys), std::move(sol), std::move(flux)};
}

TEST(RecoverFlux, ConcentricDisksMatchRadialMode) {
    const Solved s = solve_at(disk_pair(), 0.0, coarse_params(0.02));
    double mean = 0.0, sq = 0.0;
    for (double q : s.flux.flux) {
        mean += q;
        sq += q * q;
    }
    const double m = static_cast<double>(s.flux.flux.size());
    mean /= m;
    const double cv = std::sqrt(std::max(0.0, sq / m - mean * mean)) / mean;
    EXPECT_LE(cv, 0.02);
    EXPECT_GE(s.flux.min_flux, -1e-3 * s.flux.max_flux);
    const double expected = oracle::annulus_mode(0.3, 1.0).radial_derivative(0.3);
    EXPECT_NEAR(mean / expected, 1.0, 0.02);
    for (double nv : s.flux.normal_dot_velocity) {
        EXPECT_EQ(nv, 0.0);
    }
    EXPECT_EQ(hadamard_derivative(s.flux), 0.0);
}

TEST(RecoverFlux, AnalyticGeometryAlongTheCycle) {
    const Solved s = solve_at(d3_pair(), 0.4, coarse_params(0.05));
    ASSERT_EQ(s.flux.theta.size(), s.mesh.obstacle.vertices.size());
    for (std::size_t j = 0; j < s.flux.theta.size(); ++j) {
        EXPECT_EQ(s.flux.normal_dot_velocity[j], normal_dot_velocity(s.mesh.obstacle_curve, s.flux.theta[j]));
        EXPECT_EQ(s.flux.speed[j], s.mesh.obstacle_curve.speed(s.flux.theta[j]));
    }
    EXPECT_GE(s.flux.min_flux, -1e-3 * s.flux.max_flux);
}

TEST(RecoverFlux, NeedsAnnularMesh) {
    const PlanarMesh full = triangulate(Configuration{d3_pair(), 0.0}, coarse_params(0.08), MeshMode::full);
    const DirichletSystem sys = assemble(full);
    EXPECT_THROW(recover_flux(smallest_eigenpair(sys), full, sys), ValidationError);
}

TEST(HadamardDerivative, AgreesWithFiniteDifference) {
    const Solved s = solve_at(d3_pair(), kPi / 6, coarse_params(0.03, 1));
    const double had = hadamard_derivative(s.flux);
    const double fd = finite_difference_derivative(s.mesh, 1e-3);
    EXPECT_LT(had, 0.0);
    EXPECT_LT(fd, 0.0);
    EXPECT_LE(std::fabs(had - fd) / std::fabs(fd), 0.05);
}

TEST(HadamardDerivative, VanishesAtOnAndOff) {
    const MeshParams p = coarse_params(0.04);
    const double interior = std::fabs(hadamard_derivative(solve_at(d3_pair(), kPi / 6, p).flux));
    EXPECT_LE(std::fabs(hadamard_derivative(solve_at(d3_pair(), 0.0, p).flux)), 1e-2 * interior);
    EXPECT_LE(std::fabs(hadamard_derivative(solve_at(d3_pair(), kPi / 3, p).flux)), 1e-2 * interior);
}

TEST(HadamardDerivative, QuadratureConvergedInBoundarySamples) {
    MeshParams p = coarse_params(0.03);
    p.boundary_samples_inner = 256;
    const double a = hadamard_derivative(solve_at(d3_pair(), 0.5, p).flux);
    p.boundary_samples_inner = 512;
    const double b = hadamard_derivative(solve_at(d3_pair(), 0.5, p).flux);
    EXPECT_LE(std::fabs(a - b) / std::fabs(b), 0.01);
}

TEST(FiniteDifference, DiskPairIsFlat) {
    const MeshParams p = coarse_params(0.03);
    const double lambda = solve_at(disk_pair(), 0.3, p).sol.lambda;
    EXPECT_LE(std::fabs(finite_difference_derivative(Configuration{disk_pair(), 0.3}, 1e-3, p)), 1e-6 * lambda);
}

TEST(FiniteDifference, OddInT) {
    const MeshParams p = coarse_params(0.04);
    const double plus = finite_difference_derivative(Configuration{d3_pair(), 0.4}, 1e-3, p);
    const double minus = finite_difference_derivative(Configuration{d3_pair(), -0.4}, 1e-3, p);
    EXPECT_NEAR(plus, -minus, 1e-3 * std::fabs(plus));
    EXPECT_THROW(finite_difference_derivative(Configuration{d3_pair(), 0.4}, 0.0, p), ValidationError);
}

}  // namespace
}  // namespace spectra
