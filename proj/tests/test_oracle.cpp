#include "spectra/errors.hpp"
#include "spectra/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace spectra::oracle {
namespace {

TEST(Bessel, MatchesStandardLibrary) {
    for (double x : {0.0, 0.1, 1.0, 2.404825557695773, 5.0, 12.3, 19.9, 20.1, 35.0, 80.0}) {
        EXPECT_NEAR(bessel_j0(x), std::cyl_bessel_j(0.0, x), 1e-12) << x;
        EXPECT_NEAR(bessel_j1(x), std::cyl_bessel_j(1.0, x), 1e-12) << x;
        if (x > 0.0) {
            EXPECT_NEAR(bessel_y0(x), std::cyl_neumann(0.0, x), 1e-12) << x;
            EXPECT_NEAR(bessel_y1(x), std::cyl_neumann(1.0, x), 1e-11) << x;
        }
    }
    EXPECT_THROW(bessel_y0(0.0), DomainError);
    EXPECT_THROW(bessel_y1(-1.0), DomainError);
}

TEST(Bessel, FirstZero) {
    EXPECT_NEAR(first_j0_zero(), 2.404825557695773, 1e-13);
    EXPECT_NEAR(disk_eigenvalue(1.0), 2.404825557695773 * 2.404825557695773, 1e-12);
    EXPECT_NEAR(disk_eigenvalue(2.0), disk_eigenvalue(1.0) / 4.0, 1e-12);
}

TEST(Annulus, CrossProductRootIsARoot) {
    const double r = 0.3, big = 1.0;
    const double k = std::sqrt(oracle_annulus(r, big));
    const double cross = std::cyl_bessel_j(0.0, k * r) * std::cyl_neumann(0.0, k * big) -
                         std::cyl_bessel_j(0.0, k * big) * std::cyl_neumann(0.0, k * r);
    EXPECT_NEAR(cross, 0.0, 1e-11);
    // No sign change of the cross product below k, so the root is the first one.
    double previous = std::cyl_bessel_j(0.0, 0.01 * r) * std::cyl_neumann(0.0, 0.01 * big) -
                      std::cyl_bessel_j(0.0, 0.01 * big) * std::cyl_neumann(0.0, 0.01 * r);
    for (int i = 2; i < 1000; ++i) {
        const double kk = k * i / 1000.0;
        const double c = std::cyl_bessel_j(0.0, kk * r) * std::cyl_neumann(0.0, kk * big) -
                         std::cyl_bessel_j(0.0, kk * big) * std::cyl_neumann(0.0, kk * r);
        EXPECT_GT(c * previous, 0.0) << kk;
        previous = c;
    }
}

TEST(Annulus, SmallestRootAndMonotonicity) {
    double previous = 0.0;
    for (double r : {1e-3, 0.05, 0.1, 0.3, 0.5, 0.7}) {
        const double lambda = oracle_annulus(r, 1.0);
        EXPECT_GT(lambda, previous);
        previous = lambda;
    }
    EXPECT_GT(oracle_annulus(1e-3, 1.0), disk_eigenvalue(1.0));
    EXPECT_LT(oracle_annulus(1e-6, 1.0), disk_eigenvalue(1.0) * 1.2);
    // Thin annulus tends to the 1D Dirichlet value (π/(R − r))².
    const double gap = 0.01;
    EXPECT_NEAR(oracle_annulus(1.0 - gap, 1.0) * gap * gap / (M_PI * M_PI), 1.0, 1e-3);
    EXPECT_THROW(oracle_annulus(0.0, 1.0), ValidationError);
    EXPECT_THROW(oracle_annulus(1.0, 1.0), ValidationError);
}

TEST(Annulus, ModeIsNormalizedAndPositive) {
    const AnnulusMode mode = annulus_mode(0.3, 1.0);
    EXPECT_NEAR(mode.value(0.3), 0.0, 1e-10);
    EXPECT_NEAR(mode.value(1.0), 0.0, 1e-10);
    double integral = 0.0;
    const int steps = 2000;
    for (int i = 0; i < steps; ++i) {
        const double rho = 0.3 + 0.7 * (i + 0.5) / steps;
        EXPECT_GT(mode.value(rho), 0.0);
        integral += mode.value(rho) * mode.value(rho) * rho * 0.7 / steps;
    }
    EXPECT_NEAR(2.0 * M_PI * integral, 1.0, 1e-5);
    EXPECT_GT(mode.radial_derivative(0.3), 0.0);
    EXPECT_LT(mode.radial_derivative(1.0), 0.0);
    const double step = 1e-6;
    EXPECT_NEAR(mode.radial_derivative(0.6), (mode.value(0.6 + step) - mode.value(0.6 - step)) / (2 * step), 1e-6);
}

TEST(Torsion, DiskClosedForm) { EXPECT_DOUBLE_EQ(disk_torsion_max(2.0), 1.0); }

}  // namespace
}  // namespace spectra::oracle
