#include "fixtures.hpp"

#include "spectra/errors.hpp"
#include "spectra/experiments.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace spectra {
namespace {

using testing::coarse_params;
using testing::d3_pair;
using testing::disk_pair;

const TheoremCheck* find_check(const TheoremReport& report, const std::string& prefix) {
    for (const auto& c : report.checks) {
        if (c.name.rfind(prefix, 0) == 0) {
            return &c;
        }
    }
    return nullptr;
}

TEST(TGrid, EndpointsAndSpacing) {
    const auto ts = t_grid(3, 9);
    ASSERT_EQ(ts.size(), 9u);
    EXPECT_EQ(ts.front(), 0.0);
    EXPECT_NEAR(ts.back(), kPi / 3, 1e-15);
    EXPECT_NEAR(ts[4], kPi / 6, 1e-15);
}

TEST(TwoLevelMeshes, LevelsAndFallback) {
    const Configuration cfg{d3_pair(), 0.2};
    const auto [coarse, fine] = two_level_meshes(cfg, coarse_params(0.06, 1), MeshMode::annular);
    EXPECT_EQ(coarse.level, 0);
    EXPECT_EQ(fine.level, 1);
    const auto [c0, f0] = two_level_meshes(cfg, coarse_params(0.06, 0), MeshMode::annular);
    EXPECT_LT(c0.num_vertices(), f0.num_vertices());
}

TEST(Sweep, DiskPairIsConstant) {
    const auto records = sweep(disk_pair(), coarse_params(0.05), 5);
    ASSERT_EQ(records.size(), 5u);
    EXPECT_TRUE(std::is_sorted(records.begin(), records.end(),
                               [](const SweepRecord& a, const SweepRecord& b) { return a.t < b.t; }));
    const TheoremReport report = theorem_checks(disk_pair(), records);
    EXPECT_TRUE(report.all_passed());
    ASSERT_NE(find_check(report, "lambda constant"), nullptr);
    for (const auto& r : records) {
        EXPECT_FALSE(r.fd_deriv.has_value());
        EXPECT_LE(r.solver_residual, 1e-10);
    }
}

TEST(Sweep, RejectsShortGridAndBlockedRotation) {
    EXPECT_THROW(sweep(d3_pair(), coarse_params(), 4), ValidationError);
    const DomainPair blocked(testing::d3_outer(), RadialProfile(3, {0.9}));
    EXPECT_THROW(sweep(blocked, coarse_params(), 5), ValidationError);
}

TEST(Sweep, D3FixtureSatisfiesTheoremChecks) {
    SweepOptions options;
    options.finite_difference = true;
    const auto records = sweep(d3_pair(), coarse_params(0.04, 1), 5, options);
    const TheoremReport report = theorem_checks(d3_pair(), records);
    for (const auto& c : report.checks) {
        EXPECT_TRUE(c.passed) << c.name << " margin " << c.margin << " tolerance " << c.tolerance;
    }
    EXPECT_GE(report.checks.size(), 4u + 3u + 2u + 1u + 2u + 5u);
    EXPECT_TRUE(domain_monotonicity_checks(d3_pair(), coarse_params(0.04, 1), records).all_passed());
}

TEST(DecreasingChecks, UncertaintyRule) {
    const std::vector<double> t{0.0, 0.5, 1.0};
    const TheoremReport ok = decreasing_checks("x", t, {3.0, 2.0, 1.0}, {3.1, 2.1, 1.1});
    EXPECT_TRUE(ok.all_passed());
    EXPECT_EQ(ok.checks.size(), 2u);
    // Δ_fine = 0.1 but the coarse level disagrees by 0.05: 0.1 < 3 * 0.05.
    const TheoremReport noisy = decreasing_checks("x", t, {3.0, 2.9, 1.0}, {3.0, 2.85, 1.0});
    EXPECT_FALSE(noisy.checks[0].passed);
    EXPECT_NEAR(noisy.checks[0].tolerance, 0.15, 1e-12);
    EXPECT_TRUE(noisy.checks[1].passed);
}

TEST(TheoremChecks, FlagsInteriorCriticalPoint) {
    std::vector<SweepRecord> records(5);
    const double lambdas[] = {5.0, 4.0, 3.0, 2.0, 1.0};
    const double derivs[] = {0.0, -1.0, 0.5, -1.0, 0.0};
    for (int j = 0; j < 5; ++j) {
        records[j].t = j * 0.25;
        records[j].lambda = records[j].lambda_coarse = lambdas[j];
        records[j].hadamard_deriv = records[j].hadamard_coarse = derivs[j];
    }
    const TheoremReport report = theorem_checks(d3_pair(), records);
    const TheoremCheck* critical = find_check(report, "critical points");
    ASSERT_NE(critical, nullptr);
    EXPECT_FALSE(critical->passed);
    const TheoremCheck* negative = find_check(report, "hadamard derivative negative at t=0.5");
    ASSERT_NE(negative, nullptr);
    EXPECT_FALSE(negative->passed);
    EXPECT_FALSE(report.all_passed());
}

TEST(VerifySymmetries, EvenPeriodicMirror) {
    const TheoremReport report = verify_symmetries(d3_pair(), coarse_params(0.04), kPi / 8);
    ASSERT_EQ(report.checks.size(), 3u);
    for (const auto& c : report.checks) {
        EXPECT_TRUE(c.passed) << c.name << " " << c.margin;
        EXPECT_EQ(c.tolerance, 1e-3);
    }
    EXPECT_TRUE(verify_symmetries(disk_pair(), coarse_params(0.05), 0.3).all_passed());
    EXPECT_THROW(verify_symmetries(d3_pair(), coarse_params(), 0.0), ValidationError);
    EXPECT_THROW(verify_symmetries(d3_pair(), coarse_params(), kPi / 3), ValidationError);
}

TEST(ReflectionTest, NonpositiveAndStrictNearOuterBoundary) {
    const ReflectionReport r = reflection_test(d3_pair(), coarse_params(0.04), kPi / 6, 300);
    EXPECT_EQ(r.points.size(), 300u);
    EXPECT_TRUE(r.passed) << r.max_w;
    EXPECT_TRUE(r.strict) << r.min_w_near_outer;
    EXPECT_LE(r.max_w, 1e-3 * r.max_u);
    const double axis = kPi / 3 + kPi / 6;
    const Sector h{axis, axis + kPi / 3};
    for (const Vec2& p : r.points) {
        EXPECT_TRUE(h.contains(p));
    }
}

TEST(ReflectionTest, ReproducibleAndValidated) {
    const ReflectionReport a = reflection_test(d3_pair(), coarse_params(0.06), 0.3, 50);
    const ReflectionReport b = reflection_test(d3_pair(), coarse_params(0.06), 0.3, 50);
    EXPECT_EQ(a.w, b.w);
    EXPECT_THROW(reflection_test(d3_pair(), coarse_params(), 0.0, 10), ValidationError);
    EXPECT_THROW(reflection_test(disk_pair(), coarse_params(), 0.3, 10), ValidationError);
    EXPECT_THROW(reflection_test(d3_pair(), coarse_params(), 0.3, 0), ValidationError);
}

TEST(SchrodingerSweep, SoftObstacleAndWell) {
    const MeshParams p = coarse_params(0.05, 1);
    const QuantitySweep soft = schrodinger_sweep(d3_pair(), 50.0, p, 3);
    ASSERT_EQ(soft.records.size(), 3u);
    EXPECT_GT(soft.records[0].value, soft.records[1].value);
    EXPECT_GT(soft.records[1].value, soft.records[2].value);
    EXPECT_TRUE(soft.report.all_passed());

    const QuantitySweep well = schrodinger_sweep(d3_pair(), -50.0, p, 3);
    EXPECT_LT(well.records[0].value, well.records[1].value);
    EXPECT_LT(well.records[1].value, well.records[2].value);
    EXPECT_TRUE(well.report.all_passed());

    const QuantitySweep none = schrodinger_sweep(d3_pair(), 0.0, coarse_params(0.05), 3);
    EXPECT_TRUE(none.report.all_passed());
    ASSERT_NE(find_check(none.report, "mu constant"), nullptr);
}

TEST(TorsionSweep, DiskPairConstantAndPositive) {
    const QuantitySweep s = torsion_sweep(disk_pair(), coarse_params(0.05), 5);
    EXPECT_TRUE(s.report.all_passed());
    for (const auto& r : s.records) {
        EXPECT_GT(r.value, 0.0);
    }
}

// The energy ∫|∇u|² grows from ON to OFF on the D3 fixture, opposite to the
// eigenvalue; the report must record the ON-maximum check as failed.
TEST(TorsionSweep, D3EnergyGrowsTowardOff) {
    const QuantitySweep s = torsion_sweep(d3_pair(), coarse_params(0.05, 1), 3);
    EXPECT_LT(s.records[0].value, s.records[1].value);
    EXPECT_LT(s.records[1].value, s.records[2].value);
    const TheoremCheck* on_off = find_check(s.report, "ON value exceeds OFF value");
    ASSERT_NE(on_off, nullptr);
    EXPECT_FALSE(on_off->passed);
    EXPECT_TRUE(find_check(s.report, "J positive")->passed);
}

TEST(TorsionDiskCheck, ClosedForm) {
    const TheoremCheck c = torsion_disk_check(2.0, coarse_params(0.1, 1));
    EXPECT_TRUE(c.passed) << c.margin;
    EXPECT_THROW(torsion_disk_check(0.0, coarse_params()), ValidationError);
}

}  // namespace
}  // namespace spectra
