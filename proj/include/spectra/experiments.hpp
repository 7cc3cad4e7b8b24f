#pragma once

#include "spectra/shape_derivative.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spectra {

/// One row of a λ(t) sweep. The coarse values come from the previous level of
/// the same refinement hierarchy and feed the uncertainty estimates.
struct SweepRecord {
    double t = 0.0;
    double lambda = 0.0;
    double hadamard_deriv = 0.0;
    std::optional<double> fd_deriv;
    double mesh_h = 0.0;
    double solver_residual = 0.0;
    int iterations = 0;
    double lambda_coarse = 0.0;
    double hadamard_coarse = 0.0;
    double min_flux = 0.0;
    double max_flux = 0.0;
};

struct TheoremCheck {
    std::string name;
    bool passed = false;
    double margin = 0.0;     ///< measured quantity compared against the tolerance
    double tolerance = 0.0;  ///< threshold actually applied
    std::string detail;
};

struct TheoremReport {
    std::vector<TheoremCheck> checks;

    bool all_passed() const;
    void add(TheoremCheck check) { checks.push_back(std::move(check)); }
    void append(const TheoremReport& other);
};

struct SweepOptions {
    bool finite_difference = false;
    double fd_delta = 1e-3;
};

/// Mesh at the finest level and at the level below; with no refinement the
/// coarse mesh is a base mesh at twice the target size.
std::pair<PlanarMesh, PlanarMesh> two_level_meshes(const Configuration& config, const MeshParams& params,
                                                   MeshMode mode);

/// λ and the Hadamard derivative at t_j = j·(π/n)/(t_samples − 1).
/// Requires t_samples ≥ 5. Solver and mesh errors are rethrown with the offending t.
std::vector<SweepRecord> sweep(const DomainPair& pair, const MeshParams& params, int t_samples,
                               const SweepOptions& options = {});

/// Pairwise decrease of a sampled quantity with the refinement-uncertainty rule:
/// Δ_fine > 3 |Δ_fine − Δ_coarse| for every consecutive pair.
TheoremReport decreasing_checks(const std::string& quantity, const std::vector<double>& t,
                                const std::vector<double>& fine, const std::vector<double>& coarse);

/// Strict-monotonicity, endpoint-criticality, ON/OFF extremality and
/// finite-difference consistency checks for a sweep. If either profile is a
/// disk, λ must instead be constant within 1e−3 relative.
TheoremReport theorem_checks(const DomainPair& pair, const std::vector<SweepRecord>& records);

/// λ(D\Bₜ) > λ(D) at every record, with λ(D) from a full-mode α = 0 solve.
TheoremReport domain_monotonicity_checks(const DomainPair& pair, const MeshParams& params,
                                         const std::vector<SweepRecord>& records);

/// Evenness, 2π/n periodicity and the mirror identity about π/n, each
/// compared within 1e−3 relative on independently generated meshes.
TheoremReport verify_symmetries(const DomainPair& pair, const MeshParams& params, double probe_t);

struct ReflectionReport {
    double t = 0.0;
    std::vector<Vec2> points;
    std::vector<double> w;
    std::vector<bool> near_outer;  ///< sample lies in the outer quarter of the radial gap
    double max_w = 0.0;
    double max_u = 0.0;
    double min_w_near_outer = 0.0;
    bool passed = false;  ///< max w ≤ 1e−3 max u
    bool strict = false;  ///< some near-outer sample has w < −1e−2 max u
};

/// Quasi-random spot check of w(x) = u(x) − u(x*) ≤ 0 on H(t), x* the mirror
/// image across the half-axis at π/n + t. Requires t ∈ (0, π/n) and two
/// nonconstant profiles. A mirror image falling outside the mesh raises
/// TheoryViolation.
ReflectionReport reflection_test(const DomainPair& pair, const MeshParams& params, double t, int num_samples);

/// Fixed Halton seed offset used by reflection_test.
inline constexpr int kReflectionSeed = 409;

struct QuantityRecord {
    double t = 0.0;
    double value = 0.0;
    double value_coarse = 0.0;
    double mesh_h = 0.0;
    double residual = 0.0;
    int iterations = 0;
    double shift = 0.0;
};

struct QuantitySweep {
    std::string quantity;
    std::vector<QuantityRecord> records;
    TheoremReport report;
};

/// μ₁(t) of (K + αM_B, M) on full-mode meshes at t_j = j·(π/n)/(t_samples − 1).
/// α > 0 must decrease from ON to OFF, α < 0 must increase, α = 0 must be constant.
QuantitySweep schrodinger_sweep(const DomainPair& pair, double alpha, const MeshParams& params, int t_samples);

/// J(t) = uᵀKu for −Δu = 1 on Ω(t), expected to decrease from ON to OFF.
QuantitySweep torsion_sweep(const DomainPair& pair, const MeshParams& params, int t_samples);

/// Torsion on the disk of radius R (full-mode mesh, no interface condition):
/// max u against R²/4 within 1%.
TheoremCheck torsion_disk_check(double radius, const MeshParams& params);

/// Sample grid t_j = j·(π/n)/(count − 1).
std::vector<double> t_grid(int order, int count);

}  // namespace spectra
