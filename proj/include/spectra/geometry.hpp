#pragma once

#include <Eigen/Core>

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace spectra {

using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Largest number of cosine harmonics accepted in a profile.
inline constexpr int kMaxHarmonics = 32;

/// Polar radius function r(θ) = c₀ + Σ_{k≥1} c_k cos(k·n·θ).
///
/// Only cos(k n θ) terms are representable, so every profile is even and
/// (2π/n)-periodic. Positivity and monotonicity are not enforced here; see
/// validate_profile().
class RadialProfile {
public:
    /// Throws ValidationError when order < 2, the series is empty, or it has
    /// more than kMaxHarmonics harmonics.
    RadialProfile(int order, std::vector<double> series);

    int order() const { return order_; }
    const std::vector<double>& series() const { return series_; }

    double radius(double theta) const;
    double derivative(double theta) const;
    double second_derivative(double theta) const;

    /// True when every harmonic coefficient is zero (the profile is a disk).
    bool is_constant() const;

    /// Same profile rotated by π/n, i.e. c_k → (−1)^k c_k.
    RadialProfile phase_shifted() const;

    /// Half the integral of r² over a full turn: the area enclosed by the curve.
    double enclosed_area() const;

    /// Sampled extremes on a 1024·n grid.
    double sampled_max() const;
    double sampled_min() const;

    bool operator==(const RadialProfile&) const = default;

private:
    int order_;
    std::vector<double> series_;
};

std::string to_json(const RadialProfile& profile);
/// Parses {"n": 3, "series": [1.0, -0.2]}. Throws ValidationError on malformed input.
RadialProfile profile_from_json(std::string_view text);

struct ProfileValidation {
    bool positive = true;
    bool nondecreasing = true;
    /// Set when the profile fails nondecreasing but is nonincreasing on (0, π/n);
    /// it is then valid after a phase shift of π/n.
    bool nonincreasing = false;
    double phase_shift = 0.0;
    std::vector<double> positivity_failures;     ///< θ samples with r ≤ 0
    std::vector<double> monotonicity_failures;   ///< θ samples with r' < −tol

    bool ok() const { return positive && nondecreasing; }
    bool valid_after_phase_shift() const { return positive && (nondecreasing || nonincreasing); }
    std::string summary() const;
};

/// Positivity on 1024·n samples of [0, 2π) and r' ≥ −1e−12 on 512 samples of (0, π/n).
ProfileValidation validate_profile(const RadialProfile& profile);

/// Outer domain D (radius g) and obstacle B (radius f), sharing the dihedral order.
struct DomainPair {
    DomainPair(RadialProfile outer_profile, RadialProfile inner_profile);

    int order() const { return outer.order(); }

    RadialProfile outer;
    RadialProfile inner;
};

struct FreeRotation {
    bool ok = false;
    double margin = 0.0;  ///< g(0) − f(π/n)
};

/// B can turn freely inside D iff f(π/n) < g(0).
FreeRotation check_free_rotation(const DomainPair& pair);

/// Polar curve θ ↦ profile(θ − rotation); the boundary of ρ_t(K) for K given by the profile.
class PolarCurve {
public:
    PolarCurve(RadialProfile profile, double rotation = 0.0)
        : profile_(std::move(profile)), rotation_(rotation) {}

    double radius(double theta) const { return profile_.radius(theta - rotation_); }
    double derivative(double theta) const { return profile_.derivative(theta - rotation_); }
    double second_derivative(double theta) const { return profile_.second_derivative(theta - rotation_); }

    Vec2 point(double theta) const;
    /// |dγ/dθ| = √(r² + r'²).
    double speed(double theta) const;

    /// True when (r, θ) lies strictly inside the curve.
    bool contains(const Vec2& p) const;

    const RadialProfile& profile() const { return profile_; }
    double rotation() const { return rotation_; }
    int order() const { return profile_.order(); }

private:
    RadialProfile profile_;
    double rotation_;
};

/// h(θ) = f(θ − t).
PolarCurve rotated_profile(const RadialProfile& f, double t);

struct Configuration {
    DomainPair pair;
    double angle = 0.0;

    PolarCurve outer_curve() const { return PolarCurve(pair.outer, 0.0); }
    PolarCurve obstacle_curve() const { return rotated_profile(pair.inner, angle); }
    /// angle reduced to [0, π/n] using evenness and (2π/n)-periodicity.
    double canonical_angle() const;
};

double canonical_angle(double t, int order);

/// Open sector between the half-axes at alpha and beta.
struct Sector {
    double alpha;
    double beta;

    bool contains(const Vec2& p) const;
};

struct BoundaryPoint {
    double theta = 0.0;
    Vec2 position = Vec2::Zero();
    Vec2 normal = Vec2::Zero();     ///< unit normal pointing out of the enclosed region
    Vec2 velocity = Vec2::Zero();   ///< rotation field i·ζ
    double normal_dot_velocity = 0.0;
};

BoundaryPoint boundary_point(const PolarCurve& curve, double theta);

/// −h h' / √(h² + h'²).
double normal_dot_velocity(const PolarCurve& curve, double theta);

/// Mirror image across the line through the origin at angle alpha.
Vec2 reflect(const Vec2& p, double alpha);

/// F(θ) = g(θ) − g(θ − 2t) for t ∈ (0, π/n), θ ∈ (t, π/n + t).
/// Throws DomainError outside that range.
double inclusion_deficit(const RadialProfile& g, double t, double theta);

struct VertexAngles {
    bool disk = false;
    std::vector<double> outer;  ///< angles of maximal radius
    std::vector<double> inner;  ///< angles of minimal radius
};

VertexAngles vertices(const RadialProfile& profile);

/// Wraps an angle into [0, 2π).
double wrap_angle(double theta);

}  // namespace spectra
