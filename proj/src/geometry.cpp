#include "spectra/geometry.hpp"

#include "spectra/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spectra {

namespace {

constexpr double kMonotonicityTolerance = 1e-12;
constexpr int kMonotonicitySamples = 512;
constexpr int kPositivitySamplesPerPeriod = 1024;

}  // namespace

RadialProfile::RadialProfile(int order, std::vector<double> series)
    : order_(order), series_(std::move(series)) {
    if (order_ < 2) {
        throw ValidationError("profile order must be at least 2, got " + std::to_string(order_));
    }
    if (series_.empty()) {
        throw ValidationError("profile series must contain at least the constant term");
    }
    if (static_cast<int>(series_.size()) - 1 > kMaxHarmonics) {
        throw ValidationError("profile series has more than " + std::to_string(kMaxHarmonics) +
                              " harmonics");
    }
    for (double c : series_) {
        if (!std::isfinite(c)) {
            throw ValidationError("profile series contains a non-finite coefficient");
        }
    }
}

double RadialProfile::radius(double theta) const {
    double r = series_[0];
    for (std::size_t k = 1; k < series_.size(); ++k) {
        r += series_[k] * std::cos(static_cast<double>(k * order_) * theta);
    }
    return r;
}

double RadialProfile::derivative(double theta) const {
    double d = 0.0;
    for (std::size_t k = 1; k < series_.size(); ++k) {
        const double w = static_cast<double>(k * order_);
        d -= w * series_[k] * std::sin(w * theta);
    }
    return d;
}

double RadialProfile::second_derivative(double theta) const {
    double d = 0.0;
    for (std::size_t k = 1; k < series_.size(); ++k) {
        const double w = static_cast<double>(k * order_);
        d -= w * w * series_[k] * std::cos(w * theta);
    }
    return d;
}

bool RadialProfile::is_constant() const {
    return std::all_of(series_.begin() + 1, series_.end(), [](double c) { return c == 0.0; });
}

RadialProfile RadialProfile::phase_shifted() const {
    std::vector<double> shifted = series_;
    for (std::size_t k = 1; k < shifted.size(); k += 2) {
        shifted[k] = -shifted[k];
    }
    return RadialProfile(order_, std::move(shifted));
}

double RadialProfile::enclosed_area() const {
    // ½∫r² dθ; the cross terms integrate to zero over a full period.
    double sum = series_[0] * series_[0];
    for (std::size_t k = 1; k < series_.size(); ++k) {
        sum += 0.5 * series_[k] * series_[k];
    }
    return kPi * sum;
}

double RadialProfile::sampled_max() const {
    const int samples = kPositivitySamplesPerPeriod * order_;
    double best = radius(0.0);
    for (int i = 1; i < samples; ++i) {
        best = std::max(best, radius(kTwoPi * i / samples));
    }
    return best;
}

double RadialProfile::sampled_min() const {
    const int samples = kPositivitySamplesPerPeriod * order_;
    double best = radius(0.0);
    for (int i = 1; i < samples; ++i) {
        best = std::min(best, radius(kTwoPi * i / samples));
    }
    return best;
}

std::string to_json(const RadialProfile& profile) {
    nlohmann::json j;
    j["n"] = profile.order();
    j["series"] = profile.series();
    return j.dump();
}

RadialProfile profile_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("profile JSON does not parse: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("series")) {
        throw ValidationError("profile JSON needs keys \"n\" and \"series\"");
    }
    if (!j["n"].is_number_integer() || !j["series"].is_array()) {
        throw ValidationError("profile JSON: \"n\" must be an integer and \"series\" an array");
    }
    std::vector<double> series;
    for (const auto& c : j["series"]) {
        if (!c.is_number()) {
            throw ValidationError("profile JSON: series entries must be numbers");
        }
        series.push_back(c.get<double>());
    }
    return RadialProfile(j["n"].get<int>(), std::move(series));
}

std::string ProfileValidation::summary() const {
    std::ostringstream out;
    if (!positive) {
        out << "radius not positive at " << positivity_failures.size() << " samples (first θ="
            << positivity_failures.front() << "); ";
    }
    if (!nondecreasing) {
        if (nonincreasing) {
            out << "nonincreasing on (0, π/n): valid after phase shift " << phase_shift << "; ";
        } else {
            out << "not monotone on (0, π/n) at " << monotonicity_failures.size()
                << " samples (first θ=" << monotonicity_failures.front() << "); ";
        }
    }
    std::string s = out.str();
    return s.empty() ? "ok" : s.substr(0, s.size() - 2);
}

ProfileValidation validate_profile(const RadialProfile& profile) {
    ProfileValidation report;
    const int n = profile.order();

    const int pos_samples = kPositivitySamplesPerPeriod * n;
    for (int i = 0; i < pos_samples; ++i) {
        const double theta = kTwoPi * i / pos_samples;
        if (!(profile.radius(theta) > 0.0)) {
            report.positive = false;
            report.positivity_failures.push_back(theta);
        }
    }

    bool all_nonpositive = true;
    const double half_period = kPi / n;
    for (int i = 1; i <= kMonotonicitySamples; ++i) {
        const double theta = half_period * i / (kMonotonicitySamples + 1);
        const double d = profile.derivative(theta);
        if (d < -kMonotonicityTolerance) {
            report.nondecreasing = false;
            report.monotonicity_failures.push_back(theta);
        }
        if (d > kMonotonicityTolerance) {
            all_nonpositive = false;
        }
    }
    if (!report.nondecreasing && all_nonpositive) {
        report.nonincreasing = true;
        report.phase_shift = half_period;
    }
    return report;
}

DomainPair::DomainPair(RadialProfile outer_profile, RadialProfile inner_profile)
    : outer(std::move(outer_profile)), inner(std::move(inner_profile)) {
    if (outer.order() != inner.order()) {
        throw ValidationError("outer and inner profiles must share the dihedral order (" +
                              std::to_string(outer.order()) + " vs " +
                              std::to_string(inner.order()) + ")");
    }
}

FreeRotation check_free_rotation(const DomainPair& pair) {
    const double f_max = pair.inner.radius(kPi / pair.order());
    const double g_min = pair.outer.radius(0.0);
    return {f_max < g_min, g_min - f_max};
}

Vec2 PolarCurve::point(double theta) const {
    const double r = radius(theta);
    return {r * std::cos(theta), r * std::sin(theta)};
}

double PolarCurve::speed(double theta) const {
    return std::hypot(radius(theta), derivative(theta));
}

bool PolarCurve::contains(const Vec2& p) const {
    const double r = p.norm();
    if (r == 0.0) {
        return true;
    }
    return r < radius(std::atan2(p.y(), p.x()));
}

PolarCurve rotated_profile(const RadialProfile& f, double t) { return PolarCurve(f, t); }

double canonical_angle(double t, int order) {
    const double period = kTwoPi / order;
    double s = std::fmod(t, period);
    if (s < 0.0) {
        s += period;
    }
    return s > 0.5 * period ? period - s : s;
}

double Configuration::canonical_angle() const { return spectra::canonical_angle(angle, pair.order()); }

double wrap_angle(double theta) {
    double s = std::fmod(theta, kTwoPi);
    if (s < 0.0) {
        s += kTwoPi;
    }
    return s;
}

bool Sector::contains(const Vec2& p) const {
    if (p.squaredNorm() == 0.0) {
        return false;
    }
    const double rel = wrap_angle(std::atan2(p.y(), p.x()) - alpha);
    return rel > 0.0 && rel < beta - alpha;
}

BoundaryPoint boundary_point(const PolarCurve& curve, double theta) {
    const double h = curve.radius(theta);
    const double dh = curve.derivative(theta);
    const double len = std::hypot(h, dh);
    const Vec2 radial(std::cos(theta), std::sin(theta));
    const Vec2 tangential(-radial.y(), radial.x());

    BoundaryPoint bp;
    bp.theta = theta;
    bp.position = h * radial;
    bp.normal = (h * radial - dh * tangential) / len;
    bp.velocity = h * tangential;
    bp.normal_dot_velocity = -h * dh / len;
    return bp;
}

double normal_dot_velocity(const PolarCurve& curve, double theta) {
    const double h = curve.radius(theta);
    const double dh = curve.derivative(theta);
    return -h * dh / std::hypot(h, dh);
}

Vec2 reflect(const Vec2& p, double alpha) {
    const double c = std::cos(2.0 * alpha);
    const double s = std::sin(2.0 * alpha);
    return {c * p.x() + s * p.y(), s * p.x() - c * p.y()};
}

double inclusion_deficit(const RadialProfile& g, double t, double theta) {
    const double half_period = kPi / g.order();
    if (!(t > 0.0 && t < half_period)) {
        throw DomainError("inclusion_deficit: t must lie in (0, π/n)");
    }
    if (!(theta > t && theta < half_period + t)) {
        throw DomainError("inclusion_deficit: θ must lie in (t, π/n + t)");
    }
    return g.radius(theta) - g.radius(theta - 2.0 * t);
}

VertexAngles vertices(const RadialProfile& profile) {
    VertexAngles v;
    if (profile.is_constant()) {
        v.disk = true;
        return v;
    }
    const int n = profile.order();
    const double step = kTwoPi / n;
    const bool max_at_half = profile.radius(kPi / n) > profile.radius(0.0);
    for (int k = 0; k < n; ++k) {
        const double axis = k * step;
        const double offaxis = kPi / n + k * step;
        v.outer.push_back(max_at_half ? offaxis : axis);
        v.inner.push_back(max_at_half ? axis : offaxis);
    }
    return v;
}

}  // namespace spectra
