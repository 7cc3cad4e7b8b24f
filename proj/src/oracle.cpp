#include "spectra/oracle.hpp"

#include "spectra/errors.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace spectra::oracle {

namespace {

using real = long double;

constexpr real kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr real kPiL = 3.141592653589793238462643383279502884L;

// Power series are used below this argument, Hankel expansions above it.
// Long double keeps the series' cancellation below 1e-13 up to here.
constexpr double kAsymptoticThreshold = 20.0;

struct SeriesValues {
    real j0;
    real j1;
    real y0;
    real y1;
};

SeriesValues series(double xd) {
    const real x = xd;
    const real q = x * x / 4;
    const real half = x / 2;

    real j0 = 0, j1 = 0, y0_sum = 0, y1_sum = 0;
    // term0 = (−q)^k/(k!)², term1 = (−q)^k/(k!(k+1)!)
    real term0 = 1, term1 = 1;
    real harmonic = 0;  // H_k
    for (int k = 0; k < 200; ++k) {
        if (k > 0) {
            term0 *= -q / (static_cast<real>(k) * k);
            term1 *= -q / (static_cast<real>(k) * (k + 1));
            harmonic += 1.0L / k;
        }
        j0 += term0;
        j1 += term1;
        if (k > 0) {
            y0_sum -= harmonic * term0;
        }
        // ψ(k+1) + ψ(k+2) = −2γ + 2H_k + 1/(k+1)
        y1_sum += (-2 * kEulerGamma + 2 * harmonic + 1.0L / (k + 1)) * term1;
        if (k > 5 && std::fabs(term0) < 1e-30L && std::fabs(term1) < 1e-30L) {
            break;
        }
    }
    j1 *= half;
    const real log_half = std::log(half);
    SeriesValues v{};
    v.j0 = j0;
    v.j1 = j1;
    v.y0 = (2 / kPiL) * ((log_half + kEulerGamma) * j0 + y0_sum);
    v.y1 = (2 / kPiL) * log_half * j1 - 2 / (kPiL * x) - (1 / kPiL) * half * y1_sum;
    return v;
}

struct Hankel {
    real p;
    real q;
};

// P, Q of the large-argument expansion for order nu, truncated at the smallest term.
Hankel hankel_pq(int nu, double xd) {
    const real x = xd;
    const real mu = 4.0L * nu * nu;
    real p = 1, q = 0;
    real term = 1;  // a_k / x^k
    real last = 1e300L;
    for (int k = 1; k < 60; ++k) {
        const real odd = 2 * k - 1;
        term *= (mu - odd * odd) / (k * 8 * x);
        if (std::fabs(term) > last) {
            break;
        }
        last = std::fabs(term);
        // k odd → contributes to Q with sign (−1)^((k−1)/2); k even → P with sign (−1)^(k/2)
        if (k % 2 == 1) {
            q += ((k / 2) % 2 == 0 ? term : -term);
        } else {
            p += ((k / 2) % 2 == 0 ? term : -term);
        }
        if (last < 1e-22L) {
            break;
        }
    }
    return {p, q};
}

double asymptotic_j(int nu, double x) {
    const auto [p, q] = hankel_pq(nu, x);
    const real chi = static_cast<real>(x) - (nu / 2.0L + 0.25L) * kPiL;
    return static_cast<double>(std::sqrt(2 / (kPiL * x)) * (p * std::cos(chi) - q * std::sin(chi)));
}

double asymptotic_y(int nu, double x) {
    const auto [p, q] = hankel_pq(nu, x);
    const real chi = static_cast<real>(x) - (nu / 2.0L + 0.25L) * kPiL;
    return static_cast<double>(std::sqrt(2 / (kPiL * x)) * (p * std::sin(chi) + q * std::cos(chi)));
}

double bisect(const std::function<double(double)>& fn, double lo, double hi) {
    double flo = fn(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-13 * std::fabs(mid)) {
            break;
        }
        const double fmid = fn(mid);
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void check_radii(double inner_radius, double outer_radius) {
    if (!(inner_radius > 0.0 && inner_radius < outer_radius) || !std::isfinite(outer_radius)) {
        throw ValidationError("annulus oracle needs 0 < inner radius < outer radius");
    }
}

double cross_product(double k, double r, double R) {
    return bessel_j0(k * r) * bessel_y0(k * R) - bessel_j0(k * R) * bessel_y0(k * r);
}

double annulus_wavenumber(double r, double R) {
    check_radii(r, R);
    // The first root sits near π/(R − r) for thin annuli and approaches j₀₁/R as r → 0,
    // so a scan step well below both resolves the first sign change.
    const double scale = std::min(std::numbers::pi / (R - r), 2.0 / R);
    const double step = scale / 64.0;
    double k_lo = step;
    double f_lo = cross_product(k_lo, r, R);
    for (int i = 0; i < 1000000; ++i) {
        const double k_hi = k_lo + step;
        const double f_hi = cross_product(k_hi, r, R);
        if ((f_hi < 0.0) != (f_lo < 0.0)) {
            return bisect([&](double k) { return cross_product(k, r, R); }, k_lo, k_hi);
        }
        k_lo = k_hi;
        f_lo = f_hi;
    }
    throw NumericalError("annulus oracle: no sign change found");
}

}  // namespace

double bessel_j0(double x) {
    x = std::fabs(x);
    return x <= kAsymptoticThreshold ? static_cast<double>(series(x).j0) : asymptotic_j(0, x);
}

double bessel_j1(double x) {
    const double sign = x < 0.0 ? -1.0 : 1.0;
    x = std::fabs(x);
    return sign * (x <= kAsymptoticThreshold ? static_cast<double>(series(x).j1) : asymptotic_j(1, x));
}

double bessel_y0(double x) {
    if (!(x > 0.0)) {
        throw DomainError("bessel_y0 needs x > 0");
    }
    return x <= kAsymptoticThreshold ? static_cast<double>(series(x).y0) : asymptotic_y(0, x);
}

double bessel_y1(double x) {
    if (!(x > 0.0)) {
        throw DomainError("bessel_y1 needs x > 0");
    }
    return x <= kAsymptoticThreshold ? static_cast<double>(series(x).y1) : asymptotic_y(1, x);
}

double first_j0_zero() {
    static const double zero = bisect(bessel_j0, 2.0, 3.0);
    return zero;
}

double disk_eigenvalue(double radius) {
    if (!(radius > 0.0)) {
        throw ValidationError("disk radius must be positive");
    }
    const double k = first_j0_zero() / radius;
    return k * k;
}

double AnnulusMode::value(double rho) const {
    const double k = wavenumber;
    return amplitude * (bessel_j0(k * rho) * bessel_y0(k * outer_radius) -
                        bessel_j0(k * outer_radius) * bessel_y0(k * rho));
}

double AnnulusMode::radial_derivative(double rho) const {
    const double k = wavenumber;
    return -amplitude * k *
           (bessel_j1(k * rho) * bessel_y0(k * outer_radius) -
            bessel_j0(k * outer_radius) * bessel_y1(k * rho));
}

double oracle_annulus(double inner_radius, double outer_radius) {
    const double k = annulus_wavenumber(inner_radius, outer_radius);
    return k * k;
}

AnnulusMode annulus_mode(double inner_radius, double outer_radius) {
    AnnulusMode mode;
    mode.inner_radius = inner_radius;
    mode.outer_radius = outer_radius;
    mode.wavenumber = annulus_wavenumber(inner_radius, outer_radius);
    mode.amplitude = 1.0;

    // Composite Simpson for 2π∫ Z² ρ dρ.
    constexpr int intervals = 4000;
    const double width = (outer_radius - inner_radius) / intervals;
    double sum = 0.0;
    for (int i = 0; i <= intervals; ++i) {
        const double rho = inner_radius + i * width;
        const double z = mode.value(rho);
        const double weight = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        sum += weight * z * z * rho;
    }
    const double norm2 = 2.0 * std::numbers::pi * sum * width / 3.0;
    double amplitude = 1.0 / std::sqrt(norm2);
    if (mode.value(0.5 * (inner_radius + outer_radius)) < 0.0) {
        amplitude = -amplitude;
    }
    mode.amplitude = amplitude;
    return mode;
}

double disk_torsion_max(double radius) { return radius * radius / 4.0; }

}  // namespace spectra::oracle
