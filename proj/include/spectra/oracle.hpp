#pragma once

// Closed-form references for concentric disk/annulus membranes. Everything
// here is evaluated from Bessel series and asymptotic expansions and does not
// touch the mesh or finite element code.

namespace spectra::oracle {

double bessel_j0(double x);
double bessel_j1(double x);
/// x > 0
double bessel_y0(double x);
/// x > 0
double bessel_y1(double x);

/// First positive zero of J₀ (≈ 2.404825557695773).
double first_j0_zero();

/// λ₁ of the disk of the given radius: (j₀₁ / R)².
double disk_eigenvalue(double radius);

/// Radially symmetric fundamental mode of the annulus r < ρ < R with
/// u = 0 on both circles and 2π∫u²ρ dρ = 1.
struct AnnulusMode {
    double inner_radius = 0.0;
    double outer_radius = 0.0;
    double wavenumber = 0.0;   ///< k₁, smallest root of the cross product
    double amplitude = 0.0;    ///< normalization constant, sign chosen so u > 0

    double eigenvalue() const { return wavenumber * wavenumber; }
    double value(double rho) const;
    double radial_derivative(double rho) const;
};

/// k₁² with k₁ the smallest positive root of J₀(kr)Y₀(kR) − J₀(kR)Y₀(kr).
/// Throws ValidationError unless 0 < inner_radius < outer_radius.
double oracle_annulus(double inner_radius, double outer_radius);

AnnulusMode annulus_mode(double inner_radius, double outer_radius);

/// Torsion function of the disk of radius R: u(ρ) = (R² − ρ²)/4.
double disk_torsion_max(double radius);

}  // namespace spectra::oracle
