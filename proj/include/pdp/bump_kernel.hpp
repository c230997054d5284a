#pragma once

#include <span>

namespace pdp {

/// The anisotropic space-time mollification kernel
///
///   kappa_h(x, t) = h^(-n-2) k_n(|x| / h) k_1(t / h^2),
///
/// built from the one-dimensional bump profile
///
///   k_m(s) = c_m exp(1 / (s^2 - 1))   for |s| < 1,   0 otherwise,
///
/// with c_m fixed by unit mass of k_m(|x|) over R^m. The normalization
/// constants are computed once at construction by adaptive Gauss-Kronrod
/// quadrature and cached.
class MollifierKernel {
public:
    explicit MollifierKernel(int dim_n, double quad_tol = 1e-10);

    int dim() const { return dim_n_; }
    double quad_tol() const { return quad_tol_; }

    /// Normalization constant c_m for the m-dimensional profile.
    double c(int m) const;
    double c_spatial() const { return c_n_; }
    double c_temporal() const { return c_1_; }

    /// Normalized profile k_m(s).
    double profile(int m, double s) const;

    /// exp(1/(s^2-1)) on |s| < 1, 0 otherwise (no normalization).
    static double raw_profile(double s);

    /// kappa_h at (x, t). Requires h > 0.
    double eval(double h, std::span<const double> x, double t) const;

    /// Pointwise bound c_n c_1 e^{-2} h^{-n-2}, attained at the origin.
    double sup_bound(double h) const;

    /// Trapezoid quadrature of kappa_h over its support box
    /// [-h, h]^n x [-h^2, h^2]; equals 1 up to quadrature error.
    double mass(double h, int nodes_per_axis = 96) const;

    /// Mass of the m-profile over R^m computed the same way (scale-free).
    double profile_mass(int m, int nodes_per_axis = 96) const;

private:
    int dim_n_;
    double quad_tol_;
    double c_n_;
    double c_1_;
};

/// Unit-sphere surface measure in R^m (2, 2*pi, 4*pi, ...).
double unit_sphere_area(int m);

/// 1 / integral of raw_profile(|x|) over R^m, via adaptive quadrature.
double profile_normalization(int m, double tol = 1e-10);

} // namespace pdp
