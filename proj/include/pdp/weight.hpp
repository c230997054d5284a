#pragma once

#include "pdp/cylinder.hpp"
#include "pdp/grid_field.hpp"

#include <functional>
#include <memory>
#include <span>
#include <string>

namespace pdp {

/// Parabolic Hoelder distance max{|x1-x2|^alpha, |t1-t2|^(alpha/2)}.
double parabolic_holder_distance(std::span<const double> x1, double t1,
                                 std::span<const double> x2, double t2, double alpha);

/// The coefficient a(z) of the q-phase, together with its parabolic
/// Hoelder data (exponent alpha, seminorm [a]_alpha). Backed either by an
/// analytic callable or by a sampled grid (multilinear interpolation).
class Weight {
public:
    using Fn = std::function<double(std::span<const double>, double)>;

    static Weight analytic(Fn a, Cylinder domain, double alpha, double seminorm,
                           std::string description = "analytic");
    static Weight constant(double value, Cylinder domain);

    /// a(z) = lambda max{x_axis - offset, 0}^alpha; [a]_alpha = lambda exactly.
    static Weight ramp_power(double lambda, double alpha, Cylinder domain,
                             int axis = 0, double offset = 0.0);

    /// a(z) = lambda max{t - offset, 0}^(alpha/2); [a]_alpha = lambda exactly
    /// (the temporal branch of the parabolic metric).
    static Weight ramp_power_time(double lambda, double alpha, Cylinder domain, double offset = 0.0);

    static Weight from_grid(GridField samples, double alpha, double seminorm);

    double operator()(std::span<const double> x, double t) const { return fn_(x, t); }
    double alpha() const { return alpha_; }
    double seminorm() const { return seminorm_; }
    const Cylinder& domain() const { return domain_; }
    const std::string& description() const { return description_; }

    /// Sample a lattice and check a >= 0 plus the declared Hoelder bound
    /// on all lattice pairs; throws with the offending numbers.
    void validate_samples(int per_axis = 7) const;

private:
    Weight(Fn fn, Cylinder domain, double alpha, double seminorm, std::string description);

    Fn fn_;
    Cylinder domain_;
    double alpha_;
    double seminorm_;
    std::string description_;
};

/// Shifted coefficient a_h(z): discrete minimum of a over a lattice of the
/// parabolic cube Q_h(z) restricted to the closed ball |y| <= h in space
/// (the kernel support). samples_per_axis >= 5 points per axis per h.
/// The discrete minimum over-estimates the true infimum, which only
/// tightens the bound a - a_h <= [a]_alpha h^alpha.
double shifted_weight(const Weight& a, double h, std::span<const double> x, double t,
                      int samples_per_axis = 5);

/// Lower estimate of [a]_alpha: max difference quotient over sample_count
/// deterministic lattice pairs (fixed seed); nondecreasing in sample_count.
double holder_seminorm_estimate(const Weight& a, double alpha, int sample_count);

} // namespace pdp
