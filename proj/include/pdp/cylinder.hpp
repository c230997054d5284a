#pragma once

#include <span>
#include <vector>

namespace pdp {

/// Axis-aligned space-time box Q = B x I, where B is a box of half-width
/// `radius` (sup metric) around `center` in R^n and I = (t_lo, t_hi).
///
/// Parabolic arithmetic: shrinking by h removes h from the spatial radius
/// and h^2 from each end of the time interval, so that
/// Q.shrink(h) + Q_h(0) is still contained in Q.
class Cylinder {
public:
    Cylinder(std::vector<double> center, double radius, double t_lo, double t_hi);

    int dim() const { return static_cast<int>(center_.size()); }
    double radius() const { return radius_; }
    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }
    double time_length() const { return t_hi_ - t_lo_; }
    std::span<const double> center() const { return center_; }

    /// Space-time measure (2 radius)^n (t_hi - t_lo).
    double measure() const;

    /// Parabolic shrink: radius - h0, time trimmed by h0^2 at each end.
    /// Requires h0 > 0, 2 h0 < radius and 2 h0^2 < time_length / 2.
    Cylinder shrink(double h0) const;

    /// Minkowski sum with the parabolic cube Q_h(0).
    Cylinder expand(double h) const;

    bool contains(std::span<const double> x, double t, double tol = 0.0) const;

    /// Corner check for `inner + Q_h(0) subset of *this` (h = 0 gives plain
    /// containment). `tol` absorbs floating-point slack.
    bool contains(const Cylinder& inner, double h = 0.0, double tol = 1e-12) const;

    bool operator==(const Cylinder& o) const = default;

private:
    std::vector<double> center_;
    double radius_;
    double t_lo_, t_hi_;
};

/// Free-function spelling used by the scenario layer.
Cylinder shrink_cylinder(const Cylinder& qtilde, double h0);

} // namespace pdp
