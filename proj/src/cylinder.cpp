#include "pdp/cylinder.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pdp {

Cylinder::Cylinder(std::vector<double> center, double radius, double t_lo, double t_hi)
    : center_(std::move(center)), radius_(radius), t_lo_(t_lo), t_hi_(t_hi) {
    if (center_.empty())
        throw std::invalid_argument("Cylinder: spatial dimension must be >= 1");
    if (!(radius_ > 0.0))
        throw std::invalid_argument("Cylinder: radius must be positive, got " + std::to_string(radius_));
    if (!(t_lo_ < t_hi_))
        throw std::invalid_argument("Cylinder: empty time interval [" + std::to_string(t_lo_) + ", " +
                                    std::to_string(t_hi_) + "]");
    for (double c : center_)
        if (!std::isfinite(c))
            throw std::invalid_argument("Cylinder: non-finite center coordinate");
}

double Cylinder::measure() const {
    return std::pow(2.0 * radius_, dim()) * time_length();
}

Cylinder Cylinder::shrink(double h0) const {
    if (!(h0 > 0.0))
        throw std::invalid_argument("shrink: h0 must be positive, got " + std::to_string(h0));
    if (!(2.0 * h0 < radius_) || !(2.0 * h0 * h0 < time_length() / 2.0))
        throw std::invalid_argument("shrink: h0 = " + std::to_string(h0) +
                                    " too large for cylinder (radius " + std::to_string(radius_) +
                                    ", time length " + std::to_string(time_length()) + ")");
    return Cylinder(center_, radius_ - h0, t_lo_ + h0 * h0, t_hi_ - h0 * h0);
}

Cylinder Cylinder::expand(double h) const {
    if (!(h >= 0.0))
        throw std::invalid_argument("expand: h must be nonnegative");
    return Cylinder(center_, radius_ + h, t_lo_ - h * h, t_hi_ + h * h);
}

bool Cylinder::contains(std::span<const double> x, double t, double tol) const {
    if (static_cast<int>(x.size()) != dim()) return false;
    for (int a = 0; a < dim(); ++a)
        if (std::abs(x[a] - center_[a]) > radius_ + tol) return false;
    return t >= t_lo_ - tol && t <= t_hi_ + tol;
}

bool Cylinder::contains(const Cylinder& inner, double h, double tol) const {
    if (inner.dim() != dim()) return false;
    const double slack = tol * std::max(1.0, radius_);
    for (int a = 0; a < dim(); ++a) {
        if (inner.center_[a] - inner.radius_ - h < center_[a] - radius_ - slack) return false;
        if (inner.center_[a] + inner.radius_ + h > center_[a] + radius_ + slack) return false;
    }
    const double tslack = tol * std::max(1.0, time_length());
    return inner.t_lo_ - h * h >= t_lo_ - tslack && inner.t_hi_ + h * h <= t_hi_ + tslack;
}

Cylinder shrink_cylinder(const Cylinder& qtilde, double h0) {
    return qtilde.shrink(h0);
}

} // namespace pdp
