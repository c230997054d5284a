#include "pdp/bump_kernel.hpp"

#include "pdp/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdp {

double unit_sphere_area(int m) {
    if (m < 1) throw std::invalid_argument("unit_sphere_area: m must be >= 1");
    // 2 pi^{m/2} / Gamma(m/2)
    return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m);
}

double MollifierKernel::raw_profile(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(1.0 / (s * s - 1.0));
}

double profile_normalization(int m, double tol) {
    // integral over R^m of raw_profile(|x|) reduces to the radial line.
    const double radial = integrate_adaptive(
        [m](double r) { return MollifierKernel::raw_profile(r) * std::pow(r, m - 1); }, 0.0, 1.0, tol);
    return 1.0 / (unit_sphere_area(m) * radial);
}

MollifierKernel::MollifierKernel(int dim_n, double quad_tol)
    : dim_n_(dim_n), quad_tol_(quad_tol) {
    if (dim_n_ < 1) throw std::invalid_argument("MollifierKernel: spatial dimension must be >= 1");
    if (!(quad_tol_ > 0.0)) throw std::invalid_argument("MollifierKernel: quad_tol must be positive");
    c_1_ = profile_normalization(1, quad_tol_);
    c_n_ = (dim_n_ == 1) ? c_1_ : profile_normalization(dim_n_, quad_tol_);
}

double MollifierKernel::c(int m) const {
    if (m == 1) return c_1_;
    if (m == dim_n_) return c_n_;
    return profile_normalization(m, quad_tol_);
}

double MollifierKernel::profile(int m, double s) const {
    return c(m) * raw_profile(s);
}

double MollifierKernel::eval(double h, std::span<const double> x, double t) const {
    if (!(h > 0.0)) throw std::invalid_argument("kernel eval: h must be positive, got " + std::to_string(h));
    if (static_cast<int>(x.size()) != dim_n_)
        throw std::invalid_argument("kernel eval: point dimension mismatch");
    double r2 = 0.0;
    for (double xi : x) r2 += xi * xi;
    const double spatial = c_n_ * raw_profile(std::sqrt(r2) / h);
    const double temporal = c_1_ * raw_profile(t / (h * h));
    return std::pow(h, -dim_n_ - 2) * spatial * temporal;
}

double MollifierKernel::sup_bound(double h) const {
    return c_n_ * c_1_ * std::exp(-2.0) * std::pow(h, -dim_n_ - 2);
}

double MollifierKernel::profile_mass(int m, int nodes_per_axis) const {
    // tensor trapezoid of c_m k(|x|) over [-1, 1]^m; scale-invariant.
    const int nn = nodes_per_axis;
    const double step = 2.0 / (nn - 1);
    std::vector<double> w(nn, step);
    w.front() = w.back() = 0.5 * step;

    std::vector<int> idx(m, 0);
    double acc = 0.0;
    while (true) {
        double r2 = 0.0, weight = 1.0;
        for (int a = 0; a < m; ++a) {
            const double xa = -1.0 + idx[a] * step;
            r2 += xa * xa;
            weight *= w[idx[a]];
        }
        acc += weight * raw_profile(std::sqrt(r2));
        int a = m - 1;
        while (a >= 0 && ++idx[a] == nn) idx[a--] = 0;
        if (a < 0) break;
    }
    return c(m) * acc;
}

double MollifierKernel::mass(double h, int nodes_per_axis) const {
    if (!(h > 0.0)) throw std::invalid_argument("kernel mass: h must be positive");
    // direct trapezoid of eval over the support box [-h,h]^n x [-h^2,h^2].
    const int nn = nodes_per_axis;
    const int m = dim_n_ + 1;
    std::vector<double> step(m, 2.0 * h / (nn - 1));
    step[dim_n_] = 2.0 * h * h / (nn - 1);

    std::vector<int> idx(m, 0);
    std::vector<double> x(dim_n_);
    double acc = 0.0;
    while (true) {
        double weight = 1.0;
        for (int a = 0; a < m; ++a) {
            const bool edge = idx[a] == 0 || idx[a] == nn - 1;
            weight *= (edge ? 0.5 : 1.0) * step[a];
        }
        for (int a = 0; a < dim_n_; ++a) x[a] = -h + idx[a] * step[a];
        const double t = -h * h + idx[dim_n_] * step[dim_n_];
        acc += weight * eval(h, x, t);
        int a = m - 1;
        while (a >= 0 && ++idx[a] == nn) idx[a--] = 0;
        if (a < 0) break;
    }
    return acc;
}

} // namespace pdp
