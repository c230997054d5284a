#include "pdp/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdp {

double parabolic_holder_distance(std::span<const double> x1, double t1,
                                 std::span<const double> x2, double t2, double alpha) {
    double r2 = 0.0;
    for (std::size_t a = 0; a < x1.size(); ++a) r2 += (x1[a] - x2[a]) * (x1[a] - x2[a]);
    const double spatial = std::pow(std::sqrt(r2), alpha);
    const double temporal = std::pow(std::abs(t1 - t2), 0.5 * alpha);
    return std::max(spatial, temporal);
}

Weight::Weight(Fn fn, Cylinder domain, double alpha, double seminorm, std::string description)
    : fn_(std::move(fn)), domain_(std::move(domain)), alpha_(alpha), seminorm_(seminorm),
      description_(std::move(description)) {
    if (!(alpha_ > 0.0 && alpha_ <= 1.0))
        throw std::invalid_argument("Weight: alpha must lie in (0, 1]");
    if (!(seminorm_ >= 0.0))
        throw std::invalid_argument("Weight: seminorm must be nonnegative");
}

Weight Weight::analytic(Fn a, Cylinder domain, double alpha, double seminorm, std::string description) {
    return Weight(std::move(a), std::move(domain), alpha, seminorm, std::move(description));
}

Weight Weight::constant(double value, Cylinder domain) {
    if (!(value >= 0.0)) throw std::invalid_argument("Weight::constant: value must be >= 0");
    return Weight([value](std::span<const double>, double) { return value; }, std::move(domain),
                  1.0, 0.0, "constant(" + std::to_string(value) + ")");
}

Weight Weight::ramp_power(double lambda, double alpha, Cylinder domain, int axis, double offset) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("Weight::ramp_power: lambda must be >= 0");
    if (axis < 0 || axis >= domain.dim()) throw std::invalid_argument("Weight::ramp_power: bad axis");
    auto fn = [lambda, alpha, axis, offset](std::span<const double> x, double) {
        const double d = x[axis] - offset;
        return d > 0.0 ? lambda * std::pow(d, alpha) : 0.0;
    };
    return Weight(std::move(fn), std::move(domain), alpha, lambda, "ramp_power");
}

Weight Weight::ramp_power_time(double lambda, double alpha, Cylinder domain, double offset) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("Weight::ramp_power_time: lambda must be >= 0");
    auto fn = [lambda, alpha, offset](std::span<const double>, double t) {
        const double d = t - offset;
        return d > 0.0 ? lambda * std::pow(d, 0.5 * alpha) : 0.0;
    };
    return Weight(std::move(fn), std::move(domain), alpha, lambda, "ramp_power_time");
}

Weight Weight::from_grid(GridField samples, double alpha, double seminorm) {
    auto grid = std::make_shared<GridField>(std::move(samples));
    const Cylinder domain = grid->domain();
    auto fn = [grid](std::span<const double> x, double t) {
        // multilinear in space, linear in time, clamped to the grid box
        const int n = grid->dim();
        std::vector<int> i0(n);
        std::vector<double> fx(n);
        for (int a = 0; a < n; ++a) {
            const double base = grid->domain().center()[a] - grid->domain().radius();
            double u = (x[a] - base) / grid->dx();
            u = std::clamp(u, 0.0, static_cast<double>(grid->nx() - 1));
            i0[a] = std::min(static_cast<int>(u), grid->nx() - 2);
            fx[a] = u - i0[a];
        }
        double ut = (t - grid->domain().t_lo()) / grid->dt();
        ut = std::clamp(ut, 0.0, static_cast<double>(grid->nt() - 1));
        const int k0 = std::min(static_cast<int>(ut), grid->nt() - 2);
        const double ft = ut - k0;

        double acc = 0.0;
        for (int corner = 0; corner < (1 << n); ++corner) {
            double wgt = 1.0;
            std::size_t sp = 0;
            for (int a = 0; a < n; ++a) {
                const int bit = (corner >> a) & 1;
                wgt *= bit ? fx[a] : 1.0 - fx[a];
                sp += static_cast<std::size_t>(i0[a] + bit) * grid->spatial_stride(a);
            }
            acc += wgt * ((1.0 - ft) * grid->value(sp, k0) + ft * grid->value(sp, k0 + 1));
        }
        return acc;
    };
    return Weight(std::move(fn), domain, alpha, seminorm, "grid");
}

void Weight::validate_samples(int per_axis) const {
    if (per_axis < 2) throw std::invalid_argument("validate_samples: need at least 2 points per axis");
    const int n = domain_.dim();
    std::vector<std::vector<double>> pts;
    std::vector<double> ts;
    std::vector<int> idx(n + 1, 0);
    while (true) {
        std::vector<double> x(n);
        for (int a = 0; a < n; ++a)
            x[a] = domain_.center()[a] - domain_.radius() +
                   2.0 * domain_.radius() * idx[a] / (per_axis - 1);
        const double t = domain_.t_lo() + domain_.time_length() * idx[n] / (per_axis - 1);
        pts.push_back(std::move(x));
        ts.push_back(t);
        int a = n;
        while (a >= 0 && ++idx[a] == per_axis) idx[a--] = 0;
        if (a < 0) break;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double ai = fn_(pts[i], ts[i]);
        if (!(ai >= 0.0))
            throw std::runtime_error("Weight: negative value " + std::to_string(ai) + " at a sample point");
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double aj = fn_(pts[j], ts[j]);
            const double dist = parabolic_holder_distance(pts[i], ts[i], pts[j], ts[j], alpha_);
            if (dist == 0.0) continue;
            const double bound = seminorm_ * dist * (1.0 + 1e-9) + 1e-12;
            if (std::abs(ai - aj) > bound)
                throw std::runtime_error("Weight: declared Hoelder bound violated: |a(z1)-a(z2)| = " +
                                         std::to_string(std::abs(ai - aj)) + " > [a]_alpha * dist = " +
                                         std::to_string(seminorm_ * dist));
        }
    }
}

double shifted_weight(const Weight& a, double h, std::span<const double> x, double t,
                      int samples_per_axis) {
    if (!(h > 0.0)) throw std::invalid_argument("shifted_weight: h must be positive");
    if (samples_per_axis < 5) throw std::invalid_argument("shifted_weight: need >= 5 samples per axis");
    const int n = a.domain().dim();
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("shifted_weight: point dimension mismatch");
    if (!a.domain().contains(x, t, 1e-12) ||
        !a.domain().contains(Cylinder(std::vector<double>(x.begin(), x.end()), h, t - h * h, t + h * h), 0.0, 1e-9))
        throw std::invalid_argument("shifted_weight: Q_h(z) leaves the weight's domain");

    const int k = samples_per_axis;
    const double ball2 = h * h * (1.0 + 1e-12);
    std::vector<int> idx(n + 1, 0);
    std::vector<double> y(n);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        double r2 = 0.0;
        for (int axis = 0; axis < n; ++axis) {
            const double off = -h + 2.0 * h * idx[axis] / (k - 1);
            y[axis] = x[axis] + off;
            r2 += off * off;
        }
        if (r2 <= ball2) {
            const double tau = t - h * h + 2.0 * h * h * idx[n] / (k - 1);
            best = std::min(best, a(y, tau));
        }
        int axis = n;
        while (axis >= 0 && ++idx[axis] == k) idx[axis--] = 0;
        if (axis < 0) break;
    }
    return best;
}

double holder_seminorm_estimate(const Weight& a, double alpha, int sample_count) {
    if (sample_count < 2) throw std::invalid_argument("holder_seminorm_estimate: need sample_count >= 2");
    const int n = a.domain().dim();
    constexpr int kLattice = 129;
    std::mt19937 rng(0x5eedu);
    std::uniform_int_distribution<int> pick(0, kLattice - 1);

    auto lattice_point = [&](std::vector<double>& x, double& t) {
        for (int axis = 0; axis < n; ++axis)
            x[axis] = a.domain().center()[axis] - a.domain().radius() +
                      2.0 * a.domain().radius() * pick(rng) / (kLattice - 1);
        t = a.domain().t_lo() + a.domain().time_length() * pick(rng) / (kLattice - 1);
    };

    std::vector<double> x1(n), x2(n);
    double t1 = 0.0, t2 = 0.0;
    double best = 0.0;
    int accepted = 0;
    int draws = 0;
    const int max_draws = sample_count * 16 + 1024;
    while (accepted < sample_count && draws < max_draws) {
        ++draws;
        lattice_point(x1, t1);
        lattice_point(x2, t2);
        const double dist = parabolic_holder_distance(x1, t1, x2, t2, alpha);
        if (dist == 0.0) continue; // coincident pair
        ++accepted;
        best = std::max(best, std::abs(a(x1, t1) - a(x2, t2)) / dist);
    }
    return best;
}

} // namespace pdp
