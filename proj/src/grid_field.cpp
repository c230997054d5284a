#include "pdp/grid_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pdp {
namespace {

std::size_t checked_spatial_size(int dim, int nx) {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) {
        if (s > (std::size_t(1) << 40) / static_cast<std::size_t>(nx))
            throw std::invalid_argument("GridField: spatial lattice too large");
        s *= static_cast<std::size_t>(nx);
    }
    return s;
}

void require_same_grid(const GridField& a, const GridField& b, const char* op) {
    if (a.dim() != b.dim() || a.nx() != b.nx() || a.nt() != b.nt() || !(a.domain() == b.domain()))
        throw std::invalid_argument(std::string(op) + ": grids do not match");
}

} // namespace

GridField::GridField(Cylinder domain, int nx, int nt)
    : domain_(std::move(domain)), nx_(nx), nt_(nt) {
    if (nx_ < 2 || nt_ < 2)
        throw std::invalid_argument("GridField: need at least two nodes per axis");
    dx_ = 2.0 * domain_.radius() / (nx_ - 1);
    dt_ = domain_.time_length() / (nt_ - 1);
    spatial_size_ = checked_spatial_size(dim(), nx_);
    strides_.assign(dim(), 1);
    for (int a = dim() - 2; a >= 0; --a)
        strides_[a] = strides_[a + 1] * static_cast<std::size_t>(nx_);
    values_.assign(spatial_size_ * static_cast<std::size_t>(nt_), 0.0);
}

GridField GridField::sample(const Cylinder& domain, int nx, int nt, const PointFn& f) {
    GridField out(domain, nx, nt);
    std::vector<double> x(out.dim());
    for (int k = 0; k < nt; ++k) {
        const double t = out.time(k);
        for (std::size_t sp = 0; sp < out.spatial_size(); ++sp) {
            out.point_at(sp, x);
            out.value(sp, k) = f(x, t);
        }
    }
    if (!out.all_finite())
        throw std::invalid_argument("GridField::sample: function produced non-finite values");
    return out;
}

void GridField::point_at(std::size_t sp, std::span<double> x) const {
    for (int a = 0; a < dim(); ++a)
        x[a] = coord(a, spatial_index(sp, a));
}

bool GridField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

GridWindow snap_window(const GridField& f, const Cylinder& q) {
    if (q.dim() != f.dim())
        throw std::invalid_argument("snap_window: dimension mismatch");
    const double eps_x = 1e-9 * f.dx();
    const double eps_t = 1e-9 * f.dt();
    GridWindow w;
    w.i_lo.resize(f.dim());
    int count = -1;
    for (int a = 0; a < f.dim(); ++a) {
        const double base = f.domain().center()[a] - f.domain().radius();
        const double lo = q.center()[a] - q.radius();
        const double hi = q.center()[a] + q.radius();
        int ilo = static_cast<int>(std::ceil((lo - base - eps_x) / f.dx()));
        int ihi = static_cast<int>(std::floor((hi - base + eps_x) / f.dx()));
        ilo = std::max(ilo, 0);
        ihi = std::min(ihi, f.nx() - 1);
        if (ihi - ilo + 1 < 2)
            throw std::invalid_argument("snap_window: cylinder traps fewer than two nodes on axis " +
                                        std::to_string(a));
        if (count >= 0 && ihi - ilo + 1 != count)
            throw std::invalid_argument("snap_window: non-square spatial window");
        count = ihi - ilo + 1;
        w.i_lo[a] = ilo;
    }
    w.count = count;
    int klo = static_cast<int>(std::ceil((q.t_lo() - f.domain().t_lo() - eps_t) / f.dt()));
    int khi = static_cast<int>(std::floor((q.t_hi() - f.domain().t_lo() + eps_t) / f.dt()));
    klo = std::max(klo, 0);
    khi = std::min(khi, f.nt() - 1);
    if (khi - klo + 1 < 2)
        throw std::invalid_argument("snap_window: cylinder traps fewer than two time slices");
    w.k_lo = klo;
    w.tcount = khi - klo + 1;
    return w;
}

GridField restrict_to(const GridField& f, const Cylinder& q) {
    const GridWindow w = snap_window(f, q);
    const int n = f.dim();
    std::vector<double> center(n);
    for (int a = 0; a < n; ++a)
        center[a] = 0.5 * (f.coord(a, w.i_lo[a]) + f.coord(a, w.i_lo[a] + w.count - 1));
    const double radius = 0.5 * (w.count - 1) * f.dx();
    Cylinder sub(center, radius, f.time(w.k_lo), f.time(w.k_lo + w.tcount - 1));
    GridField out(sub, w.count, w.tcount);

    for (int k = 0; k < w.tcount; ++k) {
        for (std::size_t sp = 0; sp < out.spatial_size(); ++sp) {
            std::size_t src = 0;
            for (int a = 0; a < n; ++a)
                src += static_cast<std::size_t>(w.i_lo[a] + out.spatial_index(sp, a)) * f.spatial_stride(a);
            out.value(sp, k) = f.value(src, w.k_lo + k);
        }
    }
    return out;
}

std::vector<GridField> gradient(const GridField& w) {
    if (w.nx() < 3)
        throw std::invalid_argument("gradient: need nx >= 3, got " + std::to_string(w.nx()));
    const int n = w.dim();
    std::vector<GridField> grad(n, GridField(w.domain(), w.nx(), w.nt()));
    const double inv2dx = 1.0 / (2.0 * w.dx());
    for (int a = 0; a < n; ++a) {
        const std::size_t s = w.spatial_stride(a);
        GridField& g = grad[a];
        for (int k = 0; k < w.nt(); ++k) {
            for (std::size_t sp = 0; sp < w.spatial_size(); ++sp) {
                const int i = w.spatial_index(sp, a);
                double d;
                if (i == 0)
                    d = (-3.0 * w.value(sp, k) + 4.0 * w.value(sp + s, k) - w.value(sp + 2 * s, k)) * inv2dx;
                else if (i == w.nx() - 1)
                    d = (3.0 * w.value(sp, k) - 4.0 * w.value(sp - s, k) + w.value(sp - 2 * s, k)) * inv2dx;
                else
                    d = (w.value(sp + s, k) - w.value(sp - s, k)) * inv2dx;
                g.value(sp, k) = d;
            }
        }
    }
    return grad;
}

GridField gradient_norm(const std::vector<GridField>& grad) {
    if (grad.empty()) throw std::invalid_argument("gradient_norm: empty gradient");
    GridField out(grad[0].domain(), grad[0].nx(), grad[0].nt());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double s = 0.0;
        for (const GridField& g : grad) s += g.values()[i] * g.values()[i];
        out.values()[i] = std::sqrt(s);
    }
    return out;
}

std::vector<double> trapezoid_weights(int count, double step) {
    std::vector<double> w(count, step);
    w.front() = 0.5 * step;
    w.back() = 0.5 * step;
    return w;
}

std::vector<double> spatial_quadrature_weights(const GridField& f) {
    const std::vector<double> axis = trapezoid_weights(f.nx(), f.dx());
    std::vector<double> w(f.spatial_size(), 1.0);
    for (std::size_t sp = 0; sp < w.size(); ++sp)
        for (int a = 0; a < f.dim(); ++a)
            w[sp] *= axis[f.spatial_index(sp, a)];
    return w;
}

double integrate_space(const GridField& f, int t_index, std::span<const double> weights) {
    double acc = 0.0;
    const std::span<const double> vals = f.slice(t_index);
    for (std::size_t sp = 0; sp < vals.size(); ++sp)
        acc += weights[sp] * vals[sp];
    return acc;
}

double integrate_space(const GridField& f, int t_index) {
    return integrate_space(f, t_index, spatial_quadrature_weights(f));
}

double integrate_spacetime(const GridField& f) {
    const std::vector<double> ws = spatial_quadrature_weights(f);
    const std::vector<double> wt = trapezoid_weights(f.nt(), f.dt());
    double acc = 0.0;
    for (int k = 0; k < f.nt(); ++k)
        acc += wt[k] * integrate_space(f, k, ws);
    return acc;
}

GridField operator+(const GridField& a, const GridField& b) {
    require_same_grid(a, b, "operator+");
    GridField out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] += b.values()[i];
    return out;
}

GridField operator-(const GridField& a, const GridField& b) {
    require_same_grid(a, b, "operator-");
    GridField out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] -= b.values()[i];
    return out;
}

GridField operator*(double s, const GridField& a) {
    GridField out = a;
    for (double& v : out.values()) v *= s;
    return out;
}

double max_abs(const GridField& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

} // namespace pdp
