#include "pdp/mollify.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pdp {
namespace {

constexpr double kIndexSlack = 1.0 + 1e-12;

int index_radius(double extent, double step) {
    return static_cast<int>(std::floor(extent / step * kIndexSlack));
}

std::size_t pow_int(int base, int exp) {
    std::size_t s = 1;
    for (int i = 0; i < exp; ++i) s *= static_cast<std::size_t>(base);
    return s;
}

} // namespace

MollifyStencil build_stencil(double h, int dim, double dx, double dt, MollifyMode mode) {
    if (!(h > 0.0)) throw std::invalid_argument("mollify: h must be positive");
    MollifyStencil st;
    st.h = h;
    st.rx = index_radius(h, dx);
    st.rt = index_radius(h * h, dt);
    if (st.rx < 2)
        throw std::invalid_argument("mollify: h = " + std::to_string(h) +
                                    " under-resolved in space (need h >= 2 dx, dx = " + std::to_string(dx) + ")");
    if (st.rt < 2)
        throw std::invalid_argument("mollify: h = " + std::to_string(h) +
                                    " under-resolved in time (need h^2 >= 2 dt, dt = " + std::to_string(dt) + ")");

    st.wt.resize(2 * st.rt + 1);
    double tsum = 0.0;
    for (int m = -st.rt; m <= st.rt; ++m) {
        const double w = MollifierKernel::raw_profile(m * dt / (h * h));
        st.wt[m + st.rt] = w;
        tsum += w;
    }
    for (double& w : st.wt) w /= tsum;

    const int side = 2 * st.rx + 1;
    st.ws.assign(pow_int(side, dim), 0.0);
    std::vector<int> j(dim, -st.rx);
    double ssum = 0.0;
    for (std::size_t flat = 0; flat < st.ws.size(); ++flat) {
        double w;
        if (mode == MollifyMode::Radial) {
            double r2 = 0.0;
            for (int a = 0; a < dim; ++a) r2 += (j[a] * dx) * (j[a] * dx);
            w = MollifierKernel::raw_profile(std::sqrt(r2) / h);
        } else {
            w = 1.0;
            for (int a = 0; a < dim; ++a) w *= MollifierKernel::raw_profile(j[a] * dx / h);
        }
        st.ws[flat] = w;
        ssum += w;
        int a = dim - 1;
        while (a >= 0 && ++j[a] > st.rx) j[a--] = -st.rx;
    }
    for (double& w : st.ws) w /= ssum;
    return st;
}

GridField mollify(const GridField& f, const MollifierKernel& kernel, double h,
                  const Cylinder& q, MollifyMode mode) {
    if (kernel.dim() != f.dim())
        throw std::invalid_argument("mollify: kernel dimension does not match field");
    if (!f.domain().contains(q, h, 1e-9))
        throw std::invalid_argument("mollify: Q + Q_h(0) is not contained in the field's cylinder");

    const MollifyStencil st = build_stencil(h, f.dim(), f.dx(), f.dt(), mode);
    const GridWindow w = snap_window(f, q);
    const int n = f.dim();

    for (int a = 0; a < n; ++a)
        if (w.i_lo[a] - st.rx < 0 || w.i_lo[a] + w.count - 1 + st.rx > f.nx() - 1)
            throw std::invalid_argument("mollify: spatial stencil leaves the source grid");
    if (w.k_lo - st.rt < 0 || w.k_lo + w.tcount - 1 + st.rt > f.nt() - 1)
        throw std::invalid_argument("mollify: temporal stencil leaves the source grid");

    // temporal pass over the spatially expanded window
    const int ce = w.count + 2 * st.rx;
    const std::size_t esize = pow_int(ce, n);
    std::vector<std::size_t> estride(n, 1);
    for (int a = n - 2; a >= 0; --a) estride[a] = estride[a + 1] * static_cast<std::size_t>(ce);

    std::vector<double> tmp(esize * static_cast<std::size_t>(w.tcount));
    for (int k = 0; k < w.tcount; ++k) {
        const int kf = w.k_lo + k;
        for (std::size_t pe = 0; pe < esize; ++pe) {
            std::size_t src = 0;
            for (int a = 0; a < n; ++a) {
                const int ia = w.i_lo[a] - st.rx + static_cast<int>((pe / estride[a]) % static_cast<std::size_t>(ce));
                src += static_cast<std::size_t>(ia) * f.spatial_stride(a);
            }
            double acc = 0.0;
            for (int m = -st.rt; m <= st.rt; ++m)
                acc += st.wt[m + st.rt] * f.value(src, kf - m);
            tmp[static_cast<std::size_t>(k) * esize + pe] = acc;
        }
    }

    // spatial pass: offsets of the stencil box in the expanded lattice
    std::vector<std::ptrdiff_t> delta;
    std::vector<double> weight;
    delta.reserve(st.ws.size());
    weight.reserve(st.ws.size());
    {
        std::vector<int> j(n, -st.rx);
        for (std::size_t flat = 0; flat < st.ws.size(); ++flat) {
            if (st.ws[flat] > 0.0) {
                std::ptrdiff_t d = 0;
                for (int a = 0; a < n; ++a) d += static_cast<std::ptrdiff_t>(j[a]) * static_cast<std::ptrdiff_t>(estride[a]);
                delta.push_back(d);
                weight.push_back(st.ws[flat]);
            }
            int a = n - 1;
            while (a >= 0 && ++j[a] > st.rx) j[a--] = -st.rx;
        }
    }

    GridField out = restrict_to(f, q); // reuse domain/layout; values overwritten
    for (int k = 0; k < w.tcount; ++k) {
        const double* tk = tmp.data() + static_cast<std::size_t>(k) * esize;
        for (std::size_t sp = 0; sp < out.spatial_size(); ++sp) {
            std::size_t pe = 0;
            for (int a = 0; a < n; ++a)
                pe += static_cast<std::size_t>(out.spatial_index(sp, a) + st.rx) * estride[a];
            double acc = 0.0;
            for (std::size_t i = 0; i < delta.size(); ++i)
                acc += weight[i] * tk[static_cast<std::ptrdiff_t>(pe) - delta[i]];
            out.value(sp, k) = acc;
        }
    }
    return out;
}

double mollify_gradient_commute_check(const GridField& w, const MollifierKernel& kernel,
                                      double h, const Cylinder& q) {
    const GridField wh = mollify(w, kernel, h, q);
    const std::vector<GridField> d_of_mollified = gradient(wh);
    const std::vector<GridField> dw = gradient(w);

    double worst = 0.0;
    for (int a = 0; a < w.dim(); ++a) {
        const GridField mb = mollify(dw[a], kernel, h, q);
        const GridField& da = d_of_mollified[a];
        for (int k = 0; k < da.nt(); ++k) {
            for (std::size_t sp = 0; sp < da.spatial_size(); ++sp) {
                bool interior = true;
                for (int b = 0; b < da.dim(); ++b) {
                    const int i = da.spatial_index(sp, b);
                    if (i == 0 || i == da.nx() - 1) { interior = false; break; }
                }
                if (!interior) continue;
                worst = std::max(worst, std::abs(da.value(sp, k) - mb.value(sp, k)));
            }
        }
    }
    return worst;
}

} // namespace pdp
