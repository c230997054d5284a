#include "pdp/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pdp {
namespace {

constexpr double kTiny = 1e-300;
constexpr double kIdentityTol = 1e-12;

GridField sample_weight_on(const GridField& like, const Weight& a) {
    return GridField::sample(like.domain(), like.nx(), like.nt(),
                             [&a](std::span<const double> x, double t) { return a(x, t); });
}

GridField pow_field(const GridField& f, double e) {
    GridField out = f;
    for (double& v : out.values()) v = std::pow(std::abs(v), e);
    return out;
}

/// H(., Dw) as a field: gn^p + a gn^q with gn = |Dw| sampled nodewise.
GridField h_of_gradient(const GridField& gn, const GridField& a_field, double p, double q) {
    GridField out = gn;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double g = gn.values()[i];
        out.values()[i] = std::pow(g, p) + a_field.values()[i] * std::pow(g, q);
    }
    return out;
}

/// Spatial window of Q inside f's lattice: flat source indices plus
/// tensor trapezoid weights of the window box.
struct SpatialWindow {
    std::vector<std::size_t> src;
    std::vector<double> weight;
    GridWindow win;
};

SpatialWindow make_spatial_window(const GridField& f, const Cylinder& q) {
    SpatialWindow sw;
    sw.win = snap_window(f, q);
    const int n = f.dim();
    std::size_t size = 1;
    for (int a = 0; a < n; ++a) size *= static_cast<std::size_t>(sw.win.count);
    sw.src.resize(size);
    sw.weight.resize(size);
    const std::vector<double> axis = trapezoid_weights(sw.win.count, f.dx());

    std::vector<std::size_t> stride(n, 1);
    for (int a = n - 2; a >= 0; --a) stride[a] = stride[a + 1] * static_cast<std::size_t>(sw.win.count);
    for (std::size_t i = 0; i < size; ++i) {
        std::size_t src = 0;
        double wgt = 1.0;
        for (int a = 0; a < n; ++a) {
            const int ia = static_cast<int>((i / stride[a]) % static_cast<std::size_t>(sw.win.count));
            src += static_cast<std::size_t>(sw.win.i_lo[a] + ia) * f.spatial_stride(a);
            wgt *= axis[ia];
        }
        sw.src[i] = src;
        sw.weight[i] = wgt;
    }
    return sw;
}

double window_l2_diff(const GridField& f, const SpatialWindow& sw, int k1, int k2) {
    double acc = 0.0;
    for (std::size_t i = 0; i < sw.src.size(); ++i) {
        const double d = f.value(sw.src[i], k1) - f.value(sw.src[i], k2);
        acc += sw.weight[i] * d * d;
    }
    return std::sqrt(acc);
}

/// Spatial stencil offsets with positive kernel weight, as flat index
/// deltas in f's lattice.
struct SpatialOffsets {
    std::vector<std::ptrdiff_t> delta;
    std::vector<double> weight;
};

SpatialOffsets spatial_offsets(const GridField& f, const MollifyStencil& st) {
    const int n = f.dim();
    SpatialOffsets so;
    std::vector<int> j(n, -st.rx);
    for (std::size_t flat = 0; flat < st.ws.size(); ++flat) {
        if (st.ws[flat] > 0.0) {
            std::ptrdiff_t d = 0;
            for (int a = 0; a < n; ++a)
                d += static_cast<std::ptrdiff_t>(j[a]) * static_cast<std::ptrdiff_t>(f.spatial_stride(a));
            so.delta.push_back(d);
            so.weight.push_back(st.ws[flat]);
        }
        int a = n - 1;
        while (a >= 0 && ++j[a] > st.rx) j[a--] = -st.rx;
    }
    return so;
}

void require_stencil_fits(const GridField& f, const GridWindow& w, const MollifyStencil& st) {
    for (std::size_t a = 0; a < w.i_lo.size(); ++a)
        if (w.i_lo[a] - st.rx < 0 || w.i_lo[a] + w.count - 1 + st.rx > f.nx() - 1)
            throw std::invalid_argument("verification: spatial stencil leaves the source grid");
    if (w.k_lo - st.rt < 0 || w.k_lo + w.tcount - 1 + st.rt > f.nt() - 1)
        throw std::invalid_argument("verification: temporal stencil leaves the source grid");
}

/// a_h as a field on Q's sub-lattice: minimum of the sampled coefficient
/// over the kernel-support stencil of Q_h(z) (time pass then spatial
/// pass; min over a product set splits the same way a sum does).
GridField shifted_weight_min_field(const GridField& a_field, const MollifyStencil& st, const Cylinder& q) {
    const GridWindow w = snap_window(a_field, q);
    require_stencil_fits(a_field, w, st);
    const int n = a_field.dim();

    const int ce = w.count + 2 * st.rx;
    std::size_t esize = 1;
    for (int a = 0; a < n; ++a) esize *= static_cast<std::size_t>(ce);
    std::vector<std::size_t> estride(n, 1);
    for (int a = n - 2; a >= 0; --a) estride[a] = estride[a + 1] * static_cast<std::size_t>(ce);

    std::vector<double> tmin(esize * static_cast<std::size_t>(w.tcount));
    for (int k = 0; k < w.tcount; ++k) {
        const int kf = w.k_lo + k;
        for (std::size_t pe = 0; pe < esize; ++pe) {
            std::size_t src = 0;
            for (int a = 0; a < n; ++a) {
                const int ia = w.i_lo[a] - st.rx + static_cast<int>((pe / estride[a]) % static_cast<std::size_t>(ce));
                src += static_cast<std::size_t>(ia) * a_field.spatial_stride(a);
            }
            double best = std::numeric_limits<double>::infinity();
            for (int m = -st.rt; m <= st.rt; ++m)
                best = std::min(best, a_field.value(src, kf - m));
            tmin[static_cast<std::size_t>(k) * esize + pe] = best;
        }
    }

    std::vector<std::ptrdiff_t> delta;
    {
        std::vector<int> j(n, -st.rx);
        for (std::size_t flat = 0; flat < st.ws.size(); ++flat) {
            if (st.ws[flat] > 0.0) {
                std::ptrdiff_t d = 0;
                for (int a = 0; a < n; ++a)
                    d += static_cast<std::ptrdiff_t>(j[a]) * static_cast<std::ptrdiff_t>(estride[a]);
                delta.push_back(d);
            }
            int a = n - 1;
            while (a >= 0 && ++j[a] > st.rx) j[a--] = -st.rx;
        }
    }

    GridField out = restrict_to(a_field, q);
    for (int k = 0; k < w.tcount; ++k) {
        const double* tk = tmin.data() + static_cast<std::size_t>(k) * esize;
        for (std::size_t sp = 0; sp < out.spatial_size(); ++sp) {
            std::size_t pe = 0;
            for (int a = 0; a < n; ++a)
                pe += static_cast<std::size_t>(out.spatial_index(sp, a) + st.rx) * estride[a];
            double best = std::numeric_limits<double>::infinity();
            for (std::ptrdiff_t d : delta)
                best = std::min(best, tk[static_cast<std::ptrdiff_t>(pe) - d]);
            out.value(sp, k) = best;
        }
    }
    return out;
}

bool resolvable(const GridField& w, double h) {
    constexpr double slack = 1.0 + 1e-12;
    return static_cast<int>(std::floor(h / w.dx() * slack)) >= 2 &&
           static_cast<int>(std::floor(h * h / w.dt() * slack)) >= 2;
}

struct JensenScan {
    double min_margin = std::numeric_limits<double>::infinity();
    double min_scaled = std::numeric_limits<double>::infinity();
};

JensenScan scan_jensen(const GridField& avg_of_pow, const GridField& gnh, double p) {
    JensenScan js;
    for (std::size_t i = 0; i < avg_of_pow.size(); ++i) {
        const double rhs = avg_of_pow.values()[i];
        const double lhs = std::pow(gnh.values()[i], p);
        const double margin = rhs - lhs;
        js.min_margin = std::min(js.min_margin, margin);
        js.min_scaled = std::min(js.min_scaled, margin / (std::abs(rhs) + std::abs(lhs) + kTiny));
    }
    return js;
}

struct StarScan {
    double max_identity_rel = 0.0;
    double min_coeff_margin = std::numeric_limits<double>::infinity();
    double min_jensen2_scaled = std::numeric_limits<double>::infinity();
    double star_margin_min = std::numeric_limits<double>::infinity();
};

StarScan scan_star(const GridField& gnh, const GridField& a_r, const GridField& a_h,
                   const GridField& hdw_avg, double p, double q, double coeff_bound) {
    StarScan ss;
    for (std::size_t i = 0; i < gnh.size(); ++i) {
        const double xi = gnh.values()[i];
        const double xip = std::pow(xi, p);
        const double xiq = std::pow(xi, q);
        const double a = a_r.values()[i];
        const double ah = a_h.values()[i];
        const double big_h = xip + a * xiq;
        const double h_h = xip + ah * xiq;

        const double identity_residual = std::abs(big_h - ((a - ah) * xiq + h_h));
        ss.max_identity_rel = std::max(ss.max_identity_rel, identity_residual / (std::abs(big_h) + kTiny));

        ss.min_coeff_margin = std::min(ss.min_coeff_margin, coeff_bound - (a - ah));

        const double rhs = hdw_avg.values()[i];
        const double margin2 = rhs - h_h;
        ss.min_jensen2_scaled = std::min(ss.min_jensen2_scaled, margin2 / (std::abs(rhs) + std::abs(h_h) + kTiny));

        ss.star_margin_min = std::min(ss.star_margin_min, coeff_bound * xiq + h_h - big_h);
    }
    return ss;
}

/// I1/I2 split with the mollified field already available.
IDecomp i_decomposition_core(const GridField& w, const MollifyStencil& st, const Cylinder& q,
                             const std::vector<double>& g2_slices_q0, const GridField& wh,
                             const GridField& wr) {
    const SpatialWindow sw = make_spatial_window(w, q);
    require_stencil_fits(w, sw.win, st);
    const SpatialOffsets so = spatial_offsets(w, st);

    const int k_first = sw.win.k_lo - st.rt;
    const int n_slices = sw.win.tcount + 2 * st.rt;

    // S[j][k'] = || w(. - y_j, k') - w(., k') ||_{L2(B)}
    std::vector<double> s_jk(so.delta.size() * static_cast<std::size_t>(n_slices), 0.0);
    for (std::size_t j = 0; j < so.delta.size(); ++j) {
        if (so.delta[j] == 0) continue;
        for (int kk = 0; kk < n_slices; ++kk) {
            const int k = k_first + kk;
            double acc = 0.0;
            for (std::size_t i = 0; i < sw.src.size(); ++i) {
                const double d = w.value(static_cast<std::size_t>(
                                             static_cast<std::ptrdiff_t>(sw.src[i]) - so.delta[j]),
                                         k) -
                                 w.value(sw.src[i], k);
                acc += sw.weight[i] * d * d;
            }
            s_jk[j * static_cast<std::size_t>(n_slices) + kk] = std::sqrt(acc);
        }
    }

    IDecomp out;
    for (int k = sw.win.k_lo; k <= sw.win.k_lo + sw.win.tcount - 1; ++k) {
        double i1 = 0.0;
        for (std::size_t j = 0; j < so.delta.size(); ++j) {
            if (so.delta[j] == 0) continue;
            double tavg = 0.0;
            for (int m = -st.rt; m <= st.rt; ++m)
                tavg += st.wt[m + st.rt] * s_jk[j * static_cast<std::size_t>(n_slices) + (k - m - k_first)];
            i1 += so.weight[j] * tavg;
        }
        double i2 = 0.0;
        for (int m = -st.rt; m <= st.rt; ++m) {
            if (m == 0) continue;
            i2 += st.wt[m + st.rt] * window_l2_diff(w, sw, k - m, k);
        }
        out.i1_sup = std::max(out.i1_sup, i1);
        out.i2_sup = std::max(out.i2_sup, i2);

        // absolute-continuity tail over the +-h^2 window
        double tail = 0.0;
        for (int m = -st.rt; m <= st.rt; ++m) {
            const double wgt = (m == -st.rt || m == st.rt) ? 0.5 : 1.0;
            tail += wgt * g2_slices_q0[static_cast<std::size_t>(k - m)];
        }
        out.ac_tail = std::max(out.ac_tail, tail * w.dt());
    }

    // gap and exact Minkowski domination
    const std::vector<double> ws_out = spatial_quadrature_weights(wr);
    double sup = 0.0;
    for (int k = 0; k < wr.nt(); ++k) {
        double acc = 0.0;
        for (std::size_t sp = 0; sp < wr.spatial_size(); ++sp) {
            const double d = wh.value(sp, k) - wr.value(sp, k);
            acc += ws_out[sp] * d * d;
        }
        sup = std::max(sup, acc);
    }
    out.cl2_gap = std::sqrt(sup);
    out.triangle_holds = out.cl2_gap <= out.i1_sup + out.i2_sup + 1e-12 * (out.cl2_gap + 1.0);
    return out;
}

std::vector<double> grad_l2_slices(const GridField& w, const Cylinder& q0) {
    const SpatialWindow sw0 = make_spatial_window(w, q0);
    const GridField gn = gradient_norm(gradient(w));
    std::vector<double> g2(static_cast<std::size_t>(w.nt()), 0.0);
    for (int k = 0; k < w.nt(); ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < sw0.src.size(); ++i) {
            const double g = gn.value(sw0.src[i], k);
            acc += sw0.weight[i] * g * g;
        }
        g2[static_cast<std::size_t>(k)] = acc;
    }
    return g2;
}

} // namespace

JensenCheck check_jensen_gradient(const GridField& w, const MollifierKernel& kernel,
                                  double h, const Cylinder& q, double p) {
    const GridField gnp = pow_field(gradient_norm(gradient(w)), p);
    const GridField avg = mollify(gnp, kernel, h, q);
    const GridField gnh = gradient_norm(gradient(mollify(w, kernel, h, q)));
    const JensenScan js = scan_jensen(avg, gnh, p);
    const QuadBudget budget{w.dx(), w.dt()};
    JensenCheck out;
    out.min_margin = js.min_margin;
    out.min_margin_scaled = js.min_scaled;
    out.pass = js.min_scaled >= -budget.rel();
    return out;
}

StarChainCheck check_star_chain(const GridField& w, const Weight& a, const ExponentSet& exps,
                                const MollifierKernel& kernel, double h, const Cylinder& q,
                                Regime regime) {
    const MollifyStencil st = build_stencil(h, w.dim(), w.dx(), w.dt());
    const GridField a_field = sample_weight_on(w, a);
    const GridField a_r = restrict_to(a_field, q);
    const GridField a_h = shifted_weight_min_field(a_field, st, q);

    const GridField gn = gradient_norm(gradient(w));
    const GridField hdw = h_of_gradient(gn, a_field, exps.p, exps.q);
    const GridField hdw_avg = mollify(hdw, kernel, h, q);
    const GridField gnh = gradient_norm(gradient(mollify(w, kernel, h, q)));

    const double coeff_bound = a.seminorm() * std::pow(h, a.alpha());
    const StarScan ss = scan_star(gnh, a_r, a_h, hdw_avg, exps.p, exps.q, coeff_bound);
    const QuadBudget budget{w.dx(), w.dt()};

    StarChainCheck out;
    out.max_identity_rel = ss.max_identity_rel;
    out.coeff_bound = coeff_bound;
    out.min_coeff_margin = ss.min_coeff_margin;
    out.min_jensen2_scaled = ss.min_jensen2_scaled;
    out.star_margin_min = ss.star_margin_min;
    out.condition_satisfied = check_gap(regime, exps).satisfied;
    out.pass_identity = ss.max_identity_rel <= kIdentityTol;
    out.pass_coeff = ss.min_coeff_margin >= -kIdentityTol * std::max(1.0, coeff_bound);
    out.pass_jensen2 = ss.min_jensen2_scaled >= -budget.rel();
    return out;
}

RateFit fit_loglog(std::span<const double> h, std::span<const double> y, int use_last) {
    RateFit fit;
    std::vector<double> lx, ly;
    const int count = static_cast<int>(h.size());
    for (int i = std::max(0, count - use_last); i < count; ++i) {
        if (y[i] > 0.0 && h[i] > 0.0) {
            lx.push_back(std::log(h[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    fit.points = static_cast<int>(lx.size());
    if (fit.points < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < fit.points; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = fit.points * sxx - sx * sx;
    fit.slope = (fit.points * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / fit.points;
    return fit;
}

BlowupCheck gradient_blowup_rate(const GridField& w, Regime regime, const ExponentSet& exps,
                                 std::span<const double> h_values, const Cylinder& q,
                                 const MollifierKernel& kernel, double tolerance) {
    BlowupCheck out;
    out.tolerance = tolerance;
    for (double h : h_values) {
        if (!resolvable(w, h)) continue;
        const GridField gnh = gradient_norm(gradient(mollify(w, kernel, h, q)));
        out.h_used.push_back(h);
        out.grad_sup.push_back(max_abs(gnh));
    }
    if (out.h_used.size() < 3)
        throw std::invalid_argument("gradient_blowup_rate: need at least 3 resolvable h-values, have " +
                                    std::to_string(out.h_used.size()));
    switch (regime) {
        case Regime::General: out.required_slope = -(exps.n + 2) / exps.p; break;
        case Regime::Bounded: out.required_slope = -1.0; break;
        case Regime::SIntegrable: {
            if (!exps.s) throw std::invalid_argument("gradient_blowup_rate: regime needs s");
            out.required_slope = exps.s_is_infinite() ? -1.0 : -(exps.n + *exps.s) / *exps.s;
            break;
        }
    }
    out.fit = fit_loglog(out.h_used, out.grad_sup, 4);
    out.pass = out.fit.points >= 2 && out.fit.slope >= out.required_slope - tolerance;
    return out;
}

ModulusTable time_modulus(const GridField& w, const Cylinder& q, std::span<const double> deltas) {
    const SpatialWindow sw = make_spatial_window(w, q);
    const int k_hi = sw.win.k_lo + sw.win.tcount - 1;
    const int margin = std::min(sw.win.k_lo, w.nt() - 1 - k_hi);

    ModulusTable table;
    for (double delta : deltas) {
        if (!(delta >= 0.0)) throw std::invalid_argument("time_modulus: negative shift");
        const int mmax = static_cast<int>(std::floor(delta / w.dt() * (1.0 + 1e-12)));
        if (mmax > margin)
            throw std::invalid_argument("time_modulus: shift " + std::to_string(delta) +
                                        " exceeds the domain margin around Q");
        double omega = 0.0;
        for (int k = sw.win.k_lo; k <= k_hi; ++k)
            for (int m = 1; m <= mmax; ++m)
                omega = std::max({omega, window_l2_diff(w, sw, k - m, k), window_l2_diff(w, sw, k + m, k)});
        table.deltas.push_back(delta);
        table.omega.push_back(omega);
    }
    return table;
}

IDecomp check_I_decomposition(const GridField& w, const MollifierKernel& kernel, double h,
                              const Cylinder& q, const Cylinder& q0) {
    const MollifyStencil st = build_stencil(h, w.dim(), w.dx(), w.dt());
    const std::vector<double> g2 = grad_l2_slices(w, q0);
    const GridField wh = mollify(w, kernel, h, q);
    const GridField wr = restrict_to(w, q);
    return i_decomposition_core(w, st, q, g2, wh, wr);
}

ConvergenceReport run_convergence(const ConvergenceInput& in) {
    in.exps.validate();
    if (in.regime == Regime::SIntegrable && !in.exps.s)
        throw std::invalid_argument("run_convergence: s-integrable regime needs s");
    if (in.h_values.empty()) throw std::invalid_argument("run_convergence: empty h sequence");

    ConvergenceReport rep;
    rep.verdict = check_gap(in.regime, in.exps);
    rep.condition_satisfied = rep.verdict.satisfied;
    const QuadBudget budget{in.w.dx(), in.w.dt()};
    rep.quad_budget_rel = budget.rel();

    // shared precomputation on the ambient grid
    const GridField wr = restrict_to(in.w, in.q);
    const GridField gn = gradient_norm(gradient(in.w));
    const GridField a_field = sample_weight_on(in.w, in.weight);
    const GridField a_r = restrict_to(a_field, in.q);
    const GridField gnp = pow_field(gn, in.exps.p);
    const GridField hdw = h_of_gradient(gn, a_field, in.exps.p, in.exps.q);
    const GridField hdw_r = restrict_to(hdw, in.q);
    const GridField gn_r = gradient_norm(gradient(wr));
    const GridField h_node_ref = h_of_gradient(gn_r, a_r, in.exps.p, in.exps.q);

    const Cylinder q0 = in.q.expand(in.h_shrink);
    const std::vector<double> g2 = grad_l2_slices(in.w, q0);

    const EnergyBreakdown eb_w = energy_P(wr, in.weight, in.exps, wr.domain());
    rep.p_ref = eb_w.total_P;
    rep.f_ref = eb_w.total_F;
    rep.lpw1p_ref = norm_Lp_W1p(wr, in.exps.p, wr.domain());
    rep.cl2_ref = norm_C_L2(wr, wr.domain());

    const double coeff_scale = in.weight.seminorm();

    for (double h : in.h_values) {
        if (!resolvable(in.w, h)) {
            rep.unresolved_h.push_back(h);
            continue;
        }
        const MollifyStencil st = build_stencil(h, in.w.dim(), in.w.dx(), in.w.dt());
        const GridField wh = mollify(in.w, in.kernel, h, in.q);
        const GridField diff = wh - wr;

        HRecord rec;
        rec.h = h;
        rec.norm_gap_lpw1p = norm_Lp_W1p(diff, in.exps.p, diff.domain());
        rec.norm_gap_cl2 = norm_C_L2(diff, diff.domain());
        const EnergyBreakdown eb_h = energy_P(wh, in.weight, in.exps, wh.domain());
        rec.energy_gap_p = std::abs(eb_h.total_P - eb_w.total_P);
        rec.energy_gap_f = std::abs(eb_h.total_F - eb_w.total_F);
        rec.l2_sup_gap = std::abs(eb_h.l2_sup - eb_w.l2_sup);

        const GridField gnh = gradient_norm(gradient(wh));
        rec.grad_sup = max_abs(gnh);

        const GridField avg_gnp = mollify(gnp, in.kernel, h, in.q);
        const JensenScan js = scan_jensen(avg_gnp, gnh, in.exps.p);
        rec.jensen_margin = js.min_margin;
        rep.families.jensen = rep.families.jensen && js.min_scaled >= -budget.rel();

        const GridField a_h = shifted_weight_min_field(a_field, st, in.q);
        const GridField hdw_avg = mollify(hdw, in.kernel, h, in.q);
        const double coeff_bound = coeff_scale * std::pow(h, in.weight.alpha());
        const StarScan ss = scan_star(gnh, a_r, a_h, hdw_avg, in.exps.p, in.exps.q, coeff_bound);
        rec.star_margin = ss.star_margin_min;
        rep.families.star_identity = rep.families.star_identity && ss.max_identity_rel <= kIdentityTol;
        rep.families.coeff_bound = rep.families.coeff_bound &&
                                   ss.min_coeff_margin >= -kIdentityTol * std::max(1.0, coeff_bound);
        rep.families.jensen2 = rep.families.jensen2 && ss.min_jensen2_scaled >= -budget.rel();

        // dominated-convergence surrogate columns
        double node_gap = 0.0;
        for (std::size_t i = 0; i < gnh.size(); ++i) {
            const double xi = gnh.values()[i];
            const double h_now = std::pow(xi, in.exps.p) + a_r.values()[i] * std::pow(xi, in.exps.q);
            node_gap = std::max(node_gap, std::abs(h_now - h_node_ref.values()[i]));
        }
        rec.h_node_gap_max = node_gap;
        double l1 = 0.0;
        {
            GridField absdiff = hdw_avg - hdw_r;
            for (double& v : absdiff.values()) v = std::abs(v);
            l1 = integrate_spacetime(absdiff);
        }
        rec.h_dom_l1_gap = l1;
        const double int_avg = integrate_spacetime(hdw_avg);
        rec.bound_ratio = int_avg > 0.0 ? eb_h.total_P / int_avg : 0.0;
        rec.prefactor_he = std::pow(h, rep.verdict.blowup);

        const IDecomp idec = i_decomposition_core(in.w, st, in.q, g2, wh, wr);
        rec.i1_sup = idec.i1_sup;
        rec.i2_sup = idec.i2_sup;
        rec.ac_tail = idec.ac_tail;
        rep.families.cl2_triangle = rep.families.cl2_triangle && idec.triangle_holds;

        const double hh[1] = {h * h};
        const ModulusTable mt = time_modulus(in.w, in.q, hh);
        rec.modulus_h2 = mt.omega[0];
        rep.families.i2_modulus = rep.families.i2_modulus &&
                                  rec.i2_sup <= rec.modulus_h2 + 1e-12 * (rec.modulus_h2 + 1.0);

        rep.rows.push_back(rec);
    }

    if (rep.rows.empty())
        throw std::runtime_error("run_convergence: no h in the sequence is resolvable by the grid");

    std::vector<double> hs;
    for (const HRecord& r : rep.rows) hs.push_back(r.h);
    auto fit_col = [&](const std::string& name, auto member) {
        std::vector<double> y;
        for (const HRecord& r : rep.rows) y.push_back(r.*member);
        rep.fitted_rates[name] = fit_loglog(hs, y, 4);
    };
    fit_col("norm_gap_lpw1p", &HRecord::norm_gap_lpw1p);
    fit_col("norm_gap_cl2", &HRecord::norm_gap_cl2);
    fit_col("energy_gap_p", &HRecord::energy_gap_p);
    fit_col("energy_gap_f", &HRecord::energy_gap_f);
    fit_col("grad_sup", &HRecord::grad_sup);
    fit_col("i1_sup", &HRecord::i1_sup);
    fit_col("i2_sup", &HRecord::i2_sup);
    fit_col("h_node_gap_max", &HRecord::h_node_gap_max);
    fit_col("h_dom_l1_gap", &HRecord::h_dom_l1_gap);

    const HRecord& last = rep.rows.back();
    auto rel = [](double gap, double ref) { return ref > 0.0 ? gap / ref : gap; };
    rep.final_rel_lpw1p = rel(last.norm_gap_lpw1p, rep.lpw1p_ref);
    rep.final_rel_cl2 = rel(last.norm_gap_cl2, rep.cl2_ref);
    rep.final_rel_p = rel(last.energy_gap_p, rep.p_ref);
    rep.final_rel_f = rel(last.energy_gap_f, rep.f_ref);
    rep.families.convergence = rep.final_rel_lpw1p <= in.tol_rel && rep.final_rel_cl2 <= in.tol_rel &&
                               rep.final_rel_p <= in.tol_rel && rep.final_rel_f <= in.tol_rel;
    return rep;
}

} // namespace pdp
