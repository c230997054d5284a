#include "pdp/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pdp {
namespace {

GridField restrict_if_needed(const GridField& w, const Cylinder& q) {
    if (w.domain() == q) return w;
    return restrict_to(w, q);
}

} // namespace

double integrand_H(double a_value, double p, double q, double xi_norm) {
    if (xi_norm == 0.0) return 0.0;
    return std::pow(xi_norm, p) + a_value * std::pow(xi_norm, q);
}

double integrand_H(const Weight& a, const ExponentSet& exps,
                   std::span<const double> x, double t, double xi_norm) {
    if (!(xi_norm >= 0.0)) throw std::invalid_argument("integrand_H: xi_norm must be >= 0");
    return integrand_H(a(x, t), exps.p, exps.q, xi_norm);
}

EnergyBreakdown energy_P(const GridField& w, const Weight& a, const ExponentSet& exps, const Cylinder& q) {
    exps.validate();
    const GridField wr = restrict_if_needed(w, q);
    const GridField gn = gradient_norm(gradient(wr));

    const std::vector<double> ws = spatial_quadrature_weights(wr);
    const std::vector<double> wt = trapezoid_weights(wr.nt(), wr.dt());
    std::vector<double> x(wr.dim());

    EnergyBreakdown eb;
    for (int k = 0; k < wr.nt(); ++k) {
        const double t = wr.time(k);
        double slice_p = 0.0, slice_q = 0.0, slice_l2 = 0.0;
        for (std::size_t sp = 0; sp < wr.spatial_size(); ++sp) {
            const double g = gn.value(sp, k);
            wr.point_at(sp, x);
            slice_p += ws[sp] * std::pow(g, exps.p);
            slice_q += ws[sp] * a(x, t) * std::pow(g, exps.q);
            const double v = wr.value(sp, k);
            slice_l2 += ws[sp] * v * v;
        }
        eb.p_part += wt[k] * slice_p;
        eb.q_part += wt[k] * slice_q;
        eb.l2_sup = std::max(eb.l2_sup, slice_l2);
    }
    eb.total_P = eb.p_part + eb.q_part;
    eb.total_F = eb.l2_sup + eb.total_P;
    return eb;
}

EnergyBreakdown energy_F(const GridField& w, const Weight& a, const ExponentSet& exps, const Cylinder& q) {
    return energy_P(w, a, exps, q);
}

double norm_Lp_W1p(const GridField& w, double p, const Cylinder& q) {
    if (!(p >= 1.0)) throw std::invalid_argument("norm_Lp_W1p: p must be >= 1");
    const GridField wr = restrict_if_needed(w, q);
    const GridField gn = gradient_norm(gradient(wr));

    const std::vector<double> ws = spatial_quadrature_weights(wr);
    const std::vector<double> wt = trapezoid_weights(wr.nt(), wr.dt());
    double acc = 0.0;
    for (int k = 0; k < wr.nt(); ++k) {
        double slice = 0.0;
        for (std::size_t sp = 0; sp < wr.spatial_size(); ++sp)
            slice += ws[sp] * (std::pow(std::abs(wr.value(sp, k)), p) + std::pow(gn.value(sp, k), p));
        acc += wt[k] * slice;
    }
    return std::pow(acc, 1.0 / p);
}

double norm_C_L2(const GridField& w, const Cylinder& q) {
    const GridField wr = restrict_if_needed(w, q);
    const std::vector<double> ws = spatial_quadrature_weights(wr);
    double sup = 0.0;
    for (int k = 0; k < wr.nt(); ++k) {
        double slice = 0.0;
        for (std::size_t sp = 0; sp < wr.spatial_size(); ++sp)
            slice += ws[sp] * wr.value(sp, k) * wr.value(sp, k);
        sup = std::max(sup, slice);
    }
    return std::sqrt(sup);
}

} // namespace pdp
