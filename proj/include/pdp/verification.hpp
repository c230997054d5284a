#pragma once

#include "pdp/bump_kernel.hpp"
#include "pdp/cylinder.hpp"
#include "pdp/energy.hpp"
#include "pdp/exponents.hpp"
#include "pdp/gap_conditions.hpp"
#include "pdp/grid_field.hpp"
#include "pdp/mollify.hpp"
#include "pdp/weight.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace pdp {

/// Tolerance budget for inequality checks: trapezoid quadrature and the
/// finite-difference gradients are both second order, so every margin is
/// allowed to dip below zero by factor * (dx^2 + dt^2) times the local
/// scale of the quantities compared.
struct QuadBudget {
    double dx = 0.0;
    double dt = 0.0;
    double factor = 10.0;
    double rel() const { return factor * (dx * dx + dt * dt); }
    double eps(double scale) const { return rel() * std::max(scale, 0.0); }
};

/// Jensen check (star star): [|Dw|^p]^h - |D[w]^h|^p nodewise.
struct JensenCheck {
    double min_margin = 0.0;         ///< raw minimum over nodes
    double min_margin_scaled = 0.0;  ///< minimum of margin / local scale
    bool pass = false;
};

JensenCheck check_jensen_gradient(const GridField& w, const MollifierKernel& kernel,
                                  double h, const Cylinder& q, double p);

/// The (star) chain at xi = D[w]^h(z):
///  (a) H = (a - a_h)|xi|^q + H_h          exact algebraic identity
///  (b) a - a_h <= [a]_alpha h^alpha       coefficient bound
///  (c) H_h(z, xi) <= [H(.,Dw)]^h(z)       second Jensen application
struct StarChainCheck {
    double max_identity_rel = 0.0;
    double coeff_bound = 0.0;          ///< [a]_alpha h^alpha
    double min_coeff_margin = 0.0;     ///< min of coeff_bound - (a - a_h)
    double min_jensen2_scaled = 0.0;   ///< min scaled margin of (c)
    double star_margin_min = 0.0;      ///< min of [a]_a h^a |xi|^q + H_h - H
    bool condition_satisfied = false;
    bool pass_identity = false;
    bool pass_coeff = false;
    bool pass_jensen2 = false;
};

StarChainCheck check_star_chain(const GridField& w, const Weight& a, const ExponentSet& exps,
                                const MollifierKernel& kernel, double h, const Cylinder& q,
                                Regime regime);

/// Least-squares slope of log y against log h over the last `use_last`
/// points with y > 0. points == 0 means the fit is undefined.
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    int points = 0;
};

RateFit fit_loglog(std::span<const double> h, std::span<const double> y, int use_last = 4);

/// Blow-up study of sup |D[w]^h| along a decreasing h sequence.
struct BlowupCheck {
    std::vector<double> h_used;
    std::vector<double> grad_sup;
    RateFit fit;
    double required_slope = 0.0;
    double tolerance = 0.1;
    bool pass = false;
};

BlowupCheck gradient_blowup_rate(const GridField& w, Regime regime, const ExponentSet& exps,
                                 std::span<const double> h_values, const Cylinder& q,
                                 const MollifierKernel& kernel, double tolerance = 0.1);

/// Uniform-continuity modulus omega(delta) of t -> w(., t) in L2(B),
/// maximized over grid slices of Q and grid-aligned shifts |tau| <= delta.
struct ModulusTable {
    std::vector<double> deltas;
    std::vector<double> omega;
};

ModulusTable time_modulus(const GridField& w, const Cylinder& q, std::span<const double> deltas);

/// I1/I2 split of the C(I;L2) mollification error at one h:
/// I1 averages spatial translations, I2 temporal translations; their sum
/// dominates the gap by Minkowski's inequality on the discrete norms.
struct IDecomp {
    double i1_sup = 0.0;
    double i2_sup = 0.0;
    double cl2_gap = 0.0;
    double ac_tail = 0.0;  ///< sup_t of the |Dw|^2 time-window integral over B0
    bool triangle_holds = false;
};

IDecomp check_I_decomposition(const GridField& w, const MollifierKernel& kernel, double h,
                              const Cylinder& q, const Cylinder& q0);

/// One row of the convergence report (fixed CSV column order).
struct HRecord {
    double h = 0.0;
    double norm_gap_lpw1p = 0.0;
    double norm_gap_cl2 = 0.0;
    double energy_gap_p = 0.0;
    double energy_gap_f = 0.0;
    double l2_sup_gap = 0.0;
    double grad_sup = 0.0;
    double jensen_margin = 0.0;
    double star_margin = 0.0;
    double i1_sup = 0.0;
    double i2_sup = 0.0;
    double modulus_h2 = 0.0;
    double ac_tail = 0.0;
    double h_node_gap_max = 0.0;
    double h_dom_l1_gap = 0.0;
    double bound_ratio = 0.0;
    double prefactor_he = 0.0;
};

struct FamilyVerdicts {
    bool jensen = true;
    bool star_identity = true;
    bool coeff_bound = true;
    bool jensen2 = true;
    bool cl2_triangle = true;
    bool i2_modulus = true;
    bool convergence = true;

    bool all_numeric() const {
        return jensen && star_identity && coeff_bound && jensen2 && cl2_triangle &&
               i2_modulus && convergence;
    }
};

struct ConvergenceReport {
    std::vector<HRecord> rows;
    std::vector<double> unresolved_h;
    GapVerdict verdict;
    bool condition_satisfied = true;

    double p_ref = 0.0, f_ref = 0.0, lpw1p_ref = 0.0, cl2_ref = 0.0;
    double final_rel_lpw1p = 0.0, final_rel_cl2 = 0.0, final_rel_p = 0.0, final_rel_f = 0.0;
    double quad_budget_rel = 0.0;

    std::map<std::string, RateFit> fitted_rates;
    FamilyVerdicts families;
};

/// Everything run_convergence needs; the scenario layer assembles one.
struct ConvergenceInput {
    const GridField& w;
    const Weight& weight;
    const MollifierKernel& kernel;
    ExponentSet exps;
    Regime regime = Regime::General;
    Cylinder q;
    double h_shrink = 0.0;  ///< Q0 = Q + Q_{h_shrink}(0)
    std::vector<double> h_values;
    double tol_rel = 1e-3;
};

/// Mollifies at each resolvable h, fills every report column, fits rates
/// on the last points, and aggregates the invariant-family verdicts.
ConvergenceReport run_convergence(const ConvergenceInput& in);

} // namespace pdp
