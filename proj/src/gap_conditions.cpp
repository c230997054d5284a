#include "pdp/gap_conditions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdp {
namespace {

const char* kBranchGeneral = "p*alpha/(n+2)";
const char* kBranchAlpha = "alpha";
const char* kBranchS = "s*alpha/(n+s)";

double branch_general(const ExponentSet& e) { return e.p * e.alpha / (e.n + 2); }

double branch_s(const ExponentSet& e) {
    if (e.s_is_infinite()) return e.alpha;
    return *e.s * e.alpha / (e.n + *e.s);
}

/// margin of one branch, (p + branch) - q; its sign decides that route.
double route_margin(const ExponentSet& e, double branch) { return (e.p + branch) - e.q; }

/// scale factor turning a route margin into the blow-up exponent:
///   alpha - (n+2)(q-p)/p = ((n+2)/p) * ((p + p alpha/(n+2)) - q), etc.
double route_scale_general(const ExponentSet& e) { return (e.n + 2) / e.p; }

double route_scale_s(const ExponentSet& e) {
    if (e.s_is_infinite()) return 1.0;
    return (e.n + *e.s) / *e.s;
}

} // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::General: return "general";
        case Regime::Bounded: return "bounded";
        case Regime::SIntegrable: return "s-integrable";
    }
    return "general";
}

Regime regime_from_string(const std::string& s) {
    if (s == "general") return Regime::General;
    if (s == "bounded") return Regime::Bounded;
    if (s == "s-integrable" || s == "s") return Regime::SIntegrable;
    throw std::invalid_argument("unknown regime '" + s + "' (general | bounded | s-integrable)");
}

GapVerdict gap_general(const ExponentSet& exps) {
    exps.validate();
    GapVerdict v;
    v.regime = Regime::General;
    const double b = branch_general(exps);
    v.bound = exps.p + b;
    v.margin = route_margin(exps, b);
    v.satisfied = v.margin >= 0.0;
    v.active_branch = kBranchGeneral;
    v.blowup = route_scale_general(exps) * v.margin;
    return v;
}

GapVerdict gap_bounded(const ExponentSet& exps) {
    exps.validate();
    GapVerdict v;
    v.regime = Regime::Bounded;
    const double bg = branch_general(exps);
    const double ba = exps.alpha;
    v.tie = bg == ba;
    // ties go to the alpha branch
    if (bg > ba) {
        v.bound = exps.p + bg;
        v.active_branch = kBranchGeneral;
    } else {
        v.bound = exps.p + ba;
        v.active_branch = kBranchAlpha;
    }
    v.margin = std::max(route_margin(exps, bg), route_margin(exps, ba));
    v.satisfied = v.margin >= 0.0;
    v.blowup = blowup_exponent(Regime::Bounded, exps);
    return v;
}

GapVerdict gap_s(const ExponentSet& exps) {
    exps.validate();
    if (!exps.s) throw std::invalid_argument("gap_s: exponent set has no s");
    GapVerdict v;
    v.regime = Regime::SIntegrable;
    const double bg = branch_general(exps);
    const double bs = branch_s(exps);
    v.tie = bg == bs;
    if (bg > bs) {
        v.bound = exps.p + bg;
        v.active_branch = kBranchGeneral;
    } else {
        v.bound = exps.p + bs;
        v.active_branch = kBranchS;
    }
    v.margin = std::max(route_margin(exps, bg), route_margin(exps, bs));
    v.satisfied = v.margin >= 0.0;
    v.blowup = blowup_exponent(Regime::SIntegrable, exps);
    if (exps.n + 2 > exps.p)
        v.crossover_s = exps.p * exps.n / (exps.n - exps.p + 2);
    return v;
}

GapVerdict check_gap(Regime regime, const ExponentSet& exps) {
    switch (regime) {
        case Regime::General: return gap_general(exps);
        case Regime::Bounded: return gap_bounded(exps);
        case Regime::SIntegrable: return gap_s(exps);
    }
    throw std::logic_error("check_gap: bad regime");
}

double blowup_exponent(Regime regime, const ExponentSet& exps) {
    exps.validate();
    const double eg = route_scale_general(exps) * route_margin(exps, branch_general(exps));
    switch (regime) {
        case Regime::General:
            return eg;
        case Regime::Bounded:
            return std::max(eg, route_margin(exps, exps.alpha));
        case Regime::SIntegrable: {
            if (!exps.s) throw std::invalid_argument("blowup_exponent: exponent set has no s");
            return std::max(eg, route_scale_s(exps) * route_margin(exps, branch_s(exps)));
        }
    }
    throw std::logic_error("blowup_exponent: bad regime");
}

} // namespace pdp
