#pragma once

#include "pdp/exponents.hpp"

#include <optional>
#include <string>

namespace pdp {

enum class Regime { General, Bounded, SIntegrable };

std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

/// Outcome of a gap-bound check. `bound` is the admissible supremum for q
/// in the chosen regime, `margin` = bound - q (non-strict: margin >= 0
/// means satisfied, including the boundary case). `blowup` is the mollifier
/// blow-up exponent e of the regime: the best exponent over the proof
/// routes the regime admits, so that e >= 0 iff the gap condition holds.
struct GapVerdict {
    Regime regime = Regime::General;
    double bound = 0.0;
    double margin = 0.0;
    bool satisfied = false;
    std::string active_branch;  ///< which term of the max attains the bound
    bool tie = false;           ///< both branches equal; branch set to the non-general one
    double blowup = 0.0;
    std::optional<double> crossover_s;  ///< p n / (n - p + 2), reported when n + 2 > p (regime iii)
};

GapVerdict gap_general(const ExponentSet& exps);
GapVerdict gap_bounded(const ExponentSet& exps);
GapVerdict gap_s(const ExponentSet& exps);
GapVerdict check_gap(Regime regime, const ExponentSet& exps);

/// Blow-up exponent of the (star)-chain prefactor h^e for the regime:
///   general      e = alpha - (n+2)(q-p)/p
///   bounded      e = max of the general route and alpha - (q-p)
///   s-integrable e = max of the general route and alpha - (n+s)(q-p)/s
/// Computed as positively-scaled margins so the sign agrees exactly with
/// the corresponding gap verdict.
double blowup_exponent(Regime regime, const ExponentSet& exps);

} // namespace pdp
