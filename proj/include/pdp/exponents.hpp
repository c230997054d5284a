#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace pdp {

/// Growth exponents (n, p, q, alpha, s) of the double-phase integrand and
/// the gap-bound conditions. s is only meaningful for the s-integrable
/// regime; s = infinity is accepted and maps to the alpha-branch limit.
struct ExponentSet {
    int n = 2;
    double p = 2.0;
    double q = 2.5;
    double alpha = 1.0;
    std::optional<double> s;

    ExponentSet() = default;
    ExponentSet(int n_, double p_, double q_, double alpha_,
                std::optional<double> s_ = std::nullopt)
        : n(n_), p(p_), q(q_), alpha(alpha_), s(s_) {
        validate();
    }

    void validate() const {
        if (n < 1) throw std::invalid_argument("ExponentSet: n must be >= 1");
        if (!(p >= 2.0)) throw std::invalid_argument("ExponentSet: p must be >= 2, got " + std::to_string(p));
        if (!(q > p)) throw std::invalid_argument("ExponentSet: need q > p");
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw std::invalid_argument("ExponentSet: alpha must lie in (0, 1]");
        if (s && !(*s >= 2.0))
            throw std::invalid_argument("ExponentSet: s must be >= 2 when present");
    }

    bool s_is_infinite() const {
        return s && std::isinf(*s);
    }
};

} // namespace pdp
