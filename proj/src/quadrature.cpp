#include "pdp/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace pdp {
namespace {

// K15 abscissae on [0,1] side (symmetric); even indices are the G7 points.
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct SegmentResult {
    double value;
    double error;
};

SegmentResult gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double k15 = 0.0, g7 = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double fsum = (i == 7) ? f(mid) : f(mid - dx) + f(mid + dx);
        k15 += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) g7 += kGaussWeights[i / 2] * fsum;
    }
    k15 *= half;
    g7 *= half;
    return {k15, std::abs(k15 - g7)};
}

double integrate_rec(const std::function<double(double)>& f, double a, double b,
                     double tol, int depth) {
    const SegmentResult r = gauss_kronrod(f, a, b);
    if (r.error <= tol) return r.value;
    if (depth <= 0) throw std::runtime_error("integrate_adaptive: max recursion depth reached");
    const double mid = 0.5 * (a + b);
    return integrate_rec(f, a, mid, tol / 2.0, depth - 1) +
           integrate_rec(f, mid, b, tol / 2.0, depth - 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate_adaptive: tolerance must be positive");
    return integrate_rec(f, a, b, abs_tol, max_depth);
}

} // namespace pdp
