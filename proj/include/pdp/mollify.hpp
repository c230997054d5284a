#pragma once

#include "pdp/bump_kernel.hpp"
#include "pdp/cylinder.hpp"
#include "pdp/grid_field.hpp"

#include <cstddef>
#include <vector>

namespace pdp {

/// Radial evaluates the paper's kernel k_n(|x|) k_1(t) on the lattice
/// stencil exactly. BoxProfile swaps the radial spatial factor for a
/// tensor product of 1-D profiles (per-axis passes); faster, different
/// kernel, off by default.
enum class MollifyMode { Radial, BoxProfile };

/// Discrete kernel weights on the lattice stencil, renormalized to unit
/// mass so constants are reproduced exactly. Weights are identical for
/// every output node (the stencil never leaves the source grid).
struct MollifyStencil {
    double h = 0.0;
    int rx = 0;               ///< spatial index radius, floor(h / dx)
    int rt = 0;               ///< temporal index radius, floor(h^2 / dt)
    std::vector<double> ws;   ///< spatial weights over [-rx, rx]^n, sum 1
    std::vector<double> wt;   ///< temporal weights over [-rt, rt], sum 1
};

/// Build the renormalized stencil for grid spacings (dx, dt). The
/// normalization constants c_m cancel in the renormalization, so only the
/// raw profile enters. Requires rx >= 2 and rt >= 2 (h resolvable).
MollifyStencil build_stencil(double h, int dim, double dx, double dt,
                             MollifyMode mode = MollifyMode::Radial);

/// Space-time mollification [f]^h on the sub-lattice of Q.
///
/// Evaluates the convolution as a temporal pass with the k_1 weights
/// followed by one spatial pass with the radial k_n weights; for the
/// product kernel this equals the direct stencil sum term for term.
/// Requires Q + Q_h(0) inside f's domain and h resolvable by the grid.
GridField mollify(const GridField& f, const MollifierKernel& kernel, double h,
                  const Cylinder& q, MollifyMode mode = MollifyMode::Radial);

/// Max over interior nodes of |D([w]^h) - [Dw]^h| (all components).
double mollify_gradient_commute_check(const GridField& w, const MollifierKernel& kernel,
                                      double h, const Cylinder& q);

} // namespace pdp
