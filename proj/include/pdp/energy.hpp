#pragma once

#include "pdp/cylinder.hpp"
#include "pdp/exponents.hpp"
#include "pdp/grid_field.hpp"
#include "pdp/weight.hpp"

#include <span>

namespace pdp {

/// Split of the double-phase energies:
///   total_P = p_part + q_part            (the functional P)
///   total_F = l2_sup + total_P           (the functional F)
struct EnergyBreakdown {
    double p_part = 0.0;   ///< integral of |Dw|^p
    double q_part = 0.0;   ///< integral of a |Dw|^q
    double l2_sup = 0.0;   ///< sup over time slices of the spatial L2 energy
    double total_P = 0.0;
    double total_F = 0.0;
};

/// H(z, xi) = |xi|^p + a(z) |xi|^q, xi given by its norm.
double integrand_H(double a_value, double p, double q, double xi_norm);
double integrand_H(const Weight& a, const ExponentSet& exps,
                   std::span<const double> x, double t, double xi_norm);

/// Energies of w over Q (w's grid restricted to Q's snapped sub-lattice,
/// discrete gradients, tensor trapezoid quadrature). Both functions fill
/// the whole breakdown; they differ only in which total the caller reads.
EnergyBreakdown energy_P(const GridField& w, const Weight& a, const ExponentSet& exps, const Cylinder& q);
EnergyBreakdown energy_F(const GridField& w, const Weight& a, const ExponentSet& exps, const Cylinder& q);

/// Bochner norm ( integral over I of || . ||_{W^{1,p}(B)}^p )^{1/p}.
double norm_Lp_W1p(const GridField& w, double p, const Cylinder& q);

/// sup over time slices of the spatial L2 norm.
double norm_C_L2(const GridField& w, const Cylinder& q);

} // namespace pdp
