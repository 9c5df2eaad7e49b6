#pragma once

// Bott cocycle, Virasoro central term and the Schwarzian anomaly, all in the
// angle picture: a circle map is its lift phi with phi(theta + 2 pi) =
// phi(theta) + 2 pi, and log rho'(z) = log phi'(theta) + i (phi(theta) - theta).

#include "qneclab/diffeo.hpp"
#include "qneclab/fields.hpp"
#include "qneclab/quadrature.hpp"

namespace qneclab {

struct CocycleValue {
    double value = 0.0;
    double quad_err = 0.0;
};

/// B(rho1, rho2) = -(1/48 pi) Re int log (rho1 rho2)'(z) d log rho2'(z).
/// With Phi = phi1 o phi2 this is
///   -(1/48 pi) int_0^{2 pi} [log Phi' phi2''/phi2' - (Phi - theta)(phi2' - 1)] dtheta.
CocycleValue bott_cocycle(const Diffeomorphism& rho1, const Diffeomorphism& rho2,
                          const QuadOptions& quad = {});

struct CoboundaryRecord {
    double b12 = 0.0;      // B(g1, g2)
    double b12_3 = 0.0;    // B(g1 g2, g3)
    double b1_23 = 0.0;    // B(g1, g2 g3)
    double b23 = 0.0;      // B(g2, g3)
    /// Group coboundary b23 - b12_3 + b1_23 - b12; vanishes for a 2-cocycle.
    double residual = 0.0;
    /// b12 - b12_3 + b1_23 - b23, which equals 2 (b12 - b23) whenever the
    /// cocycle identity holds. Kept for comparison.
    double swapped_combination = 0.0;
    double quad_err = 0.0;
};

CoboundaryRecord coboundary_check(const Diffeomorphism& g1, const Diffeomorphism& g2,
                                  const Diffeomorphism& g3, const QuadOptions& quad = {});

/// -(1/48 pi) int (f g''' - f''' g) dz with c factored out; for angle
/// components F, G this is -(1/48 pi) int [F (G''' + G') - G (F''' + F')] dtheta.
CocycleValue central_term_omega(const VectorField& f, const VectorField& g,
                                const QuadOptions& quad = {});

/// -(1/24 pi) int g(z) S rho(z) dz with c factored out, i.e.
/// -(1/24 pi) int G [S phi + (phi'^2 - 1)/2] dtheta.
CocycleValue anomaly_beta(const Diffeomorphism& rho, const VectorField& g,
                          const QuadOptions& quad = {});

/// Samples phi - theta on `nodes` points of [0, 2 pi] and throws
/// NumericalError if adjacent values jump by more than pi or the lift is not
/// of degree one.
void check_lift_branch(const Diffeomorphism& rho, int nodes = 1024);

} // namespace qneclab
