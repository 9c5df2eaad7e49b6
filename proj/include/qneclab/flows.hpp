#pragma once

// One-parameter flows Exp(t f) of vector fields, with jets carried along by
// the variational equations.

#include "qneclab/diffeo.hpp"
#include "qneclab/fields.hpp"

namespace qneclab {

struct FlowConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    /// Largest time step; 0 selects 0.05 * (support width).
    double max_step = 0.0;

    void validate() const;
};

/// Exp(t f). Point and jet queries integrate the flow ODE from the query
/// point (adaptive embedded Runge-Kutta 5(4)); points where the whole field
/// jet vanishes are returned unchanged with the identity jet. The inverse is
/// Exp(-t f).
Diffeomorphism exponentiate(const VectorField& field, double t, const FlowConfig& cfg = {});

/// (rho_t(u), rho_t'(u), rho_t''(u), rho_t'''(u)).
Jet3 flow_jet(const VectorField& field, double t, double u, const FlowConfig& cfg = {});

/// rho_t(u) from the scalar ODE only.
double flow_point(const VectorField& field, double t, double u, const FlowConfig& cfg = {});

/// Exp(-t f).
Diffeomorphism inverse_flow(const VectorField& field, double t, const FlowConfig& cfg = {});

/// rho_t(u) = F_u^{-1}(t) with F_u(s) = int_u^s dv / f(v), found by marching
/// cells along the trajectory and solving inside the bracketing cell. Throws
/// DomainError when f(u) = 0 and t != 0.
double closed_form_flow(const VectorField& field, double t, double u);

} // namespace qneclab
