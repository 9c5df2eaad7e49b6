#pragma once

// Thin RAII layer over the GSL QUADPACK routines. Every integrand exception is
// captured in the trampoline and rethrown after GSL returns.

#include <cstddef>
#include <functional>
#include <span>

namespace qneclab {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    std::size_t limit = 2000;
};

struct QuadResult {
    double value = 0.0;
    double abs_err = 0.0;
    /// false when GSL stopped on roundoff or subdivision limit; the value is
    /// still the best available estimate.
    bool converged = true;
};

using Integrand = std::function<double(double)>;

/// Adaptive 21-point Gauss-Kronrod over [a, b] with optional interior
/// breakpoints (QAGP). Breakpoints outside (a, b) are ignored. Infinite
/// endpoints are folded onto a finite range via u = tan(theta / 2).
QuadResult integrate(const Integrand& f, double a, double b,
                     std::span<const double> breakpoints = {},
                     const QuadOptions& opts = {});

/// Extrapolating adaptive rule (QAGS) for integrable endpoint singularities.
QuadResult integrate_singular(const Integrand& f, double a, double b,
                              const QuadOptions& opts = {});

/// Integral of f(u) (u - a)^alpha (b - u)^beta on [a, b] with alpha, beta > -1
/// (QAWS).
QuadResult integrate_algebraic_weight(const Integrand& f, double a, double b,
                                      double alpha, double beta,
                                      const QuadOptions& opts = {});

/// Composite trapezoid rule with `nodes` equal panels. Test oracles and the
/// periodic-integral cross checks use it; it never adapts.
double trapezoid(const Integrand& f, double a, double b, std::size_t nodes);

} // namespace qneclab
