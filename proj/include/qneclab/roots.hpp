#pragma once

#include <functional>
#include <utility>

namespace qneclab {

/// Value and derivative of an increasing function at a point.
using ValueAndSlope = std::function<std::pair<double, double>(double)>;

struct RootOptions {
    double x_tol = 1e-14;   // relative to max(1, |x|)
    int max_iter = 200;
};

/// Solves g(x) = target for an increasing g on the bracket [lo, hi] with
/// g(lo) <= target <= g(hi). Newton steps are taken from the current best
/// point; any step leaving the bracket, or failing to halve the residual, is
/// replaced by bisection. The bracket shrinks on every evaluation.
double solve_increasing(const ValueAndSlope& g, double target, double lo, double hi,
                        const RootOptions& opts = {});

/// Grows [lo, hi] geometrically around its midpoint until it brackets
/// `target` for an increasing g. Throws NumericalError after `max_doublings`.
std::pair<double, double> expand_bracket(const std::function<double(double)>& g, double target,
                                         double lo, double hi, int max_doublings = 80);

} // namespace qneclab
