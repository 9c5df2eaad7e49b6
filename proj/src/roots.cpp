#include "qneclab/roots.hpp"

#include "qneclab/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qneclab {

double solve_increasing(const ValueAndSlope& g, double target, double lo, double hi,
                        const RootOptions& opts) {
    if (!(lo <= hi)) throw DomainError("solve_increasing: empty bracket");
    auto [glo, slo] = g(lo);
    if (glo - target >= 0.0) return lo;
    auto [ghi, shi] = g(hi);
    if (ghi - target <= 0.0) return hi;

    // start from the secant point, which is exact for affine g
    double x = lo + (hi - lo) * (target - glo) / (ghi - glo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    double last_residual = std::abs(ghi - glo);

    for (int it = 0; it < opts.max_iter; ++it) {
        auto [gx, sx] = g(x);
        const double r = gx - target;
        if (!std::isfinite(r)) throw NumericalError("solve_increasing: non-finite residual");
        if (r == 0.0) return x;
        if (r < 0.0) lo = x; else hi = x;

        const double scale = std::max(1.0, std::abs(x));
        if (hi - lo <= opts.x_tol * scale) return 0.5 * (lo + hi);

        double next = 0.5 * (lo + hi);
        const bool have_slope = sx > 0.0 && std::isfinite(sx);
        const double newton = have_slope ? x - r / sx : next;
        const bool newton_ok = have_slope && newton > lo && newton < hi &&
                               std::abs(r) <= 0.5 * last_residual;
        if (newton_ok) {
            if (std::abs(newton - x) <= 0.25 * opts.x_tol * scale) return newton;
            next = newton;
        }
        last_residual = std::abs(r);
        x = next;
    }
    return 0.5 * (lo + hi);
}

std::pair<double, double> expand_bracket(const std::function<double(double)>& g, double target,
                                         double lo, double hi, int max_doublings) {
    if (!(lo < hi)) throw DomainError("expand_bracket: need lo < hi");
    double width = hi - lo;
    for (int i = 0; i < max_doublings; ++i) {
        const bool low_ok = g(lo) <= target;
        const bool high_ok = g(hi) >= target;
        if (low_ok && high_ok) return {lo, hi};
        if (!low_ok) lo -= width;
        if (!high_ok) hi += width;
        width *= 2.0;
    }
    throw NumericalError("expand_bracket: target " + std::to_string(target) + " not bracketed");
}

} // namespace qneclab
