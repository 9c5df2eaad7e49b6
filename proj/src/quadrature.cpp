#include "qneclab/quadrature.hpp"

#include "qneclab/error.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace qneclab {
namespace {

void disable_gsl_abort() {
    static std::once_flag flag;
    std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

struct QawsTableDeleter {
    void operator()(gsl_integration_qaws_table* t) const { gsl_integration_qaws_table_free(t); }
};

struct Trampoline {
    const Integrand* f;
    std::exception_ptr error;

    static double call(double x, void* self) {
        auto* t = static_cast<Trampoline*>(self);
        if (t->error) return 0.0;
        try {
            return (*t->f)(x);
        } catch (...) {
            t->error = std::current_exception();
            return 0.0;
        }
    }
};

Workspace make_workspace(std::size_t limit) {
    Workspace ws(gsl_integration_workspace_alloc(limit));
    if (!ws) throw QuadratureError("gsl workspace allocation failed");
    return ws;
}

QuadResult finish(int status, double value, double err, Trampoline& tr, const char* routine) {
    if (tr.error) std::rethrow_exception(tr.error);
    if (!std::isfinite(value)) {
        throw QuadratureError(std::string(routine) + ": non-finite integral (" +
                              gsl_strerror(status) + ")");
    }
    QuadResult r{value, err, status == GSL_SUCCESS};
    if (status != GSL_SUCCESS && status != GSL_EROUND && status != GSL_EMAXITER &&
        status != GSL_ESING && status != GSL_EDIVERGE) {
        throw QuadratureError(std::string(routine) + ": " + gsl_strerror(status));
    }
    return r;
}

// u = tan(theta/2), du = (1 + u^2)/2 dtheta
Integrand fold_infinite(const Integrand& f) {
    return [&f](double theta) {
        const double u = std::tan(0.5 * theta);
        if (!std::isfinite(u)) return 0.0;
        return f(u) * 0.5 * (1.0 + u * u);
    };
}

double unfold_angle(double u) { return 2.0 * std::atan(u); }

} // namespace

QuadResult integrate(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                     const QuadOptions& opts) {
    if (std::isnan(a) || std::isnan(b)) throw DomainError("integrate: NaN bound");
    if (a == b) return {};
    if (a > b) {
        auto r = integrate(f, b, a, breakpoints, opts);
        r.value = -r.value;
        return r;
    }
    if (std::isinf(a) || std::isinf(b)) {
        // Map everything onto the angle picture and integrate there.
        const Integrand folded = fold_infinite(f);
        std::vector<double> bp;
        bp.reserve(breakpoints.size());
        for (double x : breakpoints) bp.push_back(unfold_angle(x));
        const double ta = std::isinf(a) ? -M_PI : unfold_angle(a);
        const double tb = std::isinf(b) ? M_PI : unfold_angle(b);
        return integrate(folded, ta, tb, bp, opts);
    }

    disable_gsl_abort();
    std::vector<double> pts{a};
    for (double x : breakpoints) {
        if (x > a && x < b) pts.push_back(x);
    }
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    Trampoline tr{&f, nullptr};
    gsl_function gf{&Trampoline::call, &tr};
    auto ws = make_workspace(opts.limit);
    double value = 0.0;
    double err = 0.0;
    const int status = gsl_integration_qagp(&gf, pts.data(), pts.size(), opts.abs_tol, opts.rel_tol,
                                            opts.limit, ws.get(), &value, &err);
    return finish(status, value, err, tr, "qagp");
}

QuadResult integrate_singular(const Integrand& f, double a, double b, const QuadOptions& opts) {
    if (a == b) return {};
    disable_gsl_abort();
    Trampoline tr{&f, nullptr};
    gsl_function gf{&Trampoline::call, &tr};
    auto ws = make_workspace(opts.limit);
    double value = 0.0;
    double err = 0.0;
    const int status = gsl_integration_qags(&gf, a, b, opts.abs_tol, opts.rel_tol, opts.limit,
                                            ws.get(), &value, &err);
    return finish(status, value, err, tr, "qags");
}

QuadResult integrate_algebraic_weight(const Integrand& f, double a, double b, double alpha,
                                      double beta, const QuadOptions& opts) {
    if (!(alpha > -1.0) || !(beta > -1.0)) {
        throw DomainError("integrate_algebraic_weight: exponents must exceed -1");
    }
    if (!(a < b)) throw DomainError("integrate_algebraic_weight: need a < b");
    disable_gsl_abort();
    std::unique_ptr<gsl_integration_qaws_table, QawsTableDeleter> table(
        gsl_integration_qaws_table_alloc(alpha, beta, 0, 0));
    if (!table) throw QuadratureError("qaws table allocation failed");
    Trampoline tr{&f, nullptr};
    gsl_function gf{&Trampoline::call, &tr};
    auto ws = make_workspace(opts.limit);
    double value = 0.0;
    double err = 0.0;
    const int status = gsl_integration_qaws(&gf, a, b, table.get(), opts.abs_tol, opts.rel_tol,
                                            opts.limit, ws.get(), &value, &err);
    return finish(status, value, err, tr, "qaws");
}

double trapezoid(const Integrand& f, double a, double b, std::size_t nodes) {
    if (nodes < 1) throw DomainError("trapezoid: need at least one panel");
    const double h = (b - a) / static_cast<double>(nodes);
    double sum = 0.5 * (f(a) + f(b));
    for (std::size_t i = 1; i < nodes; ++i) sum += f(a + h * static_cast<double>(i));
    return sum * h;
}

} // namespace qneclab
