#include "qneclab/cocycles.hpp"

#include "qneclab/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qneclab {

using std::numbers::pi;

namespace {

void require_circle(const Diffeomorphism& rho, const char* op) {
    if (rho.picture() != Picture::circle) throw DomainError(std::string(op) + ": expected a circle map");
}

void require_circle(const VectorField& f, const char* op) {
    if (f.picture() != Picture::circle) throw DomainError(std::string(op) + ": expected a circle field");
}

CocycleValue over_circle(const Integrand& g, double prefactor, const QuadOptions& quad) {
    const QuadResult r = integrate(g, 0.0, 2.0 * pi, {}, quad);
    return {prefactor * r.value, std::abs(prefactor) * r.abs_err};
}

} // namespace

void check_lift_branch(const Diffeomorphism& rho, int nodes) {
    require_circle(rho, "check_lift_branch");
    const double first = rho(0.0);
    double prev = first;
    for (int i = 1; i <= nodes; ++i) {
        const double th = 2.0 * pi * i / nodes;
        const double cur = rho(th) - th;
        if (std::abs(cur - prev) > pi) {
            std::ostringstream os;
            os << "branch tracking failed for " << rho.describe() << " near theta=" << th;
            throw NumericalError(os.str());
        }
        prev = cur;
    }
    if (std::abs(prev - first) > 1e-8) {
        throw NumericalError("lift of " + rho.describe() + " is not of degree one");
    }
}

CocycleValue bott_cocycle(const Diffeomorphism& rho1, const Diffeomorphism& rho2,
                          const QuadOptions& quad) {
    require_circle(rho1, "bott_cocycle");
    require_circle(rho2, "bott_cocycle");
    if (rho1.kind() == DiffeoKind::identity || rho2.kind() == DiffeoKind::identity) return {};
    const Diffeomorphism big = compose(rho1, rho2);
    check_lift_branch(big, 256);
    check_lift_branch(rho2, 256);
    auto g = [&](double th) {
        const Jet3 j2 = rho2.jet(th);
        const Jet3 j = chain(rho1.jet(j2.value), j2);
        return std::log(j.d1) * j2.d2 / j2.d1 - (j.value - th) * (j2.d1 - 1.0);
    };
    return over_circle(g, -1.0 / (48.0 * pi), quad);
}

CoboundaryRecord coboundary_check(const Diffeomorphism& g1, const Diffeomorphism& g2,
                                  const Diffeomorphism& g3, const QuadOptions& quad) {
    CoboundaryRecord rec;
    const CocycleValue a = bott_cocycle(g1, g2, quad);
    const CocycleValue b = bott_cocycle(compose(g1, g2), g3, quad);
    const CocycleValue c = bott_cocycle(g1, compose(g2, g3), quad);
    const CocycleValue d = bott_cocycle(g2, g3, quad);
    rec.b12 = a.value;
    rec.b12_3 = b.value;
    rec.b1_23 = c.value;
    rec.b23 = d.value;
    rec.residual = d.value - b.value + c.value - a.value;
    rec.swapped_combination = a.value - b.value + c.value - d.value;
    rec.quad_err = a.quad_err + b.quad_err + c.quad_err + d.quad_err;
    return rec;
}

CocycleValue central_term_omega(const VectorField& f, const VectorField& g, const QuadOptions& quad) {
    require_circle(f, "central_term_omega");
    require_circle(g, "central_term_omega");
    if (f.is_zero() || g.is_zero()) return {};
    auto h = [&](double th) {
        const FieldJet a = f.jet(th);
        const FieldJet b = g.jet(th);
        return a.f * (b.d3 + b.d1) - b.f * (a.d3 + a.d1);
    };
    return over_circle(h, -1.0 / (48.0 * pi), quad);
}

CocycleValue anomaly_beta(const Diffeomorphism& rho, const VectorField& g, const QuadOptions& quad) {
    require_circle(rho, "anomaly_beta");
    require_circle(g, "anomaly_beta");
    if (rho.is_moebius() || g.is_zero()) return {};
    auto h = [&](double th) {
        const Jet3 j = rho.jet(th);
        return g(th) * (schwarzian(j) + 0.5 * (j.d1 * j.d1 - 1.0));
    };
    return over_circle(h, -1.0 / (24.0 * pi), quad);
}

} // namespace qneclab
