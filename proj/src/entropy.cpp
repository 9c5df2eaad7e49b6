#include "qneclab/entropy.hpp"

#include "qneclab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qneclab {

using std::numbers::pi;

std::string to_string(Direction d) {
    return d == Direction::state_vs_vacuum ? "state_vs_vacuum" : "vacuum_vs_state";
}

Direction parse_direction(std::string_view s) {
    if (s == "state_vs_vacuum") return Direction::state_vs_vacuum;
    if (s == "vacuum_vs_state") return Direction::vacuum_vs_state;
    throw DomainError("unknown direction '" + std::string(s) + "'");
}

Interval Interval::half_line(double t) {
    if (!std::isfinite(t)) throw DomainError("half line cut must be finite");
    return {Kind::half_line, t, 0.0};
}

Interval Interval::bounded(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw DomainError("bounded interval needs finite a < b");
    }
    return {Kind::bounded, a, b};
}

double dilation_density(double a, double b, double u) {
    if (!(a < b)) throw DomainError("dilation_density: need a < b");
    return (b - u) * (u - a) / (b - a);
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void check_charge(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("central charge must be positive and finite");
}

void require_line(const Diffeomorphism& rho, const char* op) {
    if (rho.picture() != Picture::line) {
        throw DomainError(std::string(op) + ": expected a map of the line");
    }
}

// One affine map on both sides of the hull, up to an overall affine factor.
void require_affine_at_infinity(const Diffeomorphism& rho, const char* op) {
    const Support h = rho.hull();
    if (h.empty) return;
    const AffineEnds e = affine_ends(rho);
    const bool same = e.bounded_hull
                          ? std::abs(e.left_slope - e.right_slope) <= 1e-9 * e.left_slope &&
                                std::abs(e.left_offset - e.right_offset) <=
                                    1e-9 * (1.0 + std::abs(e.left_offset))
                          : is_affine_at_infinity(rho);
    if (!same) {
        std::ostringstream os;
        os << op << ": " << rho.describe() << " is not affine at infinity (left slope "
           << e.left_slope << ", right slope " << e.right_slope << ")";
        throw DomainError(os.str());
    }
}

// Integral over [lo, hi] of g(u, jet of m at u), restricted to where m is not
// affine. Endpoints may be infinite when the hull is unbounded.
template <class G>
Estimate integrate_over_hull(const Diffeomorphism& m, double lo, double hi, G g,
                             const QuadOptions& quad) {
    const Support h = m.hull();
    if (h.empty || !(lo < hi)) return {};
    if (!h.full) {
        lo = std::max(lo, h.lo);
        hi = std::min(hi, h.hi);
        if (!(lo < hi)) return {};
    }
    const QuadResult r = integrate([&](double u) { return g(u, m.jet(u)); }, lo, hi,
                                   m.breakpoints(), quad);
    return {r.value, r.abs_err};
}

double ratio_sq(const Jet3& j) {
    const double q = log_derivative_ratio(j);
    return q * q;
}

} // namespace

EntropyReport entropy_half_line(const Diffeomorphism& rho, double t, double c, Direction direction,
                                const QuadOptions& quad) {
    check_charge(c);
    require_line(rho, "entropy_half_line");
    require_affine_at_infinity(rho, "entropy_half_line");
    EntropyReport rep;
    rep.direction = direction;
    rep.interval = Interval::half_line(t);
    rep.central_charge = c;
    if (rho.is_moebius()) return rep;

    Estimate e;
    if (direction == Direction::state_vs_vacuum) {
        const Diffeomorphism eta = rho.inverse();
        e = integrate_over_hull(
            eta, t, inf, [t](double u, const Jet3& j) { return (u - t) * ratio_sq(j); }, quad);
    } else {
        const double x = rho.inverse()(t);
        e = integrate_over_hull(
            rho, x, inf, [x](double u, const Jet3& j) { return (u - x) * ratio_sq(j); }, quad);
    }
    rep.value = c / 24.0 * e.value;
    rep.quad_err = c / 24.0 * e.quad_err;
    return rep;
}

EntropyDerivatives entropy_half_line_derivatives(const Diffeomorphism& rho, double t, double c,
                                                 Direction direction, const QuadOptions& quad) {
    check_charge(c);
    require_line(rho, "entropy_half_line_derivatives");
    if (!std::isfinite(t)) throw DomainError("entropy_half_line_derivatives: non-finite cut");
    EntropyDerivatives d;
    if (rho.is_moebius()) return d;

    auto sq = [](double, const Jet3& j) { return ratio_sq(j); };
    if (direction == Direction::state_vs_vacuum) {
        const Diffeomorphism eta = rho.inverse();
        const Estimate tail = integrate_over_hull(eta, t, inf, sq, quad);
        d.first = -c / 24.0 * tail.value;
        d.second = c / 24.0 * ratio_sq(eta.jet(t));
        d.quad_err = c / 24.0 * tail.quad_err;
    } else {
        const double x = rho.inverse()(t);
        const Jet3 j = rho.jet(x);
        const double q = log_derivative_ratio(j);
        const Estimate tail = integrate_over_hull(rho, x, inf, sq, quad);
        d.first = -c / 24.0 * tail.value / j.d1;
        d.second = c / 24.0 * q * (q + tail.value) / (j.d1 * j.d1);
        d.quad_err = c / 24.0 * tail.quad_err * (1.0 + std::abs(q)) / std::min(j.d1, j.d1 * j.d1);
    }
    return d;
}

EntropyDerivatives entropy_exchanged_derivative_formula(const Diffeomorphism& rho, double t,
                                                        double c, const QuadOptions& quad) {
    check_charge(c);
    require_line(rho, "entropy_exchanged_derivative_formula");
    if (!std::isfinite(t)) throw DomainError("entropy_exchanged_derivative_formula: non-finite point");
    EntropyDerivatives d;
    if (rho.is_moebius()) return d;
    const double q = log_derivative_ratio(rho.jet(t));
    const Estimate tail = integrate_over_hull(
        rho, t, inf, [](double, const Jet3& j) { return ratio_sq(j); }, quad);
    d.first = -c / 24.0 * tail.value;
    d.second = c / 24.0 * q * (q + tail.value);
    d.quad_err = c / 24.0 * tail.quad_err * (1.0 + std::abs(q));
    return d;
}

EntropyReport entropy_interval(const Diffeomorphism& rho, double a, double b, double c,
                               Direction direction, const QuadOptions& quad) {
    check_charge(c);
    require_line(rho, "entropy_interval");
    EntropyReport rep;
    rep.interval = Interval::bounded(a, b);
    rep.direction = direction;
    rep.central_charge = c;
    require_affine_at_infinity(rho, "entropy_interval");
    if (rho.is_moebius()) return rep;

    const Diffeomorphism eta = rho.inverse();
    const double ea = eta(a);
    const double eb = eta(b);
    const double log_stretch = std::log(((eb - ea) / (b - a)) * ((eb - ea) / (b - a)));

    if (direction == Direction::vacuum_vs_state) {
        const Estimate s = integrate_over_hull(
            rho, ea, eb,
            [ea, eb](double u, const Jet3& j) { return dilation_density(ea, eb, u) * schwarzian(j); },
            quad);
        const double ends = std::log(rho.jet(ea).d1) + std::log(rho.jet(eb).d1);
        rep.value = -c / 12.0 * s.value + c / 12.0 * ends + c / 12.0 * log_stretch;
        rep.quad_err = c / 12.0 * s.quad_err;
    } else {
        const Estimate s = integrate_over_hull(
            eta, a, b,
            [a, b](double u, const Jet3& j) { return dilation_density(a, b, u) * schwarzian(j); },
            quad);
        const double ends = std::log(eta.jet(a).d1) + std::log(eta.jet(b).d1);
        rep.value = -c / 12.0 * s.value + c / 12.0 * ends - c / 12.0 * log_stretch;
        rep.quad_err = c / 12.0 * s.quad_err;
    }
    return rep;
}

FixedEndpointForms entropy_interval_fixed_endpoint_forms(const Diffeomorphism& rho, double a,
                                                         double b, double c,
                                                         const QuadOptions& quad) {
    check_charge(c);
    require_line(rho, "entropy_interval_fixed_endpoint_forms");
    if (!(a < b)) throw DomainError("entropy_interval_fixed_endpoint_forms: need a < b");
    const double ra = rho(a), rb = rho(b);
    if (std::abs(ra - a) > 1e-10 * (1.0 + std::abs(a)) || std::abs(rb - b) > 1e-10 * (1.0 + std::abs(b))) {
        std::ostringstream os;
        os << "entropy_interval_fixed_endpoint_forms: map does not fix the endpoints (rho(a)-a="
           << ra - a << ", rho(b)-b=" << rb - b << ")";
        throw DomainError(os.str());
    }
    FixedEndpointForms out;
    if (rho.is_moebius()) return out;

    const Estimate sq = integrate_over_hull(
        rho, a, b, [a, b](double u, const Jet3& j) { return dilation_density(a, b, u) * ratio_sq(j); },
        quad);
    const Estimate logs = integrate_over_hull(
        rho, a, b, [](double, const Jet3& j) { return std::log(j.d1); }, quad);
    const Estimate sch = integrate_over_hull(
        rho, a, b,
        [a, b](double u, const Jet3& j) { return dilation_density(a, b, u) * schwarzian(j); }, quad);
    const double ends = std::log(rho.jet(a).d1) + std::log(rho.jet(b).d1);

    out.jensen = logs.value / (b - a);
    out.form1 = c / 24.0 * sq.value + c / 6.0 * out.jensen;
    out.form2 = -c / 12.0 * sch.value + c / 12.0 * ends;
    out.quad_err = c / 24.0 * sq.quad_err + c / 6.0 / (b - a) * logs.quad_err + c / 12.0 * sch.quad_err;
    return out;
}

Estimate vacuum_energy(const Diffeomorphism& rho, double c, Direction direction,
                       const QuadOptions& quad) {
    check_charge(c);
    require_line(rho, "vacuum_energy");
    require_affine_at_infinity(rho, "vacuum_energy");
    if (rho.is_moebius()) return {};
    const Diffeomorphism m = direction == Direction::vacuum_vs_state ? rho : rho.inverse();
    const Estimate e = integrate_over_hull(
        m, -inf, inf, [](double, const Jet3& j) { return ratio_sq(j); }, quad);
    if (!std::isfinite(e.value)) throw QuadratureError("vacuum_energy: divergent integral");
    const double k = c / (48.0 * pi);
    return {k * e.value, k * e.quad_err};
}

namespace {

BekensteinRecord bekenstein_record(const Diffeomorphism& rho, double r, double c,
                                   Direction direction, const Estimate& e, const QuadOptions& quad) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("bekenstein_check: r must be positive");
    BekensteinRecord rec;
    rec.r = r;
    const EntropyReport s = entropy_interval(rho, -r, r, c, direction, quad);
    rec.entropy = s.value;
    rec.energy = e.value;
    rec.bound = pi * r * e.value;
    rec.margin = rec.bound - rec.entropy;
    rec.quad_err = s.quad_err + pi * r * e.quad_err;
    rec.pass = rec.margin >= -rec.quad_err;
    return rec;
}

} // namespace

BekensteinRecord bekenstein_check(const Diffeomorphism& rho, double r, double c,
                                  Direction direction, const QuadOptions& quad) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("bekenstein_check: r must be positive");
    return bekenstein_record(rho, r, c, direction, vacuum_energy(rho, c, direction, quad), quad);
}

std::vector<BekensteinRecord> bekenstein_sweep(const Diffeomorphism& rho,
                                               const std::vector<double>& radii, double c,
                                               Direction direction, const QuadOptions& quad) {
    const Estimate e = vacuum_energy(rho, c, direction, quad);
    std::vector<BekensteinRecord> out;
    out.reserve(radii.size());
    for (double r : radii) out.push_back(bekenstein_record(rho, r, c, direction, e, quad));
    return out;
}

Estimate qnec_energy_density(const Diffeomorphism& rho, double t, double t2, double c,
                             const QuadOptions& quad) {
    check_charge(c);
    require_line(rho, "qnec_energy_density");
    if (!(t < t2)) throw DomainError("qnec_energy_density: need t < t'");
    if (rho.is_moebius()) return {};
    const Diffeomorphism eta = rho.inverse();
    const Estimate e = integrate_over_hull(
        eta, t, t2, [](double, const Jet3& j) { return ratio_sq(j); }, quad);
    const double k = c / (24.0 * pi);
    return {k * e.value, k * e.quad_err};
}

} // namespace qneclab
