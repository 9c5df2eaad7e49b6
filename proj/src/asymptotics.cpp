#include "qneclab/asymptotics.hpp"

#include "qneclab/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace qneclab {

namespace {

void require_positive(double r, const char* op) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError(std::string(op) + ": r must be positive");
}

MapFragment identity_fragment(double lo, double hi, std::string name) {
    return {lo, hi, std::move(name), [](double u) { return Jet3::identity(u); }};
}

} // namespace

MapFragment h_seq(double r, int n) {
    require_positive(r, "h_seq");
    if (n < 1) throw DomainError("h_seq: n must be at least 1");
    const double hi = 1.0 / n;
    if (r == 1.0) return identity_fragment(0.0, hi, "h_n(identity)");
    const double k = n * std::log(r);
    return {0.0, hi, "h_n", [k](double u) {
                const double e = std::exp(k * u);
                return Jet3{std::expm1(k * u) / k, e, k * e, k * k * e};
            }};
}

Estimate h_seq_integral(double r, int n, const QuadOptions& quad) {
    const MapFragment h = h_seq(r, n);
    const QuadResult q = integrate(
        [&h](double u) {
            const double x = log_derivative_ratio(h.jet(u));
            return u * x * x;
        },
        h.lo, h.hi, {}, quad);
    return {q.value, q.abs_err};
}

MapFragment sigma_seq(double r, int n, SigmaExponent e) {
    require_positive(r, "sigma_seq");
    if (n < 2) throw DomainError("sigma_seq: n must be at least 2");
    if (!(n > r)) throw DomainError("sigma_seq: need n > r");
    const double ln = std::log(static_cast<double>(n));
    const double p = std::log(n / r) / ln;
    double q = p;
    if (e == SigmaExponent::mixed) {
        if (r == 1.0) throw DomainError("sigma_seq: the mixed exponent is undefined for r = 1");
        q = std::log(n / r) / std::log(r);
    }
    const double inv_n = 1.0 / n;
    const double shift = std::pow(inv_n, q);
    return {0.0, 1.0 - inv_n, "sigma_n", [p, inv_n, shift](double u) {
                const double x = u + inv_n;
                const double d1 = std::pow(x, p - 1.0);
                return Jet3{(std::pow(x, p) - shift) / p, d1, (p - 1.0) * d1 / x,
                            (p - 1.0) * (p - 2.0) * d1 / (x * x)};
            }};
}

MapFragment zeta_seq(double r, int n) {
    require_positive(r, "zeta_seq");
    if (n < 1) throw DomainError("zeta_seq: n must be at least 1");
    const double L = std::log(r);
    const double inv_n = 1.0 / n;
    // 1 + n s rounds to a few ulps instead of 0 at s = -1/n, and x^{1/n} is
    // far from 0 there, so that residue is snapped away.
    auto base = [n](double s) {
        const double x = 1.0 + n * s;
        return x <= 8.0 * std::numeric_limits<double>::epsilon() ? 0.0 : x;
    };
    auto slope = [L, n, base](double s) { return std::exp(L * std::pow(base(s), 1.0 / n)); };
    return {-inv_n, 0.0, "zeta_n", [L, n, inv_n, slope, base](double u) {
                const double x = base(u);
                const double d1 = slope(u);
                double value = -inv_n;
                if (u > -inv_n) value += integrate_singular(slope, -inv_n, u).value;
                const double q = L * std::pow(x, 1.0 / n - 1.0);
                const double dq = L * (1.0 - n) * std::pow(x, 1.0 / n - 2.0);
                return Jet3{value, d1, d1 * q, d1 * (q * q + dq)};
            }};
}

NuLimitRecord nu_limit_integrals(double r0, double r3, int n, const QuadOptions& quad) {
    require_positive(r0, "nu_limit_integrals");
    require_positive(r3, "nu_limit_integrals");
    if (n < 2) throw DomainError("nu_limit_integrals: n must be at least 2");
    NuLimitRecord rec;
    rec.n = n;
    const double l0 = std::log(r0), l3 = std::log(r3);
    const double inv_n = 1.0 / n;
    const double lo = -inv_n, hi = 3.0 + inv_n;
    const double width = hi - lo;
    // D(u) (1 + n u)^{-2(1 - 1/n)} = n^{alpha-1} (u - lo)^alpha (hi - u) / width
    // with alpha = -1 + 2/n, and symmetrically at the right end.
    const double alpha = -1.0 + 2.0 * inv_n;
    const double scale = std::pow(static_cast<double>(n), alpha - 1.0);
    if (l0 != 0.0) {
        const QuadResult q = integrate_algebraic_weight(
            [&](double u) { return scale * (hi - u) / width; }, lo, 0.0, alpha, 0.0, quad);
        rec.i_n += l0 * l0 * q.value;
        rec.quad_err += l0 * l0 * q.abs_err;
    }
    if (l3 != 0.0) {
        const QuadResult q = integrate_algebraic_weight(
            [&](double u) { return scale * (u - lo) / width; }, 3.0, hi, 0.0, alpha, quad);
        rec.i_n += l3 * l3 * q.value;
        rec.quad_err += l3 * l3 * q.abs_err;
    }
    if (l0 != 0.0 || l3 != 0.0) {
        const QuadResult left = integrate_singular(
            [n](double u) { return std::pow(std::max(0.0, 1.0 + n * u), 1.0 / n); }, lo, 0.0, quad);
        const QuadResult right = integrate_singular(
            [n](double u) { return std::pow(std::max(0.0, 1.0 + n * (3.0 - u)), 1.0 / n); }, 3.0,
            hi, quad);
        rec.j_n = l0 * left.value + l3 * right.value;
        rec.quad_err += std::abs(l0) * left.abs_err + std::abs(l3) * right.abs_err;
    }
    return rec;
}

namespace {

// Quintic smoothstep and its derivatives on [0, 1].
std::array<double, 4> smoothstep(double x) {
    if (x <= 0.0) return {0.0, 0.0, 0.0, 0.0};
    if (x >= 1.0) return {1.0, 0.0, 0.0, 0.0};
    const double y = 1.0 - x;
    return {x * x * x * (10.0 - 15.0 * x + 6.0 * x * x), 30.0 * x * x * y * y,
            60.0 * x * y * (1.0 - 2.0 * x), 60.0 * (1.0 - 6.0 * x + 6.0 * x * x)};
}

// left + s (right - left) with s the smoothstep over [c0, c0 + w].
Jet3 blend(const Jet3& l, const Jet3& r, double u, double c0, double w) {
    auto s = smoothstep((u - c0) / w);
    s[1] /= w;
    s[2] /= w * w;
    s[3] /= w * w * w;
    const Jet3 d{r.value - l.value, r.d1 - l.d1, r.d2 - l.d2, r.d3 - l.d3};
    return {l.value + s[0] * d.value, l.d1 + s[1] * d.value + s[0] * d.d1,
            l.d2 + s[2] * d.value + 2.0 * s[1] * d.d1 + s[0] * d.d2,
            l.d3 + s[3] * d.value + 3.0 * s[2] * d.d1 + 3.0 * s[1] * d.d2 + s[0] * d.d3};
}

struct GluedPieces {
    double a, b, an, bn;
    MapFragment ha, hb;
    Diffeomorphism gamma;
    double m1, m2, c1;   // middle piece: c1 + m1 (gamma(a + m2 (u - an)) - a)

    Jet3 left(double u) const {
        const Jet3 h = ha.jet(u - a);
        return {a + h.value, h.d1, h.d2, h.d3};
    }
    Jet3 right(double u) const {
        const Jet3 h = hb.jet(b - u);
        return {b - h.value, h.d1, -h.d2, h.d3};
    }
    Jet3 middle(double u) const {
        const Jet3 g = gamma.jet(a + m2 * (u - an));
        return {c1 + m1 * (g.value - a), m1 * m2 * g.d1, m1 * m2 * m2 * g.d2,
                m1 * m2 * m2 * m2 * g.d3};
    }
};

GluedPieces glue(const Diffeomorphism& rho, double a, double b, int n) {
    if (rho.picture() != Picture::line) throw DomainError("glued_sequence_map: expected a line map");
    if (!(a < b)) throw DomainError("glued_sequence_map: need a < b");
    if (n < 1 || 2.0 / n >= b - a) throw DomainError("glued_sequence_map: n too small for (a, b)");
    const double ra = rho(a), rb = rho(b);
    const Diffeomorphism alpha = moebius_fixing(a, b, ra, rb);
    const Diffeomorphism gamma = compose(alpha, rho);
    const double slope_a = gamma.jet(a).d1, slope_b = gamma.jet(b).d1;
    GluedPieces g{a, b, a + 1.0 / n, b - 1.0 / n, h_seq(slope_a, n), h_seq(slope_b, n), gamma,
                  1.0, 1.0, 0.0};
    const double lo = g.left(g.an).value, hi = g.right(g.bn).value;
    if (!(hi > lo)) {
        std::ostringstream os;
        os << "glued_sequence_map: non-monotone gluing at n=" << n << " (h1(a_n)=" << lo
           << ", h2(b_n)=" << hi << ")";
        throw DomainError(os.str());
    }
    g.m1 = (hi - lo) / (b - a);
    g.m2 = (b - a) / (g.bn - g.an);
    g.c1 = lo;
    return g;
}

} // namespace

Diffeomorphism glued_sequence_map(const Diffeomorphism& rho, double a, double b, int n, double blend_w) {
    const GluedPieces g = glue(rho, a, b, n);
    if (!(blend_w >= 0.0) || blend_w >= 1.0 / n) {
        throw DomainError("glued_sequence_map: blend window must lie in [0, 1/n)");
    }
    std::ostringstream name;
    name << "glued_" << n << "(" << rho.describe() << ")";
    const double w = blend_w;
    auto jet = [g, w](double u) {
        if (u <= g.a || u >= g.b) return Jet3::identity(u);
        if (w > 0.0) {
            const double l0 = g.an - 0.5 * w, r0 = g.bn - 0.5 * w;
            if (u > l0 && u < l0 + w) return blend(g.left(u), g.middle(u), u, l0, w);
            if (u > r0 && u < r0 + w) return blend(g.middle(u), g.right(u), u, r0, w);
        }
        if (u < g.an) return g.left(u);
        if (u > g.bn) return g.right(u);
        return g.middle(u);
    };
    std::vector<double> bps{a, g.an, g.bn, b};
    if (w > 0.0) {
        bps = {a, g.an - 0.5 * w, g.an + 0.5 * w, g.bn - 0.5 * w, g.bn + 0.5 * w, b};
    }
    return Diffeomorphism::from_jets(jet, Support::interval(a, b), name.str(), Picture::line, bps);
}

LimitTrace schwarzian_limit_check(const Diffeomorphism& rho, double a, double b,
                                  const std::vector<int>& ns, bool with_blend,
                                  const QuadOptions& quad) {
    if (!(a < b)) throw DomainError("schwarzian_limit_check: need a < b");
    LimitTrace tr;
    auto weighted = [&](const Diffeomorphism& m) {
        const QuadResult q = integrate(
            [&](double u) { return dilation_density(a, b, u) * schwarzian(m.jet(u)); }, a, b,
            m.breakpoints(), quad);
        tr.quad_err = std::max(tr.quad_err, q.abs_err);
        return q.value;
    };
    const Diffeomorphism alpha = moebius_fixing(a, b, rho(a), rho(b));
    const Diffeomorphism gamma = compose(alpha, rho);
    tr.r_a = gamma.jet(a).d1;
    tr.r_b = gamma.jet(b).d1;
    const double la = std::log(tr.r_a), lb = std::log(tr.r_b);
    const QuadResult base = integrate(
        [&](double u) { return dilation_density(a, b, u) * schwarzian(rho.jet(u)); }, a, b,
        rho.breakpoints(), quad);
    tr.limit = -(la * la + lb * lb) / 4.0 + base.value;
    tr.quad_err = base.abs_err;
    for (int n : ns) {
        tr.n.push_back(n);
        tr.piecewise.push_back(weighted(glued_sequence_map(rho, a, b, n)));
        if (with_blend) tr.blended.push_back(weighted(glued_sequence_map(rho, a, b, n, 0.1 / n)));
    }
    return tr;
}

double extensivity_delta(const VectorField& f1, const VectorField& f2, double u, const FlowConfig& cfg) {
    const VectorField f = combine(f1, f2, 1.0, 1.0);
    const double x = inverse_flow(f, 1.0, cfg)(u);
    const double x1 = inverse_flow(f1, 1.0, cfg)(u);
    const double x2 = inverse_flow(f2, 1.0, cfg)(u);
    return f.jet(x).d1 - f1.jet(x1).d1 - f2.jet(x2).d1;
}

ExtensivityReport extensivity_report(const VectorField& f1_in, const VectorField& f2_in, double t,
                                     double c, const QuadOptions& quad, const FlowConfig& cfg) {
    if (f1_in.picture() != Picture::line || f2_in.picture() != Picture::line) {
        throw DomainError("extensivity_report: expected line fields");
    }
    if (!std::isfinite(t)) throw DomainError("extensivity_report: non-finite t");
    VectorField f1 = f1_in, f2 = f2_in;
    if (f1.is_zero() || (!f2.is_zero() && f2.support().hi < f1.support().hi)) std::swap(f1, f2);

    ExtensivityReport rep;
    rep.t = t;
    auto entropy_of = [&](const VectorField& f) {
        if (f.is_zero()) return EntropyReport{};
        return entropy_half_line(exponentiate(f, 1.0, cfg), t, c, Direction::state_vs_vacuum, quad);
    };
    const EntropyReport s = entropy_of(combine(f1, f2, 1.0, 1.0));
    const EntropyReport s1 = entropy_of(f1);
    const EntropyReport s2 = entropy_of(f2);
    rep.s_exact = s.value - s1.value - s2.value;
    rep.quad_err = s.quad_err + s1.quad_err + s2.quad_err;

    if (!f1.is_zero() && !f2.is_zero()) {
        const Support h = hull(f1.support(), f2.support());
        const double b1 = f1.support().hi;
        const double norms = sup_norm_second_derivative(f1) + sup_norm_second_derivative(f2);
        const double gap = std::max(0.0, b1 - t);
        const double width = h.hi - h.lo;
        rep.eps0 = c / 24.0 * norms * norms * width * width * gap * gap / 2.0;
    }
    const double v1 = std::max(0.0, s1.value), v2 = std::max(0.0, s2.value);
    rep.eps1 = c / 12.0 * std::sqrt(v1 * rep.eps0);
    rep.eps2 = c / 12.0 * std::sqrt(v2 * rep.eps0);
    rep.eps3 = 2.0 * std::sqrt(v1 * v2);
    rep.bound = rep.eps0 + rep.eps1 + rep.eps2 + rep.eps3;
    rep.satisfied = std::abs(rep.s_exact) <= rep.bound + rep.quad_err + quad.abs_tol;
    return rep;
}

} // namespace qneclab
