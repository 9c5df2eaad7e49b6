#include "qneclab/diffeo.hpp"

#include "qneclab/error.hpp"
#include "qneclab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace qneclab {

Jet3 chain(const Jet3& o, const Jet3& i) {
    const double s1 = i.d1;
    return {o.value, o.d1 * s1, o.d2 * s1 * s1 + o.d1 * i.d2,
            o.d3 * s1 * s1 * s1 + 3.0 * o.d2 * s1 * i.d2 + o.d1 * i.d3};
}

Jet3 inverse_jet(const Jet3& r, double x) {
    const double inv = 1.0 / r.d1;
    const double inv3 = inv * inv * inv;
    return {x, inv, -r.d2 * inv3, (3.0 * r.d2 * r.d2 - r.d1 * r.d3) * inv3 * inv * inv};
}

double schwarzian(const Jet3& j) {
    const double q = j.d2 / j.d1;
    return j.d3 / j.d1 - 1.5 * q * q;
}

double log_derivative_ratio(const Jet3& j) { return j.d2 / j.d1; }

std::string to_string(DiffeoKind k) {
    switch (k) {
    case DiffeoKind::identity: return "identity";
    case DiffeoKind::affine: return "moebius";
    case DiffeoKind::flow: return "flow";
    case DiffeoKind::composition: return "composition";
    case DiffeoKind::inverse: return "inverse";
    case DiffeoKind::function: return "function";
    }
    return "unknown";
}

namespace {

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

class IdentityNode final : public detail::DiffeoNode {
public:
    explicit IdentityNode(Picture p) {
        picture = p;
        hull = Support::none();
    }
    Jet3 jet(double u) const override { return Jet3::identity(u); }
    double value(double u) const override { return u; }
    Diffeomorphism inverse(const Diffeomorphism& self) const override { return self; }
    DiffeoKind kind() const override { return DiffeoKind::identity; }
    std::string describe() const override { return "identity"; }
};

class AffineNode final : public detail::DiffeoNode {
public:
    AffineNode(double m, double q, Picture p) : m_(m), q_(q) {
        picture = p;
        hull = Support::none();
    }
    Jet3 jet(double u) const override { return {m_ * u + q_, m_, 0.0, 0.0}; }
    double value(double u) const override { return m_ * u + q_; }
    Diffeomorphism inverse(const Diffeomorphism&) const override {
        return Diffeomorphism::affine(1.0 / m_, -q_ / m_, picture);
    }
    DiffeoKind kind() const override { return DiffeoKind::affine; }
    std::string describe() const override {
        std::ostringstream os;
        os << "moebius(" << m_ << "*u+" << q_ << ")";
        return os.str();
    }

private:
    double m_, q_;
};

class FunctionNode final : public detail::DiffeoNode {
public:
    FunctionNode(std::function<Jet3(double)> f, Support h, std::string name, Picture p,
                 std::vector<double> bp)
        : f_(std::move(f)), name_(std::move(name)) {
        picture = p;
        hull = h;
        breakpoints = std::move(bp);
    }
    Jet3 jet(double u) const override { return f_(u); }
    DiffeoKind kind() const override { return DiffeoKind::function; }
    std::string describe() const override { return name_; }

private:
    std::function<Jet3(double)> f_;
    std::string name_;
};

class CompositionNode final : public detail::DiffeoNode {
public:
    CompositionNode(Diffeomorphism outer, Diffeomorphism inner)
        : outer_(std::move(outer)), inner_(std::move(inner)) {
        picture = inner_.picture();
        const Support ho = outer_.hull();
        const Support hi = inner_.hull();
        if (ho.full || hi.full) {
            hull = Support::everywhere();
        } else {
            hull = hi;
            std::vector<double> pulled;
            if (!ho.empty || !outer_.breakpoints().empty()) {
                const Diffeomorphism inv = inner_.inverse();
                if (!ho.empty) hull = qneclab::hull(hull, Support::interval(inv(ho.lo), inv(ho.hi)));
                for (double b : outer_.breakpoints()) pulled.push_back(inv(b));
            }
            breakpoints = merged(inner_.breakpoints(), pulled);
        }
    }
    Jet3 jet(double u) const override {
        const Jet3 in = inner_.jet(u);
        return chain(outer_.jet(in.value), in);
    }
    double value(double u) const override { return outer_(inner_(u)); }
    Diffeomorphism inverse(const Diffeomorphism&) const override {
        return compose(inner_.inverse(), outer_.inverse());
    }
    DiffeoKind kind() const override { return DiffeoKind::composition; }
    std::string describe() const override {
        return "(" + outer_.describe() + ") o (" + inner_.describe() + ")";
    }

private:
    Diffeomorphism outer_, inner_;
};

class NumericInverseNode final : public detail::DiffeoNode {
public:
    NumericInverseNode(Diffeomorphism rho, double lo, double hi)
        : rho_(std::move(rho)), lo_(lo), hi_(hi) {
        picture = rho_.picture();
        const Support h = rho_.hull();
        if (h.empty || h.full) {
            hull = h;
        } else {
            hull = Support::interval(rho_(h.lo), rho_(h.hi));
        }
        for (double b : rho_.breakpoints()) breakpoints.push_back(rho_(b));
    }

    Jet3 jet(double y) const override {
        const double x = preimage(y);
        return inverse_jet(rho_.jet(x), x);
    }
    double value(double y) const override { return preimage(y); }
    Diffeomorphism inverse(const Diffeomorphism&) const override { return rho_; }
    DiffeoKind kind() const override { return DiffeoKind::inverse; }
    std::string describe() const override { return "inverse(" + rho_.describe() + ")"; }

private:
    double preimage(double y) const {
        auto value = [this](double x) { return rho_(x); };
        auto [lo, hi] = expand_bracket(value, y, lo_, hi_);
        return solve_increasing(
            [this](double x) {
                const Jet3 j = rho_.jet(x);
                return std::pair{j.value, j.d1};
            },
            y, lo, hi);
    }

    Diffeomorphism rho_;
    double lo_, hi_;
};

} // namespace

namespace detail {

Diffeomorphism DiffeoNode::inverse(const Diffeomorphism& self) const {
    double lo = -1.0, hi = 1.0;
    if (!hull.empty && !hull.full) {
        lo = hull.lo - 1.0;
        hi = hull.hi + 1.0;
    }
    return Diffeomorphism(std::make_shared<NumericInverseNode>(self, lo, hi));
}

} // namespace detail

Diffeomorphism::Diffeomorphism(std::shared_ptr<const detail::DiffeoNode> node)
    : node_(std::move(node)) {
    if (!node_) throw DomainError("Diffeomorphism: null node");
}

Jet3 Diffeomorphism::jet(double u) const {
    const Jet3 j = node_->jet(u);
    if (!std::isfinite(j.value) || !std::isfinite(j.d1) || !std::isfinite(j.d2) ||
        !std::isfinite(j.d3) || !(j.d1 > 0.0)) {
        std::ostringstream os;
        os << "jet failure for " << describe() << " at u=" << u << " (value=" << j.value
           << ", d1=" << j.d1 << ")";
        throw NumericalError(os.str());
    }
    return j;
}

double Diffeomorphism::operator()(double u) const {
    const double v = node_->value(u);
    if (!std::isfinite(v)) throw NumericalError("non-finite value for " + describe());
    return v;
}

bool Diffeomorphism::is_moebius() const {
    return kind() == DiffeoKind::identity || kind() == DiffeoKind::affine;
}

Diffeomorphism Diffeomorphism::inverse() const { return node_->inverse(*this); }

Diffeomorphism Diffeomorphism::identity(Picture p) {
    return Diffeomorphism(std::make_shared<IdentityNode>(p));
}

Diffeomorphism Diffeomorphism::affine(double slope, double offset, Picture p) {
    if (!std::isfinite(slope) || !std::isfinite(offset) || !(slope > 0.0)) {
        throw DomainError("affine map needs a finite positive slope");
    }
    if (p == Picture::circle && slope != 1.0) {
        throw DomainError("affine circle lift must be a rotation (slope 1)");
    }
    if (slope == 1.0 && offset == 0.0) return identity(p);
    return Diffeomorphism(std::make_shared<AffineNode>(slope, offset, p));
}

Diffeomorphism Diffeomorphism::from_jets(std::function<Jet3(double)> jet, Support hull,
                                         std::string name, Picture p,
                                         std::vector<double> breakpoints) {
    return Diffeomorphism(std::make_shared<FunctionNode>(std::move(jet), hull, std::move(name), p,
                                                         std::move(breakpoints)));
}

Diffeomorphism compose(const Diffeomorphism& outer, const Diffeomorphism& inner) {
    if (outer.picture() != inner.picture()) throw DomainError("compose: picture mismatch");
    if (outer.kind() == DiffeoKind::identity) return inner;
    if (inner.kind() == DiffeoKind::identity) return outer;
    return Diffeomorphism(std::make_shared<CompositionNode>(outer, inner));
}

Diffeomorphism invert(const Diffeomorphism& rho, double lo, double hi) {
    if (!(lo < hi)) throw DomainError("invert: need lo < hi");
    if (rho.kind() != DiffeoKind::function) return rho.inverse();

    constexpr int grid = 256;
    double prev = rho(lo);
    for (int i = 1; i <= grid; ++i) {
        const double u = lo + (hi - lo) * i / grid;
        const double v = rho(u);
        if (!(v > prev)) {
            std::ostringstream os;
            os << "invert: " << rho.describe() << " is not strictly increasing near u=" << u;
            throw DomainError(os.str());
        }
        prev = v;
    }
    return Diffeomorphism(std::make_shared<NumericInverseNode>(rho, lo, hi));
}

Diffeomorphism moebius_fixing(double a, double b, double pa, double pb) {
    if (pa == pb) throw DomainError("moebius_fixing: degenerate points pa == pb");
    const double slope = (b - a) / (pb - pa);
    if (!(slope > 0.0) || !std::isfinite(slope)) {
        throw DomainError("moebius_fixing: orientation-reversing or degenerate data");
    }
    return Diffeomorphism::affine(slope, a - slope * pa);
}

double schwarzian(const Diffeomorphism& rho, double u) { return schwarzian(rho.jet(u)); }

double log_derivative_ratio(const Diffeomorphism& rho, double u) {
    return log_derivative_ratio(rho.jet(u));
}

AffineEnds affine_ends(const Diffeomorphism& rho) {
    const Support h = rho.hull();
    AffineEnds e;
    double left = -1.0, right = 1.0;
    if (h.full) {
        left = -1e6;
        right = 1e6;
        e.bounded_hull = false;
    } else if (!h.empty) {
        left = h.lo - 1.0;
        right = h.hi + 1.0;
    }
    const Jet3 jl = rho.jet(left);
    const Jet3 jr = rho.jet(right);
    e.left_slope = jl.d1;
    e.left_offset = jl.value - jl.d1 * left;
    e.right_slope = jr.d1;
    e.right_offset = jr.value - jr.d1 * right;
    return e;
}

bool is_affine_at_infinity(const Diffeomorphism& rho, double tol) {
    if (rho.picture() != Picture::line) return false;
    const AffineEnds e = affine_ends(rho);
    if (!e.bounded_hull) {
        // only the limit rho(u) - u -> 0, rho'(u) -> 1 can be probed
        return std::abs(e.left_slope - 1.0) < 1e-4 && std::abs(e.right_slope - 1.0) < 1e-4 &&
               std::abs(rho(-1e6) + 1e6) < 1e-3 && std::abs(rho(1e6) - 1e6) < 1e-3;
    }
    const double scale = 1.0 + std::abs(e.left_offset);
    return std::abs(e.left_slope - e.right_slope) <= tol &&
           std::abs(e.left_offset - e.right_offset) <= tol * scale;
}

} // namespace qneclab
