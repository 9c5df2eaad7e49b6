#pragma once

// Orientation-preserving diffeomorphisms of the line (or degree-one lifts of
// circle maps) queried through third-order jets.

#include "qneclab/fields.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qneclab {

/// (rho(u), rho'(u), rho''(u), rho'''(u)). d1 > 0 for every jet handed out by
/// Diffeomorphism::jet.
struct Jet3 {
    double value = 0.0;
    double d1 = 1.0;
    double d2 = 0.0;
    double d3 = 0.0;

    static Jet3 identity(double u) { return {u, 1.0, 0.0, 0.0}; }
};

/// Jet of outer o inner at u, given inner's jet at u and outer's jet at
/// inner(u).
Jet3 chain(const Jet3& outer_at_inner, const Jet3& inner);

/// Jet of rho^{-1} at y = rho(x), given rho's jet at x.
Jet3 inverse_jet(const Jet3& rho_at_x, double x);

/// rho'''/rho' - (3/2)(rho''/rho')^2.
double schwarzian(const Jet3& j);

/// rho''/rho'.
double log_derivative_ratio(const Jet3& j);

enum class DiffeoKind { identity, affine, flow, composition, inverse, function };

std::string to_string(DiffeoKind k);

/// Generator data for maps of the form Exp(time * field).
struct FlowTag {
    VectorField field;
    double time;
};

class Diffeomorphism;

namespace detail {

class DiffeoNode {
public:
    virtual ~DiffeoNode() = default;
    virtual Jet3 jet(double u) const = 0;
    virtual double value(double u) const { return jet(u).value; }
    /// `self` wraps this node. The default is the generic numeric inverse.
    virtual Diffeomorphism inverse(const Diffeomorphism& self) const;
    virtual DiffeoKind kind() const = 0;
    virtual std::string describe() const = 0;
    virtual std::optional<FlowTag> flow_tag() const { return std::nullopt; }

    Picture picture = Picture::line;
    /// The map is affine (one affine piece on each side) outside this set.
    Support hull;
    /// Points where jets are only one-sided; quadratures split there.
    std::vector<double> breakpoints;
};

} // namespace detail

/// Immutable handle. Queries are pure and may run concurrently; nothing is
/// cached, every jet is recomputed.
class Diffeomorphism {
public:
    explicit Diffeomorphism(std::shared_ptr<const detail::DiffeoNode> node);

    /// Throws NumericalError if the jet is non-finite or not orientation
    /// preserving.
    Jet3 jet(double u) const;
    double operator()(double u) const;

    Picture picture() const { return node_->picture; }
    DiffeoKind kind() const { return node_->kind(); }
    bool is_moebius() const;
    Support hull() const { return node_->hull; }
    const std::vector<double>& breakpoints() const { return node_->breakpoints; }
    std::optional<FlowTag> flow_tag() const { return node_->flow_tag(); }
    std::string describe() const { return node_->describe(); }

    /// Structural where the inverse is known in closed form (flows, affine
    /// maps, compositions); otherwise a per-query Newton/bisection inverse.
    Diffeomorphism inverse() const;

    static Diffeomorphism identity(Picture p = Picture::line);
    /// u -> slope * u + offset (slope > 0). On the circle only rotations
    /// (slope 1) are degree-one lifts.
    static Diffeomorphism affine(double slope, double offset, Picture p = Picture::line);
    /// Wraps an analytic map. It must be affine outside `hull`.
    static Diffeomorphism from_jets(std::function<Jet3(double)> jet, Support hull,
                                    std::string name, Picture p = Picture::line,
                                    std::vector<double> breakpoints = {});

    const detail::DiffeoNode& node() const { return *node_; }

private:
    std::shared_ptr<const detail::DiffeoNode> node_;
};

/// outer o inner, jets through the order-3 chain rule.
Diffeomorphism compose(const Diffeomorphism& outer, const Diffeomorphism& inner);

/// Inverse map. Flow-tagged maps return Exp(-t f) exactly; maps without a
/// closed-form inverse are first checked for strict monotonicity on a grid
/// over [lo, hi], then inverted per query with [lo, hi] as the initial bracket.
Diffeomorphism invert(const Diffeomorphism& rho, double lo, double hi);

/// Affine alpha with alpha(pa) = a and alpha(pb) = b.
Diffeomorphism moebius_fixing(double a, double b, double pa, double pb);

double schwarzian(const Diffeomorphism& rho, double u);
double log_derivative_ratio(const Diffeomorphism& rho, double u);

/// Affine behaviour outside the hull: the left and right affine pieces
/// (slope, offset), read off jets one unit beyond each end of the hull.
struct AffineEnds {
    double left_slope = 1.0, left_offset = 0.0;
    double right_slope = 1.0, right_offset = 0.0;
    bool bounded_hull = true;
};

AffineEnds affine_ends(const Diffeomorphism& rho);

/// True when rho agrees with a single affine map on both sides of its hull
/// (to `tol`), i.e. rho is in B(infinity) up to a Moebius factor. Unbounded
/// hulls are probed at |u| = 1e6.
bool is_affine_at_infinity(const Diffeomorphism& rho, double tol = 1e-9);

} // namespace qneclab
