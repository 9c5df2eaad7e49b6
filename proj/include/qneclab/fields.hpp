#pragma once

// Real vector fields f(u) d/du on the line and f(theta) d/dtheta on the
// circle, with analytic jets through third order.

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qneclab {

enum class Picture { line, circle };

enum class Smoothness { smooth, piecewise_c1 };

std::string to_string(Picture p);

/// Closed set outside which a field vanishes. Circle supports are arcs given
/// by angles in (-pi, pi]; `lo > hi` never occurs, arcs through theta = pi are
/// stored as the full circle.
struct Support {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;
    bool full = false;

    static Support none() { return {}; }
    static Support interval(double lo, double hi) { return {lo, hi, false, false}; }
    static Support everywhere() { return {0.0, 0.0, false, true}; }

    bool contains(double u) const { return full || (!empty && u >= lo && u <= hi); }
    double width(Picture p) const;
};

Support hull(const Support& a, const Support& b);

/// (f, f', f'', f''') at a point. `one_sided` marks a query exactly at an
/// exceptional point of a piecewise-C1 field, where f'' and f''' are the
/// limits from inside the support.
struct FieldJet {
    double f = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    bool one_sided = false;

    FieldJet& operator+=(const FieldJet& o);
    FieldJet scaled(double k) const;
};

namespace detail {
class FieldImpl;
}

/// Immutable handle; copies share the underlying definition.
class VectorField {
public:
    explicit VectorField(std::shared_ptr<const detail::FieldImpl> impl);

    Picture picture() const;
    Support support() const;
    Smoothness smoothness() const;
    const std::vector<double>& exceptional_points() const;
    std::string kind() const;

    /// Full third-order jet. Circle fields accept any real angle.
    FieldJet jet(double u) const;
    double operator()(double u) const { return jet(u).f; }

    bool is_zero() const { return support().empty; }

private:
    std::shared_ptr<const detail::FieldImpl> impl_;
};

/// amplitude * exp(1 - 1/(1 - x^2)), x = (u - center)/halfwidth, on the line.
VectorField make_bump(double center, double halfwidth, double amplitude);

/// cos^2(u) = 1/(1 + tan^2 u) on [-pi/2, pi/2], zero elsewhere. C1 at +-pi/2.
VectorField make_cos2();

/// sum_k cos[k] cos(k theta) + sin[k] sin(k theta) on the circle (k from 0;
/// sin[0] has no effect).
VectorField make_trigpoly(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

VectorField make_zero(Picture picture = Picture::line);

struct FieldTerm {
    double coefficient;
    VectorField field;
};

/// sum_i c_i f_i; all terms must share a picture. An empty list is the zero
/// field on `picture`.
VectorField make_sum(std::vector<FieldTerm> terms, Picture picture = Picture::line);

/// a * f1 + b * f2.
VectorField combine(const VectorField& f1, const VectorField& f2, double a, double b);

/// Pushforward of a line field through the Cayley map u -> e^{i theta},
/// theta = 2 atan(u). In the angle coordinate the result is
/// g(theta) = (1 + cos theta) f(tan(theta/2)), i.e. theta'(u) f(u).
VectorField cayley_pushforward(const VectorField& line_field);

/// Point on the circle (angle) that the Cayley map assigns to u.
double cayley_angle(double u);

struct JetQuery {
    std::array<double, 4> values{};
    int order = 0;
    /// true when order >= 2 was requested at an exceptional point.
    bool discontinuous = false;
};

/// (f(u), ..., f^(order)(u)); order in {0, 1, 2, 3}.
JetQuery eval_jet(const VectorField& field, double u, int order);

/// Partial sum of sum_n |fhat_n| (1 + |n|)^s over the n_modes-point DFT of a
/// circle field (the p = 1 Sobolev norm).
double sobolev_norm(const VectorField& circle_field, double s, int n_modes = 1024);

/// max |f''| over `samples` equally spaced points of the support.
double sup_norm_second_derivative(const VectorField& field, int samples = 10000);

namespace detail {

class FieldImpl {
public:
    virtual ~FieldImpl() = default;
    virtual FieldJet jet(double u) const = 0;
    virtual std::string kind() const = 0;

    Picture picture = Picture::line;
    Support support;
    Smoothness smoothness = Smoothness::smooth;
    std::vector<double> exceptional;
};

} // namespace detail
} // namespace qneclab
