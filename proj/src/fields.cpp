#include "qneclab/fields.hpp"

#include "qneclab/error.hpp"
#include "qneclab/util.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <utility>

namespace qneclab {

using std::numbers::pi;

std::string to_string(Picture p) { return p == Picture::line ? "line" : "circle"; }

double Support::width(Picture p) const {
    if (empty) return 0.0;
    if (full) return p == Picture::circle ? 2.0 * pi : std::numeric_limits<double>::infinity();
    return hi - lo;
}

Support hull(const Support& a, const Support& b) {
    if (a.empty) return b;
    if (b.empty) return a;
    if (a.full || b.full) return Support::everywhere();
    return Support::interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

FieldJet& FieldJet::operator+=(const FieldJet& o) {
    f += o.f;
    d1 += o.d1;
    d2 += o.d2;
    d3 += o.d3;
    one_sided = one_sided || o.one_sided;
    return *this;
}

FieldJet FieldJet::scaled(double k) const { return {k * f, k * d1, k * d2, k * d3, one_sided}; }

VectorField::VectorField(std::shared_ptr<const detail::FieldImpl> impl) : impl_(std::move(impl)) {}

Picture VectorField::picture() const { return impl_->picture; }
Support VectorField::support() const { return impl_->support; }
Smoothness VectorField::smoothness() const { return impl_->smoothness; }
const std::vector<double>& VectorField::exceptional_points() const { return impl_->exceptional; }
std::string VectorField::kind() const { return impl_->kind(); }

FieldJet VectorField::jet(double u) const {
    if (!std::isfinite(u)) throw DomainError("field evaluated at non-finite point");
    return impl_->jet(u);
}

namespace {

void require_finite(std::initializer_list<double> xs, const char* what) {
    for (double x : xs) {
        if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite parameter");
    }
}

class Bump final : public detail::FieldImpl {
public:
    Bump(double c, double w, double a) : center_(c), width_(w), amp_(a) {
        picture = Picture::line;
        support = a == 0.0 ? Support::none() : Support::interval(c - w, c + w);
    }

    FieldJet jet(double u) const override {
        const double x = (u - center_) / width_;
        const double s = 1.0 - x * x;
        // exp(1 - 1/s) underflows long before 1/s reaches 700; every jet
        // entry is then below 1e-280.
        if (!(s > 0.0) || 1.0 / s > 700.0) return {};
        const double inv = 1.0 / s;
        const double b = amp_ * std::exp(1.0 - inv);
        const double g1 = -2.0 * x * inv * inv;
        const double g2 = -2.0 * (3.0 * x * x + 1.0) * inv * inv * inv;
        const double g3 = -24.0 * x * (x * x + 1.0) * inv * inv * inv * inv;
        const double k = 1.0 / width_;
        return {b, b * g1 * k, b * (g2 + g1 * g1) * k * k,
                b * (g3 + 3.0 * g1 * g2 + g1 * g1 * g1) * k * k * k, false};
    }

    std::string kind() const override { return "bump"; }

private:
    double center_, width_, amp_;
};

class Cos2 final : public detail::FieldImpl {
public:
    Cos2() {
        picture = Picture::line;
        support = Support::interval(-pi / 2, pi / 2);
        smoothness = Smoothness::piecewise_c1;
        exceptional = {-pi / 2, pi / 2};
    }

    FieldJet jet(double u) const override {
        if (std::abs(u) > pi / 2) return {};
        const double c2 = std::cos(2.0 * u);
        const double s2 = std::sin(2.0 * u);
        if (std::abs(u) == pi / 2) {
            // C1 gluing: value and slope vanish, higher orders one-sided.
            return {0.0, 0.0, -2.0 * c2, 4.0 * s2, true};
        }
        const double c = std::cos(u);
        return {c * c, -s2, -2.0 * c2, 4.0 * s2, false};
    }

    std::string kind() const override { return "cos2"; }
};

class TrigPoly final : public detail::FieldImpl {
public:
    TrigPoly(std::vector<double> a, std::vector<double> b) : a_(std::move(a)), b_(std::move(b)) {
        picture = Picture::circle;
        bool nonzero = false;
        for (double x : a_) nonzero = nonzero || x != 0.0;
        for (std::size_t k = 1; k < b_.size(); ++k) nonzero = nonzero || b_[k] != 0.0;
        support = nonzero ? Support::everywhere() : Support::none();
    }

    FieldJet jet(double t) const override {
        FieldJet j;
        const std::size_t n = std::max(a_.size(), b_.size());
        for (std::size_t k = 0; k < n; ++k) {
            const double ak = k < a_.size() ? a_[k] : 0.0;
            const double bk = (k > 0 && k < b_.size()) ? b_[k] : 0.0;
            if (ak == 0.0 && bk == 0.0) continue;
            const double kk = static_cast<double>(k);
            const double c = std::cos(kk * t);
            const double s = std::sin(kk * t);
            j.f += ak * c + bk * s;
            j.d1 += kk * (-ak * s + bk * c);
            j.d2 += -kk * kk * (ak * c + bk * s);
            j.d3 += kk * kk * kk * (ak * s - bk * c);
        }
        return j;
    }

    std::string kind() const override { return "trigpoly"; }

private:
    std::vector<double> a_, b_;
};

class Sum final : public detail::FieldImpl {
public:
    Sum(std::vector<FieldTerm> terms, Picture p) : terms_(std::move(terms)) {
        picture = p;
        support = Support::none();
        for (const auto& t : terms_) {
            if (t.field.picture() != p) throw DomainError("sum: picture mismatch between terms");
            if (t.coefficient == 0.0 || t.field.is_zero()) continue;
            support = hull(support, t.field.support());
            if (t.field.smoothness() == Smoothness::piecewise_c1) smoothness = Smoothness::piecewise_c1;
            for (double e : t.field.exceptional_points()) exceptional.push_back(e);
        }
        std::sort(exceptional.begin(), exceptional.end());
        exceptional.erase(std::unique(exceptional.begin(), exceptional.end()), exceptional.end());
    }

    FieldJet jet(double u) const override {
        FieldJet j;
        for (const auto& t : terms_) j += t.field.jet(u).scaled(t.coefficient);
        return j;
    }

    std::string kind() const override { return "sum"; }

private:
    std::vector<FieldTerm> terms_;
};

class CayleyPushforward final : public detail::FieldImpl {
public:
    explicit CayleyPushforward(VectorField f) : line_(std::move(f)) {
        picture = Picture::circle;
        const Support s = line_.support();
        if (s.empty) {
            support = Support::none();
        } else if (s.full) {
            support = Support::everywhere();
        } else {
            support = Support::interval(cayley_angle(s.lo), cayley_angle(s.hi));
        }
        smoothness = line_.smoothness();
        for (double e : line_.exceptional_points()) exceptional.push_back(cayley_angle(e));
    }

    FieldJet jet(double theta) const override {
        const double t = wrap_angle(theta);
        if (!support.contains(t) || std::abs(t) == pi) return {};
        // g(theta) = w(u(theta)), w(u) = 2 f(u)/(1 + u^2), u = tan(theta/2)
        const double u = std::tan(0.5 * t);
        const FieldJet f = line_.jet(u);
        const double q = 1.0 + u * u;
        const double k0 = 2.0 / q;
        const double k1 = -4.0 * u / (q * q);
        const double k2 = (12.0 * u * u - 4.0) / (q * q * q);
        const double k3 = 48.0 * u * (1.0 - u * u) / (q * q * q * q);
        const double w0 = k0 * f.f;
        const double w1 = k0 * f.d1 + k1 * f.f;
        const double w2 = k0 * f.d2 + 2.0 * k1 * f.d1 + k2 * f.f;
        const double w3 = k0 * f.d3 + 3.0 * k1 * f.d2 + 3.0 * k2 * f.d1 + k3 * f.f;
        const double u1 = 0.5 * q;
        const double u2 = 0.5 * u * q;
        const double u3 = 0.25 * q * (1.0 + 3.0 * u * u);
        return {w0, w1 * u1, w2 * u1 * u1 + w1 * u2,
                w3 * u1 * u1 * u1 + 3.0 * w2 * u1 * u2 + w1 * u3, f.one_sided};
    }

    std::string kind() const override { return "cayley"; }

private:
    VectorField line_;
};

} // namespace

VectorField make_bump(double center, double halfwidth, double amplitude) {
    require_finite({center, halfwidth, amplitude}, "make_bump");
    if (!(halfwidth > 0.0)) throw DomainError("make_bump: halfwidth must be positive");
    return VectorField(std::make_shared<Bump>(center, halfwidth, amplitude));
}

VectorField make_cos2() { return VectorField(std::make_shared<Cos2>()); }

VectorField make_trigpoly(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
    for (double x : cos_coeffs) require_finite({x}, "make_trigpoly");
    for (double x : sin_coeffs) require_finite({x}, "make_trigpoly");
    return VectorField(std::make_shared<TrigPoly>(std::move(cos_coeffs), std::move(sin_coeffs)));
}

VectorField make_zero(Picture picture) { return make_sum({}, picture); }

VectorField make_sum(std::vector<FieldTerm> terms, Picture picture) {
    if (!terms.empty()) picture = terms.front().field.picture();
    for (const auto& t : terms) require_finite({t.coefficient}, "make_sum");
    return VectorField(std::make_shared<Sum>(std::move(terms), picture));
}

VectorField combine(const VectorField& f1, const VectorField& f2, double a, double b) {
    if (f1.picture() != f2.picture()) throw DomainError("combine: picture mismatch");
    return make_sum({{a, f1}, {b, f2}}, f1.picture());
}

double cayley_angle(double u) { return 2.0 * std::atan(u); }

VectorField cayley_pushforward(const VectorField& line_field) {
    if (line_field.picture() != Picture::line) {
        throw DomainError("cayley_pushforward: expected a line field");
    }
    return VectorField(std::make_shared<CayleyPushforward>(line_field));
}

JetQuery eval_jet(const VectorField& field, double u, int order) {
    if (order < 0 || order > 3) throw DomainError("eval_jet: order must be in {0,1,2,3}");
    const FieldJet j = field.jet(u);
    JetQuery q;
    q.order = order;
    const std::array<double, 4> all{j.f, j.d1, j.d2, j.d3};
    for (int k = 0; k <= order; ++k) q.values[static_cast<std::size_t>(k)] = all[static_cast<std::size_t>(k)];
    q.discontinuous = j.one_sided && order >= 2;
    return q;
}

double sobolev_norm(const VectorField& field, double s, int n_modes) {
    if (field.picture() != Picture::circle) throw DomainError("sobolev_norm: expected a circle field");
    if (n_modes < 16) throw DomainError("sobolev_norm: n_modes must be at least 16");
    if (field.is_zero()) return 0.0;

    const auto n = static_cast<std::size_t>(n_modes);
    std::vector<double> samples(n);
    for (std::size_t j = 0; j < n; ++j) {
        samples[j] = field(2.0 * pi * static_cast<double>(j) / static_cast<double>(n));
    }
    std::vector<std::complex<double>> coeffs(n / 2 + 1);
    {
        // the FFTW planner is not reentrant
        static std::mutex planner;
        fftw_plan plan;
        {
            std::lock_guard lock(planner);
            plan = fftw_plan_dft_r2c_1d(n_modes, samples.data(),
                                        reinterpret_cast<fftw_complex*>(coeffs.data()),
                                        FFTW_ESTIMATE);
        }
        fftw_execute(plan);
        std::lock_guard lock(planner);
        fftw_destroy_plan(plan);
    }
    // r2c stores modes 0..n/2; modes -1..-(n/2 - 1) are conjugates.
    double total = 0.0;
    const double norm = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const double mag = std::abs(coeffs[k]) * norm;
        const double weight = std::pow(1.0 + static_cast<double>(k), s);
        const bool paired = k != 0 && !(n % 2 == 0 && k == n / 2);
        total += (paired ? 2.0 : 1.0) * mag * weight;
    }
    return total;
}

double sup_norm_second_derivative(const VectorField& field, int samples) {
    if (field.is_zero()) return 0.0;
    const Support s = field.support();
    double lo = s.lo, hi = s.hi;
    if (s.full) {
        if (field.picture() != Picture::circle) throw DomainError("sup norm over unbounded support");
        lo = -pi;
        hi = pi;
    }
    double best = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double u = lo + (hi - lo) * static_cast<double>(i) / samples;
        best = std::max(best, std::abs(field.jet(u).d2));
    }
    return best;
}

} // namespace qneclab
