#include "qneclab/flows.hpp"

#include "qneclab/error.hpp"
#include "qneclab/quadrature.hpp"
#include "qneclab/roots.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qneclab {

namespace odeint = boost::numeric::odeint;

void FlowConfig::validate() const {
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol) || !(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
        throw DomainError("FlowConfig: tolerances must be positive and finite");
    }
    if (!(max_step >= 0.0) || !std::isfinite(max_step)) {
        throw DomainError("FlowConfig: max_step must be finite and non-negative");
    }
}

namespace {

using State4 = std::array<double, 4>;
using State1 = std::array<double, 1>;

double default_max_step(const VectorField& f, const FlowConfig& cfg) {
    if (cfg.max_step > 0.0) return cfg.max_step;
    const Support s = f.support();
    const double w = s.width(f.picture());
    if (!std::isfinite(w) || !(w > 0.0)) return 0.1;
    return 0.05 * w;
}

bool inert(const FieldJet& j) { return j.f == 0.0 && j.d1 == 0.0 && j.d2 == 0.0 && j.d3 == 0.0; }

[[noreturn]] void flow_failure(double u, double t, const std::string& why) {
    std::ostringstream os;
    os << "flow integration failed at u=" << u << ", t=" << t << ": " << why;
    throw FlowError(os.str());
}

template <class State, class System>
State integrate_flow(System sys, State y, double t, double max_dt, const FlowConfig& cfg, double u) {
    using Stepper = odeint::runge_kutta_dopri5<State>;
    // always integrates forward; the system carries the sign of t
    const double span = std::abs(t);
    const double dt0 = std::min(span, std::min(0.01, max_dt));
    try {
        auto stepper = odeint::make_controlled(cfg.abs_tol, cfg.rel_tol, max_dt, Stepper());
        odeint::integrate_adaptive(stepper, sys, y, 0.0, span, dt0);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        flow_failure(u, t, e.what());
    }
    for (double v : y) {
        if (!std::isfinite(v)) flow_failure(u, t, "non-finite state");
    }
    return y;
}

class FlowNode final : public detail::DiffeoNode {
public:
    FlowNode(VectorField f, double t, FlowConfig cfg)
        : field_(std::move(f)), t_(t), cfg_(cfg), max_dt_(default_max_step(field_, cfg)) {
        picture = field_.picture();
        const Support s = field_.support();
        if (picture == Picture::circle && !s.empty) {
            hull = Support::everywhere();
        } else {
            hull = s;
        }
        if (picture == Picture::line) breakpoints = field_.exceptional_points();
    }

    Jet3 jet(double u) const override {
        if (!active(u)) return Jet3::identity(u);
        const FieldJet j0 = field_.jet(u);
        if (inert(j0)) return Jet3::identity(u);
        const VectorField& f = field_;
        const double sg = t_ > 0.0 ? 1.0 : -1.0;
        auto sys = [&f, sg](const State4& y, State4& dy, double) {
            const FieldJet j = f.jet(y[0]).scaled(sg);
            dy[0] = j.f;
            dy[1] = j.d1 * y[1];
            dy[2] = j.d2 * y[1] * y[1] + j.d1 * y[2];
            dy[3] = j.d3 * y[1] * y[1] * y[1] + 3.0 * j.d2 * y[1] * y[2] + j.d1 * y[3];
        };
        const State4 y = integrate_flow(sys, State4{u, 1.0, 0.0, 0.0}, t_, max_dt_, cfg_, u);
        return {y[0], y[1], y[2], y[3]};
    }

    double value(double u) const override {
        if (!active(u)) return u;
        if (field_(u) == 0.0) return u;
        const VectorField& f = field_;
        const double sg = t_ > 0.0 ? 1.0 : -1.0;
        auto sys = [&f, sg](const State1& y, State1& dy, double) { dy[0] = sg * f(y[0]); };
        return integrate_flow(sys, State1{u}, t_, max_dt_, cfg_, u)[0];
    }

    Diffeomorphism inverse(const Diffeomorphism&) const override {
        return exponentiate(field_, -t_, cfg_);
    }
    DiffeoKind kind() const override { return DiffeoKind::flow; }
    std::string describe() const override {
        std::ostringstream os;
        os << "Exp(" << t_ << " * " << field_.kind() << ")";
        return os.str();
    }
    std::optional<FlowTag> flow_tag() const override { return FlowTag{field_, t_}; }

private:
    bool active(double u) const {
        if (picture == Picture::circle) return !hull.empty;
        return hull.contains(u);
    }

    VectorField field_;
    double t_;
    FlowConfig cfg_;
    double max_dt_;
};

} // namespace

Diffeomorphism exponentiate(const VectorField& field, double t, const FlowConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(t)) throw DomainError("exponentiate: non-finite time");
    if (t == 0.0 || field.is_zero()) return Diffeomorphism::identity(field.picture());
    return Diffeomorphism(std::make_shared<FlowNode>(field, t, cfg));
}

Jet3 flow_jet(const VectorField& field, double t, double u, const FlowConfig& cfg) {
    return exponentiate(field, t, cfg).jet(u);
}

double flow_point(const VectorField& field, double t, double u, const FlowConfig& cfg) {
    return exponentiate(field, t, cfg)(u);
}

Diffeomorphism inverse_flow(const VectorField& field, double t, const FlowConfig& cfg) {
    return exponentiate(field, -t, cfg);
}

namespace {

// Progress along the trajectory: P(x) = int_{x0}^{x} dv / |f(v)| in the
// direction of motion, which is increasing in the distance travelled.
struct Marcher {
    const VectorField& f;
    double dir;

    double segment(double x0, double x1) const {
        if (x0 == x1) return 0.0;
        const QuadResult r = integrate([this](double v) { return 1.0 / std::abs(f(v)); },
                                       std::min(x0, x1), std::max(x0, x1));
        return r.value;
    }

    // Solve progress(x0 -> x) = need for x in the cell [x0, x0 + dir * h].
    double solve(double x0, double h, double need) const {
        auto g = [&](double tau) {
            const double x = x0 + dir * tau;
            return std::pair{segment(x0, x), 1.0 / std::abs(f(x))};
        };
        return x0 + dir * solve_increasing(g, need, 0.0, h);
    }
};

} // namespace

double closed_form_flow(const VectorField& field, double t, double u) {
    if (!std::isfinite(t) || !std::isfinite(u)) throw DomainError("closed_form_flow: non-finite input");
    if (t == 0.0) return u;
    const double fu = field(u);
    if (fu == 0.0) {
        std::ostringstream os;
        os << "closed_form_flow: field vanishes at u=" << u << "; use the ODE path";
        throw DomainError(os.str());
    }
    const double sign_f = fu > 0.0 ? 1.0 : -1.0;
    const Marcher m{field, sign_f * (t > 0.0 ? 1.0 : -1.0)};
    const double target = std::abs(t);

    const Picture p = field.picture();
    const Support s = field.support();
    const double cell = (p == Picture::circle ? 2.0 * std::numbers::pi : s.width(p)) / 256.0;
    const int max_cells = 256 * 64;

    auto nonvanishing = [&](double x) {
        const double v = field(x);
        return v != 0.0 && (v > 0.0) == (sign_f > 0.0);
    };

    double x = u;
    double done = 0.0;
    for (int k = 0; k < max_cells; ++k) {
        double next = x + m.dir * cell;
        if (nonvanishing(next)) {
            const double piece = m.segment(x, next);
            if (done + piece >= target) return m.solve(x, cell, target - done);
            done += piece;
            x = next;
            continue;
        }
        // f reaches zero inside this cell: locate the first zero z and creep
        // towards it geometrically; the progress diverges at z.
        double good = x, bad = next;
        for (int i = 0; i < 200 && std::abs(bad - good) > 1e-15 * (1.0 + std::abs(good)); ++i) {
            const double mid = 0.5 * (good + bad);
            (nonvanishing(mid) ? good : bad) = mid;
        }
        const double z = bad;
        for (int i = 0; i < 200; ++i) {
            const double step = 0.5 * (z - x);
            next = x + step;
            if (next == x || !nonvanishing(next)) break;
            const double piece = m.segment(x, next);
            if (done + piece >= target) return m.solve(x, std::abs(step), target - done);
            done += piece;
            x = next;
        }
        std::ostringstream os;
        os << "closed_form_flow: trajectory from u=" << u << " stalls at a zero of the field near "
           << z << " before reaching t=" << t;
        throw NumericalError(os.str());
    }
    throw NumericalError("closed_form_flow: trajectory did not reach the requested time");
}

} // namespace qneclab
