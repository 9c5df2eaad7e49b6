#include "qneclab/verify.hpp"

#include "qneclab/asymptotics.hpp"
#include "qneclab/cocycles.hpp"
#include "qneclab/diffeo.hpp"
#include "qneclab/entropy.hpp"
#include "qneclab/error.hpp"
#include "qneclab/field_spec.hpp"
#include "qneclab/util.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>

namespace qneclab {

namespace {

using std::numbers::pi;

class Property {
public:
    Property(std::string suite, std::string name, double tol, const VerifyOptions& o) {
        res_.suite = std::move(suite);
        res_.name = std::move(name);
        res_.tolerance = tol * o.tol_scale;
    }

    void add(double residual) {
        ++res_.cases;
        if (!std::isfinite(residual)) residual = std::numeric_limits<double>::infinity();
        res_.max_residual = std::max(res_.max_residual, std::abs(residual));
    }

    /// Adds max(0, -x): a signed quantity that must not be negative.
    void nonnegative(double x) { add(std::max(0.0, -x)); }

    PropertyResult run(const std::function<void(Property&)>& body) {
        try {
            body(*this);
        } catch (const std::exception& e) {
            res_.error = e.what();
        }
        res_.pass = res_.error.empty() && res_.cases > 0 && res_.max_residual <= res_.tolerance;
        return res_;
    }

private:
    PropertyResult res_;
};

double rel(double x, double ref) { return std::abs(x - ref) / (1.0 + std::abs(ref)); }

VectorField random_line_field(Rng& rng) { return field_from_json(random_bump_sum_spec(rng)); }

VectorField random_circle_field(Rng& rng) { return field_from_json(random_trig_spec(rng)); }

/// A field with a wide enough support that a random point inside sees it.
VectorField random_nonzero_field(Rng& rng) {
    for (;;) {
        VectorField f = random_line_field(rng);
        if (!f.is_zero()) return f;
    }
}

double sample_inside(Rng& rng, const Support& s) { return rng.uniform(s.lo, s.hi); }

double sample_outside(Rng& rng, const Support& s) {
    const double d = rng.uniform(1e-6, 3.0);
    return rng.integer(0, 1) ? s.hi + d : s.lo - d;
}

// ---------------------------------------------------------------- flows

std::vector<PropertyResult> flows_suite(const VerifyOptions& o) {
    const std::string S = "flows";
    Rng rng(o.seed);
    const int nf = std::max(1, o.samples);
    std::vector<PropertyResult> out;

    out.push_back(Property(S, "field_zero_outside_support", 0.0, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const VectorField f = random_nonzero_field(rng);
            for (int k = 0; k < 100; ++k) {
                const FieldJet j = f.jet(sample_outside(rng, f.support()));
                p.add(std::max({std::abs(j.f), std::abs(j.d1), std::abs(j.d2), std::abs(j.d3)}));
            }
        }
    }));

    out.push_back(Property(S, "field_linearity", 1e-14, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const VectorField f1 = random_line_field(rng), f2 = random_line_field(rng);
            const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
            const VectorField g = combine(f1, f2, a, b);
            for (int k = 0; k < 100; ++k) {
                const double u = rng.uniform(-4.5, 4.5);
                const FieldJet j = g.jet(u), j1 = f1.jet(u), j2 = f2.jet(u);
                const double scale = 1.0 + std::abs(a) * std::abs(j1.d3) + std::abs(b) * std::abs(j2.d3);
                p.add(std::abs(j.f - (a * j1.f + b * j2.f)) / scale);
                p.add(std::abs(j.d1 - (a * j1.d1 + b * j2.d1)) / scale);
                p.add(std::abs(j.d2 - (a * j1.d2 + b * j2.d2)) / scale);
                p.add(std::abs(j.d3 - (a * j1.d3 + b * j2.d3)) / scale);
            }
        }
    }));

    out.push_back(Property(S, "cayley_pushforward", 1e-10, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const VectorField f = random_line_field(rng);
            const VectorField g = cayley_pushforward(f);
            for (int k = 0; k < 100; ++k) {
                const double u = rng.uniform(-5, 5);
                p.add(g(2.0 * std::atan(u)) - 2.0 / (1.0 + u * u) * f(u));
            }
        }
    }));

    out.push_back(Property(S, "group_law", 1e-8, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const VectorField f = random_nonzero_field(rng);
            const double s = rng.uniform(-1, 1), t = rng.uniform(-1, 1);
            for (int k = 0; k < 50; ++k) {
                const double u = sample_inside(rng, f.support());
                const double lhs = flow_point(f, s + t, u, o.flow);
                const double rhs = flow_point(f, s, flow_point(f, t, u, o.flow), o.flow);
                p.add(lhs - rhs);
            }
        }
    }));

    out.push_back(Property(S, "derivative_transport", 1e-8, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const VectorField f = random_nonzero_field(rng);
            const double t = rng.uniform(-1, 1);
            for (int k = 0; k < 50; ++k) {
                const double u = sample_inside(rng, f.support());
                const double fu = f(u);
                if (std::abs(fu) < 1e-3) continue;
                const Jet3 j = flow_jet(f, t, u, o.flow);
                p.add(rel(j.d1, f(j.value) / fu));
            }
        }
    }));

    out.push_back(Property(S, "jet_finite_difference", 1e-5, o).run([&](Property& p) {
        // Five-point differences at h and h/2 with one Richardson step.
        const double h = 1e-3;
        for (int i = 0; i < nf; ++i) {
            const VectorField f = random_nonzero_field(rng);
            const double t = rng.uniform(-1, 1);
            for (int k = 0; k < 10; ++k) {
                const double u = sample_inside(rng, f.support());
                const Jet3 j = flow_jet(f, t, u, o.flow);
                Jet3 s[2][4];
                for (int r = 0; r < 2; ++r) {
                    for (int m = 0; m < 4; ++m) {
                        s[r][m] = flow_jet(f, t, u + (h / (1 + r)) * (m < 2 ? m - 2 : m - 1), o.flow);
                    }
                }
                auto d = [&](double Jet3::*c) {
                    double v[2];
                    for (int r = 0; r < 2; ++r) {
                        v[r] = (s[r][0].*c - 8 * (s[r][1].*c) + 8 * (s[r][2].*c) - s[r][3].*c) /
                               (12 * h / (1 + r));
                    }
                    return (16 * v[1] - v[0]) / 15;
                };
                p.add(rel(d(&Jet3::value), j.d1));
                p.add(rel(d(&Jet3::d1), j.d2));
                p.add(rel(d(&Jet3::d2), j.d3));
            }
        }
    }));

    out.push_back(Property(S, "identity_outside_support", 0.0, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const VectorField f = random_nonzero_field(rng);
            const double t = rng.uniform(-1, 1);
            for (int k = 0; k < 20; ++k) {
                const double u = sample_outside(rng, f.support());
                const Jet3 j = flow_jet(f, t, u, o.flow);
                p.add(std::max({std::abs(j.value - u), std::abs(j.d1 - 1.0), std::abs(j.d2),
                                std::abs(j.d3)}));
            }
        }
    }));

    out.push_back(Property(S, "orientation", 0.0, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const VectorField f = random_nonzero_field(rng);
            const double t = rng.uniform(-1, 1);
            for (int k = 0; k < 50; ++k) {
                p.nonnegative(flow_jet(f, t, sample_inside(rng, f.support()), o.flow).d1 > 0.0 ? 0.0 : -1.0);
            }
        }
    }));

    out.push_back(Property(S, "closed_form_vs_ode", 1e-8, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const VectorField f = random_nonzero_field(rng);
            const double t = rng.uniform(-1, 1);
            for (int k = 0; k < 20; ++k) {
                const double u = sample_inside(rng, f.support());
                if (std::abs(f(u)) < 1e-3) continue;
                p.add(closed_form_flow(f, t, u) - flow_point(f, t, u, o.flow));
            }
        }
        // cos^2 flows to arctan(tan u + t) in closed form.
        const VectorField c2 = make_cos2();
        for (int k = 0; k < 20; ++k) {
            const double u = rng.uniform(-1.4, 1.4), t = rng.uniform(-1, 1);
            p.add(flow_point(c2, t, u, o.flow) - std::atan(std::tan(u) + t));
        }
    }));
    return out;
}

// ---------------------------------------------------------------- schwarzian

std::vector<PropertyResult> schwarzian_suite(const VerifyOptions& o) {
    const std::string S = "schwarzian";
    Rng rng(o.seed + 1);
    const int nf = std::max(1, o.samples);
    std::vector<PropertyResult> out;

    out.push_back(Property(S, "moebius_schwarzian_zero", 1e-12, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const Diffeomorphism m = Diffeomorphism::affine(rng.uniform(0.1, 5), rng.uniform(-3, 3));
            const double a = rng.uniform(-3, 0), b = rng.uniform(0.5, 3);
            const Diffeomorphism fix = moebius_fixing(a, b, rng.uniform(-5, 0), rng.uniform(0.5, 5));
            if (!m.is_moebius() || !fix.is_moebius()) p.add(1.0);
            for (int k = 0; k < 20; ++k) {
                const double u = rng.uniform(-10, 10);
                p.add(schwarzian(m, u));
                p.add(schwarzian(fix, u));
            }
        }
    }));

    out.push_back(Property(S, "flow_schwarzian_nonzero", 0.5, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const VectorField f = random_nonzero_field(rng);
            const Diffeomorphism rho = exponentiate(f, 1.0, o.flow);
            if (rho.is_moebius()) p.add(1.0);
            double peak = 0.0;
            for (int k = 0; k <= 200; ++k) {
                const Support s = f.support();
                peak = std::max(peak, std::abs(schwarzian(rho, s.lo + (s.hi - s.lo) * k / 200.0)));
            }
            p.add(peak > 1e-6 ? 0.0 : 1.0);
        }
    }));

    out.push_back(Property(S, "schwarzian_chain_rule", 1e-8, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const Diffeomorphism r1 = exponentiate(random_nonzero_field(rng), rng.uniform(-1, 1), o.flow);
            const Diffeomorphism r2 = exponentiate(random_nonzero_field(rng), rng.uniform(-1, 1), o.flow);
            const Diffeomorphism c = compose(r1, r2);
            for (int k = 0; k < 20; ++k) {
                const double u = rng.uniform(-4, 4);
                const Jet3 j2 = r2.jet(u);
                const double expected = schwarzian(r1, j2.value) * j2.d1 * j2.d1 + schwarzian(j2);
                p.add(rel(schwarzian(c, u), expected));
            }
        }
    }));

    out.push_back(Property(S, "invert_compose_round_trip", 1e-8, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const VectorField f = random_nonzero_field(rng);
            const Diffeomorphism rho = exponentiate(f, rng.uniform(-1, 1), o.flow);
            const Diffeomorphism wrapped = Diffeomorphism::from_jets(
                [rho](double u) { return rho.jet(u); }, f.support(), "wrapped");
            const Support s = f.support();
            const Diffeomorphism numeric = invert(wrapped, s.lo - 1.0, s.hi + 1.0);
            for (const Diffeomorphism& id : {compose(rho, rho.inverse()), compose(wrapped, numeric),
                                             compose(numeric, wrapped)}) {
                for (int k = 0; k < 10; ++k) {
                    const double u = rng.uniform(s.lo - 0.5, s.hi + 0.5);
                    const Jet3 j = id.jet(u);
                    p.add(std::max({std::abs(j.value - u), std::abs(j.d1 - 1.0), std::abs(j.d2),
                                    std::abs(j.d3)}) / (1.0 + std::abs(u)));
                }
            }
        }
    }));

    out.push_back(Property(S, "fixes_complement_of_support", 0.0, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const VectorField f = random_nonzero_field(rng);
            const Diffeomorphism rho = exponentiate(f, rng.uniform(-1, 1), o.flow);
            if (!is_affine_at_infinity(rho)) p.add(1.0);
            for (int k = 0; k < 20; ++k) {
                const double u = sample_outside(rng, f.support());
                p.add(rho(u) - u);
            }
        }
    }));
    return out;
}

// ---------------------------------------------------------------- entropy

struct EntropyCase {
    VectorField field;
    Diffeomorphism rho;
};

EntropyCase entropy_case(Rng& rng, const VerifyOptions& o) {
    const VectorField f = random_nonzero_field(rng);
    return {f, exponentiate(f, 1.0, o.flow)};
}

/// Cut points spread over the support of the field and a little beyond.
double random_cut(Rng& rng, const Support& s) { return rng.uniform(s.lo - 0.3, s.hi + 0.3); }

std::vector<PropertyResult> entropy_suite(const VerifyOptions& o) {
    const std::string S = "entropy";
    Rng rng(o.seed + 2);
    const int nf = std::max(1, o.samples / 2);
    const double c = o.central_charge;
    const auto& q = o.quad;
    const Direction dirs[] = {Direction::state_vs_vacuum, Direction::vacuum_vs_state};
    std::vector<PropertyResult> out;

    out.push_back(Property(S, "positivity", 1e-12, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const EntropyCase e = entropy_case(rng, o);
            const Support s = e.field.support();
            for (Direction d : dirs) {
                for (int k = 0; k < 3; ++k) {
                    const EntropyReport h = entropy_half_line(e.rho, random_cut(rng, s), c, d, q);
                    p.nonnegative(h.value + h.quad_err);
                    const double a = random_cut(rng, s), b = a + rng.uniform(0.1, 3);
                    const EntropyReport iv = entropy_interval(e.rho, a, b, c, d, q);
                    p.nonnegative(iv.value + iv.quad_err);
                }
            }
        }
    }));

    out.push_back(Property(S, "qnec_second_derivative", 1e-4, o).run([&](Property& p) {
        // Five-point differences of the half-line entropy itself, with one
        // Richardson step between h and h/2.
        const double h = 0.0025;
        for (int i = 0; i < nf; ++i) {
            const EntropyCase e = entropy_case(rng, o);
            for (int k = 0; k < 3; ++k) {
                const double t = random_cut(rng, e.field.support());
                auto s = [&](double x) { return entropy_half_line(e.rho, x, c, dirs[0], q).value; };
                const double s0 = s(t);
                double d1[2], d2[2];
                for (int m = 0; m < 2; ++m) {
                    const double w = h / (1 << m);
                    const double p1 = s(t + w), m1 = s(t - w), p2 = s(t + 2 * w), m2 = s(t - 2 * w);
                    d1[m] = (-p2 + 8 * p1 - 8 * m1 + m2) / (12 * w);
                    d2[m] = (-p2 + 16 * p1 - 30 * s0 + 16 * m1 - m2) / (12 * w * w);
                }
                const EntropyDerivatives d = entropy_half_line_derivatives(e.rho, t, c, dirs[0], q);
                p.add(rel(d.second, (16 * d2[1] - d2[0]) / 15));
                p.add(rel(d.first, (16 * d1[1] - d1[0]) / 15));
            }
        }
    }));

    out.push_back(Property(S, "qnec_nonnegative", 0.0, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const EntropyCase e = entropy_case(rng, o);
            for (int k = 0; k < 20; ++k) {
                const double t = random_cut(rng, e.field.support());
                const EntropyDerivatives d = entropy_half_line_derivatives(e.rho, t, c, dirs[0], q);
                p.nonnegative(d.second);
            }
        }
    }));

    out.push_back(Property(S, "qnec_closed_form", 1e-6, o).run([&](Property& p) {
        // S'' against the vacuum_vs_state formula for eta at the cut eta^{-1}(t) = rho(t).
        for (int i = 0; i < nf; ++i) {
            const EntropyCase e = entropy_case(rng, o);
            const Diffeomorphism eta = e.rho.inverse();
            for (int k = 0; k < 10; ++k) {
                const double t = random_cut(rng, e.field.support());
                const double r = log_derivative_ratio(eta, t);
                const EntropyDerivatives d = entropy_half_line_derivatives(e.rho, t, c, dirs[0], q);
                p.add(rel(d.second, c / 24.0 * r * r));
            }
        }
    }));

    out.push_back(Property(S, "half_line_monotone", 0.0, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const EntropyCase e = entropy_case(rng, o);
            for (Direction d : dirs) {
                for (int k = 0; k < 3; ++k) {
                    const double t1 = random_cut(rng, e.field.support());
                    const double t2 = t1 + rng.uniform(0.01, 1.0);
                    const EntropyReport s1 = entropy_half_line(e.rho, t1, c, d, q);
                    const EntropyReport s2 = entropy_half_line(e.rho, t2, c, d, q);
                    p.nonnegative(s1.value - s2.value + s1.quad_err + s2.quad_err);
                }
            }
        }
    }));

    out.push_back(Property(S, "interval_monotone", 0.0, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const EntropyCase e = entropy_case(rng, o);
            const Support s = e.field.support();
            for (Direction d : dirs) {
                for (int k = 0; k < 2; ++k) {
                    const double a = random_cut(rng, s), b = a + rng.uniform(0.1, 2.0);
                    const double a2 = a - rng.uniform(0.0, 1.0), b2 = b + rng.uniform(0.0, 1.0);
                    const EntropyReport inner = entropy_interval(e.rho, a, b, c, d, q);
                    const EntropyReport outer = entropy_interval(e.rho, a2, b2, c, d, q);
                    p.nonnegative(outer.value - inner.value + inner.quad_err + outer.quad_err);
                }
            }
        }
    }));

    out.push_back(Property(S, "affine_covariance", 1e-8, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const EntropyCase e = entropy_case(rng, o);
            for (Direction d : dirs) {
                const double t = random_cut(rng, e.field.support());
                const Diffeomorphism shifted = compose(Diffeomorphism::affine(1.0, -t), e.rho);
                p.add(entropy_half_line(e.rho, t, c, d, q).value -
                      entropy_half_line(shifted, 0.0, c, d, q).value);
            }
        }
    }));

    out.push_back(Property(S, "exchange_identity", 1e-8, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const EntropyCase e = entropy_case(rng, o);
            const Diffeomorphism eta = e.rho.inverse();
            for (int k = 0; k < 2; ++k) {
                const double t = random_cut(rng, e.field.support());
                p.add(entropy_half_line(e.rho, t, c, Direction::vacuum_vs_state, q).value -
                      entropy_half_line(eta, eta(t), c, Direction::state_vs_vacuum, q).value);
            }
        }
    }));

    out.push_back(Property(S, "fixed_endpoint_forms", 1e-8, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const EntropyCase e = entropy_case(rng, o);
            const Support s = e.field.support();
            const double a = s.lo - rng.uniform(0.0, 0.5), b = s.hi + rng.uniform(0.0, 0.5);
            const FixedEndpointForms f = entropy_interval_fixed_endpoint_forms(e.rho, a, b, c, q);
            p.add(f.form1 - f.form2);
            p.add(std::max(0.0, f.jensen));
            const EntropyReport full = entropy_interval(e.rho, a, b, c, Direction::vacuum_vs_state, q);
            p.add(full.value - f.form2);
        }
    }));

    out.push_back(Property(S, "bekenstein_bound", 1e-9, o).run([&](Property& p) {
        for (int i = 0; i < std::max(1, nf / 2); ++i) {
            const EntropyCase e = entropy_case(rng, o);
            for (Direction d : dirs) {
                for (const BekensteinRecord& r : bekenstein_sweep(e.rho, {0.5, 2.0}, c, d, q)) {
                    p.nonnegative(r.margin);
                }
            }
        }
    }));
    return out;
}

// ---------------------------------------------------------------- cocycles

Diffeomorphism random_circle_map(Rng& rng, const VerifyOptions& o) {
    return exponentiate(random_circle_field(rng), rng.uniform(-1, 1), o.flow);
}

std::vector<PropertyResult> cocycles_suite(const VerifyOptions& o) {
    const std::string S = "cocycles";
    Rng rng(o.seed + 3);
    const int nf = std::max(1, o.samples);
    const auto& q = o.quad;
    std::vector<PropertyResult> out;
    const Diffeomorphism id = Diffeomorphism::identity(Picture::circle);

    out.push_back(Property(S, "bott_identity", 1e-10, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const Diffeomorphism g = random_circle_map(rng, o);
            p.add(bott_cocycle(id, g, q).value);
            p.add(bott_cocycle(g, id, q).value);
        }
    }));

    out.push_back(Property(S, "coboundary_residual", 1e-7, o).run([&](Property& p) {
        for (int i = 0; i < 2 * nf; ++i) {
            const Diffeomorphism g1 = random_circle_map(rng, o), g2 = random_circle_map(rng, o),
                                 g3 = random_circle_map(rng, o);
            p.add(coboundary_check(g1, g2, g3, q).residual);
        }
    }));

    out.push_back(Property(S, "omega_antisymmetry", 1e-10, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const VectorField f = random_circle_field(rng), g = random_circle_field(rng);
            p.add(central_term_omega(f, g, q).value + central_term_omega(g, f, q).value);
        }
    }));

    out.push_back(Property(S, "omega_bilinear", 1e-10, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const VectorField f1 = random_circle_field(rng), f2 = random_circle_field(rng),
                              g = random_circle_field(rng);
            const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
            const double lhs = central_term_omega(combine(f1, f2, a, b), g, q).value;
            p.add(lhs - a * central_term_omega(f1, g, q).value - b * central_term_omega(f2, g, q).value);
        }
    }));

    out.push_back(Property(S, "omega_fourier_modes", 1e-10, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            std::vector<double> fa(4), fb(4), ga(4), gb(4);
            for (int k = 0; k < 4; ++k) {
                fa[k] = rng.uniform(-1, 1), fb[k] = rng.uniform(-1, 1);
                ga[k] = rng.uniform(-1, 1), gb[k] = rng.uniform(-1, 1);
            }
            double expected = 0.0;
            for (int k = 1; k < 4; ++k) {
                expected -= (k * k * k - k) * (fb[k] * ga[k] - fa[k] * gb[k]) / 24.0;
            }
            p.add(central_term_omega(make_trigpoly(fa, fb), make_trigpoly(ga, gb), q).value - expected);
        }
    }));

    out.push_back(Property(S, "beta_linear", 1e-10, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const Diffeomorphism g = random_circle_map(rng, o);
            const VectorField h1 = random_circle_field(rng), h2 = random_circle_field(rng);
            const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
            p.add(anomaly_beta(g, combine(h1, h2, a, b), q).value - a * anomaly_beta(g, h1, q).value -
                  b * anomaly_beta(g, h2, q).value);
        }
    }));

    out.push_back(Property(S, "beta_moebius_zero", 1e-12, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const Diffeomorphism rot = Diffeomorphism::affine(1.0, rng.uniform(-pi, pi), Picture::circle);
            p.add(anomaly_beta(rot, random_circle_field(rng), q).value);
        }
    }));
    return out;
}

// ---------------------------------------------------------------- asymptotics

std::vector<PropertyResult> asymptotics_suite(const VerifyOptions& o) {
    const std::string S = "asymptotics";
    Rng rng(o.seed + 4);
    const int nf = std::max(1, o.samples);
    const auto& q = o.quad;
    const double c = o.central_charge;
    std::vector<PropertyResult> out;

    out.push_back(Property(S, "h_integral_identity", 1e-10, o).run([&](Property& p) {
        for (double r : {0.5, 2.0, std::numbers::e, 10.0}) {
            for (int n : {1, 5, 50}) {
                const double l = std::log(r);
                p.add(h_seq_integral(r, n, q).value - l * l / 2.0);
            }
        }
    }));

    out.push_back(Property(S, "sequence_endpoint_conditions", 1e-12, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const double r = rng.uniform(0.2, 5.0);
            const int n = rng.integer(10, 1000);
            const MapFragment h = h_seq(r, n);
            p.add(h(0.0));
            p.add(h.jet(0.0).d1 - 1.0);
            p.add(rel(h.jet(1.0 / n).d1, r));
            const MapFragment s = sigma_seq(r, n);
            p.add(s(0.0));
            p.add(rel(s.jet(0.0).d1, r));
            p.add(s.jet(1.0 - 1.0 / n).d1 - 1.0);
            const MapFragment z = zeta_seq(r, n);
            p.add(z(-1.0 / n) + 1.0 / n);
            p.add(z.jet(-1.0 / n).d1 - 1.0);
            p.add(rel(z.jet(0.0).d1, r));
        }
    }));

    out.push_back(Property(S, "nu_integrals_decreasing", 0.0, o).run([&](Property& p) {
        for (int i = 0; i < nf; ++i) {
            const double r0 = rng.uniform(0.2, 5.0), r3 = rng.uniform(0.2, 5.0);
            double last_i = std::numeric_limits<double>::infinity(), last_j = last_i;
            for (int n : {10, 100, 1000}) {
                const NuLimitRecord rec = nu_limit_integrals(r0, r3, n, q);
                p.nonnegative(last_i - std::abs(rec.i_n) > 0.0 ? 0.0 : -1.0);
                p.nonnegative(last_j - std::abs(rec.j_n) > 0.0 ? 0.0 : -1.0);
                last_i = std::abs(rec.i_n);
                last_j = std::abs(rec.j_n);
            }
        }
    }));

    out.push_back(Property(S, "limit_trace_convergence", 0.0, o).run([&](Property& p) {
        for (int i = 0; i < std::max(1, nf / 3); ++i) {
            const double w = rng.uniform(0.5, 1.0);
            const VectorField f = make_bump(1.5, w, rng.uniform(0.1, 0.3));
            const Diffeomorphism rho = exponentiate(f, 1.0, o.flow);
            const LimitTrace tr = schwarzian_limit_check(rho, 1.5 - 0.5 * w, 1.5 + w, {10, 100, 1000},
                                                         false, q);
            double last = std::numeric_limits<double>::infinity();
            for (double v : tr.piecewise) {
                const double d = std::abs(v - tr.limit);
                p.nonnegative(last - d > 0.0 ? 0.0 : -1.0);
                last = d;
            }
        }
    }));

    out.push_back(Property(S, "extensivity_disjoint", 1e-8, o).run([&](Property& p) {
        for (int i = 0; i < std::max(1, nf / 2); ++i) {
            const double w1 = rng.uniform(0.2, 1.0), w2 = rng.uniform(0.2, 1.0);
            const double c1 = rng.uniform(-2, 0), c2 = c1 + w1 + w2 + rng.uniform(0.01, 1.0);
            const VectorField f1 = make_bump(c1, w1, rng.uniform(-0.5, 0.5));
            const VectorField f2 = make_bump(c2, w2, rng.uniform(-0.5, 0.5));
            for (int k = 0; k < 3; ++k) {
                const double t = rng.uniform(c1 - w1, c2 + w2);
                p.add(extensivity_report(f1, f2, t, c, q, o.flow).s_exact);
            }
        }
    }));

    out.push_back(Property(S, "extensivity_bound", 0.0, o).run([&](Property& p) {
        for (int i = 0; i < std::max(1, nf / 2); ++i) {
            const double w1 = rng.uniform(0.3, 1.0), w2 = rng.uniform(0.3, 1.0);
            const double c1 = rng.uniform(-1, 1);
            const double c2 = c1 + rng.uniform(0.1, 0.9) * (w1 + w2);
            const VectorField f1 = make_bump(c1, w1, rng.uniform(0.1, 0.5));
            const VectorField f2 = make_bump(c2, w2, rng.uniform(0.1, 0.5));
            for (int k = 0; k < 4; ++k) {
                // Cuts up to a quarter width short of the end of the first support.
                const double t = rng.uniform(c1 - w1, c1 + 0.75 * w1);
                const ExtensivityReport r = extensivity_report(f1, f2, t, c, q, o.flow);
                p.nonnegative(r.bound + r.quad_err - std::abs(r.s_exact));
            }
        }
    }));
    return out;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"flows", "schwarzian", "entropy", "cocycles",
                                                "asymptotics"};
    return names;
}

std::vector<PropertyResult> run_suite(std::string_view suite, const VerifyOptions& opts) {
    if (!(opts.tol_scale > 0.0)) throw DomainError("verify: tolerance scale must be positive");
    opts.flow.validate();
    using Runner = std::vector<PropertyResult> (*)(const VerifyOptions&);
    const std::pair<const char*, Runner> runners[] = {{"flows", flows_suite},
                                                      {"schwarzian", schwarzian_suite},
                                                      {"entropy", entropy_suite},
                                                      {"cocycles", cocycles_suite},
                                                      {"asymptotics", asymptotics_suite}};
    std::vector<PropertyResult> out;
    bool found = false;
    for (const auto& [name, run] : runners) {
        if (suite != "all" && suite != name) continue;
        found = true;
        auto part = run(opts);
        out.insert(out.end(), part.begin(), part.end());
    }
    if (!found) throw DomainError("verify: unknown suite '" + std::string(suite) + "'");
    return out;
}

} // namespace qneclab
