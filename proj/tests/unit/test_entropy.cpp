#include "qneclab/entropy.hpp"
#include "qneclab/error.hpp"
#include "qneclab/flows.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qneclab;
using std::numbers::pi;

namespace {

template <class F>
double simpson(F f, double a, double b, int panels = 4000) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

// rho_t(u) = atan(tan u + t) on (-pi/2, pi/2): log-derivative ratio and
// Schwarzian in closed form.
double q_cos2(double t, double u) {
    if (std::abs(u) > pi / 2) return 0.0;
    const double s = std::sin(u), c = std::cos(u);
    return 2 * t * (t * s * c + s * s - c * c) / (t * t * c * c + 2 * t * s * c + 1);
}

double schwarzian_cos2(double t, double u) {
    const double s = std::sin(u), c = std::cos(u);
    const double den = t * t * c * c + t * std::sin(2 * u) + 1;
    return 2 * t * c * (t * t * t * c * c * c + 4 * t * t * s * c * c - 4 * t * c * c * c + 6 * t * c + 4 * s) /
           (den * den);
}

double rho_cos2(double t, double u) { return std::atan(std::tan(u) + t); }

const Diffeomorphism& cos2_map() {
    static const Diffeomorphism rho = exponentiate(make_cos2(), 1.0);
    return rho;
}

// u + e sin^3(pi u) on [0, 1], the identity elsewhere; fixes 0 and 1.
Jet3 sin3_jet(double e, double u) {
    if (u <= 0.0 || u >= 1.0) return Jet3::identity(u);
    const double s = std::sin(pi * u), c = std::cos(pi * u);
    return {u + e * s * s * s, 1 + 3 * e * pi * s * s * c, 3 * e * pi * pi * (2 * s * c * c - s * s * s),
            3 * e * pi * pi * pi * (2 * c * c * c - 7 * s * s * c)};
}

Diffeomorphism sin3_map(double e) {
    return Diffeomorphism::from_jets([e](double u) { return sin3_jet(e, u); }, Support::interval(0, 1),
                                     "sin3", Picture::line, {0.0, 1.0});
}

} // namespace

TEST_CASE("half-line entropy of the cos^2 flow, both directions") {
    const Diffeomorphism& rho = cos2_map();
    for (double t : {-2.0, -0.8, 0.0, 0.6, 1.3}) {
        const double lo = std::max(t, -pi / 2);
        const double sv = simpson([t](double u) { return (u - t) * std::pow(q_cos2(-1, u), 2); }, lo, pi / 2) / 24;
        const EntropyReport a = entropy_half_line(rho, t, 1.0, Direction::state_vs_vacuum);
        CHECK(std::abs(a.value - sv) < 1e-9);
        CHECK(a.value >= 0.0);

        const double x = std::abs(t) < pi / 2 ? rho_cos2(-1, t) : t;
        const double lx = std::max(x, -pi / 2);
        const double vs = simpson([x](double u) { return (u - x) * std::pow(q_cos2(1, u), 2); }, lx, pi / 2) / 24;
        CHECK(std::abs(entropy_half_line(rho, t, 1.0, Direction::vacuum_vs_state).value - vs) < 1e-9);
        // c enters linearly
        CHECK(entropy_half_line(rho, t, 3.0).value == doctest::Approx(3 * a.value).epsilon(1e-12));
    }
    CHECK(entropy_half_line(rho, 2.0, 1.0).value == 0.0);
}

TEST_CASE("derivatives in the cut") {
    const Diffeomorphism& rho = cos2_map();
    for (double t : {-1.0, 0.2, 0.9}) {
        const EntropyDerivatives d = entropy_half_line_derivatives(rho, t, 1.0);
        CHECK(d.second == doctest::Approx(std::pow(q_cos2(-1, t), 2) / 24).epsilon(1e-8));
        const double tail = simpson([](double u) { return std::pow(q_cos2(-1, u), 2); }, t, pi / 2);
        CHECK(std::abs(d.first + tail / 24) < 1e-10);
    }
    // The vacuum_vs_state second derivative at pi/4 = rho(0): q(0) = -1, int_0^{pi/2} q^2 = 3 - pi/2.
    const double expected = (1.0 / 24) * (-1.0) * (-1.0 + 3 - pi / 2);
    const EntropyDerivatives v = entropy_half_line_derivatives(rho, pi / 4, 1.0, Direction::vacuum_vs_state);
    CHECK(std::abs(v.second / 4 - expected) < 1e-9);
    const EntropyDerivatives x = entropy_exchanged_derivative_formula(rho, 0.0, 1.0);
    CHECK(std::abs(x.second - expected) < 1e-9);
    CHECK(std::abs(x.first + (3 - pi / 2) / 24) < 1e-9);
}

TEST_CASE("vacuum energy") {
    const double e = simpson([](double u) { return std::pow(q_cos2(1, u), 2); }, -pi / 2, pi / 2) / (48 * pi);
    CHECK(std::abs(vacuum_energy(cos2_map(), 1.0).value - e) < 1e-10);
    const double eb = simpson([](double u) { return std::pow(q_cos2(-1, u), 2); }, -pi / 2, pi / 2) / (48 * pi);
    CHECK(std::abs(vacuum_energy(cos2_map(), 1.0, Direction::state_vs_vacuum).value - eb) < 1e-10);
    CHECK(vacuum_energy(Diffeomorphism::affine(2.0, 1.0), 1.0).value == 0.0);
}

TEST_CASE("bounded intervals against the closed formula") {
    const Diffeomorphism& rho = cos2_map();
    const double a = -0.5, b = 1.0;
    const double ea = rho_cos2(-1, a), eb = rho_cos2(-1, b);
    const double integral = simpson(
        [&](double u) { return (eb - u) * (u - ea) / (eb - ea) * schwarzian_cos2(1, u); }, ea, eb);
    auto d1 = [](double u) {
        const double tu = std::tan(u);
        return (1 + tu * tu) / (1 + (tu + 1) * (tu + 1));
    };
    const double stretch = (eb - ea) / (b - a);
    const double expected = -integral / 12 + (std::log(d1(ea)) + std::log(d1(eb))) / 12 +
                            std::log(stretch * stretch) / 12;
    CHECK(std::abs(entropy_interval(rho, a, b, 1.0).value - expected) < 1e-9);
    CHECK(entropy_interval(Diffeomorphism::affine(2.0, 3.0), a, b, 1.0).value == 0.0);
    CHECK_THROWS_AS(entropy_interval(rho, 1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("fixed-endpoint forms agree and reduce the interval formula") {
    const Diffeomorphism rho = sin3_map(0.1);
    const FixedEndpointForms f = entropy_interval_fixed_endpoint_forms(rho, 0.0, 1.0, 1.0);
    const double sq = simpson([](double u) {
        const Jet3 j = sin3_jet(0.1, u);
        return u * (1 - u) * std::pow(j.d2 / j.d1, 2);
    }, 0.0, 1.0);
    const double logs = simpson([](double u) { return std::log(sin3_jet(0.1, u).d1); }, 0.0, 1.0);
    CHECK(std::abs(f.form1 - (sq / 24 + logs / 6)) < 1e-10);
    CHECK(std::abs(f.form1 - f.form2) < 1e-10);
    CHECK(f.jensen <= 0.0);
    CHECK(std::abs(entropy_interval(rho, 0.0, 1.0, 1.0).value - f.form2) < 1e-10);
    CHECK_THROWS_AS(entropy_interval_fixed_endpoint_forms(cos2_map(), -0.5, 1.0, 1.0), DomainError);
}

TEST_CASE("Bekenstein records") {
    const BekensteinRecord r = bekenstein_check(cos2_map(), 1.0, 1.0);
    CHECK(r.bound == doctest::Approx(pi * r.energy));
    CHECK(r.margin == doctest::Approx(r.bound - r.entropy));
    CHECK(r.pass);
    const auto sweep = bekenstein_sweep(cos2_map(), {0.5, 1.0}, 1.0);
    CHECK(sweep.size() == 2);
    CHECK(sweep[1].entropy == doctest::Approx(r.entropy).epsilon(1e-12));
    CHECK_THROWS_AS(bekenstein_check(cos2_map(), -1.0, 1.0), DomainError);
}

TEST_CASE("preconditions") {
    const Diffeomorphism& rho = cos2_map();
    CHECK_THROWS_AS(entropy_half_line(rho, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(entropy_half_line(rho, 0.0, -1.0), DomainError);
    CHECK_THROWS_AS(entropy_half_line(rho, std::nan(""), 1.0), DomainError);
    // Different affine pieces on the two sides.
    const Diffeomorphism kink = Diffeomorphism::from_jets(
        [](double u) { return u < 0 ? Jet3::identity(u) : Jet3{2 * u, 2.0, 0.0, 0.0}; },
        Support::interval(-1, 1), "kink");
    CHECK_THROWS_AS(entropy_half_line(kink, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(entropy_half_line(Diffeomorphism::identity(Picture::circle), 0.0, 1.0), DomainError);
    CHECK(parse_direction("vacuum_vs_state") == Direction::vacuum_vs_state);
    CHECK_THROWS_AS(parse_direction("sideways"), DomainError);
    CHECK(dilation_density(0, 2, 1) == doctest::Approx(0.5));
}

TEST_CASE("QNEC energy density") {
    const Estimate e = qnec_energy_density(cos2_map(), -0.3, 0.9, 2.0);
    const double expected = 2.0 / (24 * pi) * simpson([](double u) { return std::pow(q_cos2(-1, u), 2); }, -0.3, 0.9);
    CHECK(std::abs(e.value - expected) < 1e-10);
}
