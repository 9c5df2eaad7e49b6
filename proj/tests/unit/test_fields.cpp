#include "qneclab/error.hpp"
#include "qneclab/field_spec.hpp"
#include "qneclab/fields.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qneclab;
using std::numbers::pi;

namespace {

double bump_value(double c, double w, double a, double u) {
    const double x = (u - c) / w;
    return std::abs(x) < 1.0 ? a * std::exp(1.0 - 1.0 / (1.0 - x * x)) : 0.0;
}

// Five-point central difference at h and h/2, one Richardson step.
template <class F>
double diff(F f, double u, double h = 1e-3) {
    const auto d = [&](double k) { return (f(u - 2 * k) - 8 * f(u - k) + 8 * f(u + k) - f(u + 2 * k)) / (12 * k); };
    return (16 * d(h / 2) - d(h)) / 15;
}

} // namespace

TEST_CASE("bump: values, support and derivatives") {
    const VectorField b = make_bump(0.5, 0.8, 0.3);
    CHECK(b.support().lo == doctest::Approx(-0.3));
    CHECK(b.support().hi == doctest::Approx(1.3));
    CHECK(b(0.5) == doctest::Approx(0.3).epsilon(1e-15));
    for (double u : {-0.2, 0.1, 0.5, 0.9, 1.25}) {
        const FieldJet j = b.jet(u);
        CHECK(std::abs(j.f - bump_value(0.5, 0.8, 0.3, u)) < 1e-15);
        CHECK(std::abs(j.d1 - diff([](double x) { return bump_value(0.5, 0.8, 0.3, x); }, u)) < 1e-7);
        CHECK(std::abs(j.d2 - diff([&](double x) { return b.jet(x).d1; }, u)) < 1e-6);
        CHECK(std::abs(j.d3 - diff([&](double x) { return b.jet(x).d2; }, u)) < 1e-5);
    }
    for (double u : {-5.0, -0.3, 1.3, 2.0}) {
        const FieldJet j = b.jet(u);
        CHECK(j.f == 0.0);
        CHECK(j.d1 == 0.0);
        CHECK(j.d2 == 0.0);
        CHECK(j.d3 == 0.0);
    }
    CHECK_THROWS_AS(make_bump(0.0, -1.0, 1.0), DomainError);
}

TEST_CASE("cos2: closed-form jets inside, zero outside") {
    const VectorField f = make_cos2();
    CHECK(f.smoothness() == Smoothness::piecewise_c1);
    for (double u : {-1.2, 0.0, 0.4, 1.5}) {
        const FieldJet j = f.jet(u);
        CHECK(j.f == doctest::Approx(std::cos(u) * std::cos(u)));
        CHECK(j.d1 == doctest::Approx(-std::sin(2 * u)));
        CHECK(j.d2 == doctest::Approx(-2 * std::cos(2 * u)));
        CHECK(j.d3 == doctest::Approx(4 * std::sin(2 * u)));
    }
    CHECK(f(2.0) == 0.0);
    const JetQuery q = eval_jet(f, pi / 2, 2);
    CHECK(q.discontinuous);
    CHECK(std::abs(q.values[0]) < 1e-15);
    CHECK(q.values[2] == doctest::Approx(2.0));   // inside limit of -2 cos 2u
    CHECK_FALSE(eval_jet(f, pi / 2, 1).discontinuous);
}

TEST_CASE("trigpoly: Fourier jets and Sobolev norm") {
    const VectorField f = make_trigpoly({0.5, 0.0, 0.25}, {0.0, 0.3});
    CHECK(f.picture() == Picture::circle);
    for (double th : {0.0, 1.0, 2.5, -3.0}) {
        const double v = 0.5 + 0.25 * std::cos(2 * th) + 0.3 * std::sin(th);
        const double d3 = 2.0 * std::sin(2 * th) - 0.3 * std::cos(th);
        CHECK(f(th) == doctest::Approx(v));
        CHECK(f.jet(th).d3 == doctest::Approx(d3));
    }
    // |fhat_{+-k}| = a/2 for a cos(k theta).
    const VectorField c3 = make_trigpoly({0, 0, 0, 1.0}, {});
    CHECK(sobolev_norm(c3, 1.5) == doctest::Approx(std::pow(4.0, 1.5)).epsilon(1e-10));
    // Smooth fields: the norm settles as the mode count doubles.
    const VectorField g = cayley_pushforward(make_bump(0.2, 0.7, 0.4));
    const double n1 = sobolev_norm(g, 1.5, 64), n2 = sobolev_norm(g, 1.5, 128), n3 = sobolev_norm(g, 1.5, 256);
    CHECK(std::abs(n3 - n2) < std::abs(n2 - n1));
    CHECK_THROWS_AS(sobolev_norm(make_bump(0, 1, 1), 1.0), DomainError);
}

TEST_CASE("sums, linear combinations and the zero field") {
    const VectorField f1 = make_bump(-1.0, 0.5, 0.2), f2 = make_bump(0.3, 0.6, -0.4);
    const VectorField g = combine(f1, f2, 2.0, -3.0);
    for (double u = -2.0; u <= 2.0; u += 0.37) {
        CHECK(std::abs(g(u) - (2.0 * f1(u) - 3.0 * f2(u))) < 1e-15);
        CHECK(std::abs(g.jet(u).d2 - (2.0 * f1.jet(u).d2 - 3.0 * f2.jet(u).d2)) < 1e-12);
    }
    CHECK(g.support().lo == doctest::Approx(-1.5));
    CHECK(g.support().hi == doctest::Approx(0.9));
    CHECK(make_sum({}).is_zero());
    CHECK(make_zero(Picture::circle).picture() == Picture::circle);
    CHECK_THROWS_AS(combine(f1, make_trigpoly({1.0}, {}), 1, 1), DomainError);
}

TEST_CASE("Cayley pushforward: g(C(u)) = C'(u) f(u)") {
    const VectorField f = make_bump(0.4, 1.1, 0.7);
    const VectorField g = cayley_pushforward(f);
    CHECK(g.picture() == Picture::circle);
    for (double u = -3.0; u <= 3.0; u += 0.25) {
        CHECK(std::abs(g(2 * std::atan(u)) - 2.0 / (1 + u * u) * f(u)) < 1e-14);
        CHECK(cayley_angle(u) == doctest::Approx(2 * std::atan(u)));
    }
}

TEST_CASE("sup norm of f''") {
    CHECK(sup_norm_second_derivative(make_cos2()) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(sup_norm_second_derivative(make_zero()) == 0.0);
}

TEST_CASE("JSON field specs") {
    const VectorField b = parse_field_spec(R"({"kind":"bump","center":1,"halfwidth":0.5,"amplitude":0.2})");
    CHECK(b(1.0) == doctest::Approx(0.2));
    const VectorField s = parse_field_spec(
        R"({"kind":"sum","terms":[{"kind":"cos2","coef":2},{"kind":"bump","center":3,"halfwidth":0.5,"amplitude":1}]})");
    CHECK(s(0.0) == doctest::Approx(2.0));
    CHECK(s(3.0) == doctest::Approx(1.0));
    CHECK(parse_field_spec(R"({"kind":"sum","terms":[]})").is_zero());
    const VectorField t = parse_field_spec(R"({"kind":"trigpoly","cos":[0,1],"sin":[0,0,2]})");
    CHECK(t(0.3) == doctest::Approx(std::cos(0.3) + 2 * std::sin(0.6)));

    CHECK_THROWS_AS(parse_field_spec("{"), SpecError);
    CHECK_THROWS_AS(parse_field_spec(R"({"kind":"spiral"})"), SpecError);
    CHECK_THROWS_AS(parse_field_spec(R"({"kind":"bump","center":0,"halfwidth":-1,"amplitude":1})"), SpecError);
    CHECK_THROWS_AS(parse_field_spec(R"({"kind":"bump","center":"x","halfwidth":1,"amplitude":1})"), SpecError);
    CHECK_THROWS_AS(load_field_spec("/nonexistent/field.json"), SpecError);
}

TEST_CASE("random specs respect their ranges") {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const auto spec = random_bump_sum_spec(rng);
        const auto& terms = spec["terms"];
        CHECK(terms.size() >= 1);
        CHECK(terms.size() <= 4);
        for (const auto& t : terms) {
            CHECK(std::abs(t["center"].get<double>()) <= 3.0);
            CHECK(t["halfwidth"].get<double>() >= 0.2);
            CHECK(t["halfwidth"].get<double>() <= 1.0);
            CHECK(std::abs(t["amplitude"].get<double>()) <= 0.5);
        }
        CHECK_NOTHROW(field_from_json(spec));
    }
}
