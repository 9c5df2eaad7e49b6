#include "qneclab/error.hpp"
#include "qneclab/quadrature.hpp"
#include "qneclab/roots.hpp"
#include "qneclab/util.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace qneclab;
using std::numbers::pi;

TEST_CASE("integrate: polynomials and breakpoints") {
    const QuadResult r = integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(r.converged);

    // |x - 0.3| has a kink; with the breakpoint the rule is exact per piece.
    const double bp[] = {0.3};
    const QuadResult k = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, bp);
    CHECK(std::abs(k.value - (0.045 + 0.245)) < 1e-14);
}

TEST_CASE("integrate: infinite ranges") {
    const QuadResult g = integrate([](double x) { return std::exp(-x * x); },
                                   -std::numeric_limits<double>::infinity(),
                                   std::numeric_limits<double>::infinity());
    CHECK(std::abs(g.value - std::sqrt(pi)) < 1e-10);
    const QuadResult h = integrate([](double x) { return 1.0 / (1.0 + x * x); }, 0.0,
                                   std::numeric_limits<double>::infinity());
    CHECK(std::abs(h.value - pi / 2) < 1e-10);
}

TEST_CASE("integrate: singular and weighted") {
    CHECK(std::abs(integrate_singular([](double x) { return std::log(x); }, 0.0, 1.0).value + 1.0) < 1e-10);
    // int_0^1 x^{-1/2} (1 - x)^{1/2} dx = B(1/2, 3/2) = pi / 2
    const QuadResult w = integrate_algebraic_weight([](double) { return 1.0; }, 0.0, 1.0, -0.5, 0.5);
    CHECK(std::abs(w.value - pi / 2) < 1e-12);
}

TEST_CASE("integrate: integrand exceptions propagate") {
    CHECK_THROWS_AS(integrate([](double) -> double { throw NumericalError("boom"); }, 0.0, 1.0),
                    NumericalError);
}

TEST_CASE("trapezoid is spectrally exact on periodic trigonometric integrands") {
    const double v = trapezoid([](double x) { return std::cos(3 * x) * std::cos(3 * x); }, 0.0, 2 * pi, 64);
    CHECK(std::abs(v - pi) < 1e-13);
}

TEST_CASE("solve_increasing and expand_bracket") {
    const ValueAndSlope cube = [](double x) { return std::pair{x * x * x, 3 * x * x}; };
    CHECK(std::abs(solve_increasing(cube, 2.0, 0.0, 5.0) - std::cbrt(2.0)) < 1e-14);
    // A flat slope forces the bisection fallback.
    const ValueAndSlope flat = [](double x) { return std::pair{std::tanh(x), 0.0}; };
    CHECK(std::abs(solve_increasing(flat, 0.5, -10.0, 10.0) - std::atanh(0.5)) < 1e-12);

    auto [lo, hi] = expand_bracket([](double x) { return x; }, 1000.0, 0.0, 1.0);
    CHECK(lo <= 1000.0);
    CHECK(hi >= 1000.0);
    CHECK_THROWS_AS(expand_bracket([](double x) { return std::tanh(x); }, 2.0, 0.0, 1.0), NumericalError);
}

TEST_CASE("format_double round trips") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, pi}) {
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("wrap_angle") {
    CHECK(std::abs(wrap_angle(3 * pi) - pi) < 1e-12);
    CHECK(std::abs(wrap_angle(-pi / 2 - 4 * pi) + pi / 2) < 1e-12);
}

TEST_CASE("Rng is reproducible") {
    Rng a(7), b(7);
    for (int i = 0; i < 10; ++i) {
        CHECK(a.uniform(-1, 1) == b.uniform(-1, 1));
        const int k = a.integer(1, 4);
        CHECK(k == b.integer(1, 4));
        CHECK(k >= 1);
        CHECK(k <= 4);
    }
}

TEST_CASE("parallel_for covers every index and rethrows the lowest failure") {
    std::vector<int> hit(100, 0);
    parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; }, 4);
    for (int h : hit) CHECK(h == 1);
    try {
        parallel_for(10, [](std::size_t i) {
            if (i == 3 || i == 7) throw std::runtime_error(std::to_string(i));
        }, 3);
        FAIL("expected a throw");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "3");
    }
}
