#include "qneclab/cocycles.hpp"
#include "qneclab/error.hpp"
#include "qneclab/flows.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace qneclab;
using std::numbers::pi;

namespace {

Diffeomorphism lift(double e, int k, double phase) {
    // theta + e sin(k theta + phase), a degree-one lift for |e k| < 1
    return Diffeomorphism::from_jets(
        [=](double th) {
            const double a = k * th + phase;
            return Jet3{th + e * std::sin(a), 1 + e * k * std::cos(a), -e * k * k * std::sin(a),
                        -e * k * k * k * std::cos(a)};
        },
        Support::everywhere(), "lift", Picture::circle);
}

// The z-picture definition on a trapezoid grid: rho'(z) = e^{i(phi - theta)} phi'
// and d log rho2' by differencing the unwrapped complex log along the grid.
double bott_z(const Diffeomorphism& r1, const Diffeomorphism& r2, int n = 4096) {
    const Diffeomorphism r12 = compose(r1, r2);
    auto logd = [](const Diffeomorphism& r, double th) {
        const Jet3 j = r.jet(th);
        return std::complex<double>(std::log(j.d1), j.value - th);
    };
    const double h = 2 * pi / n;
    std::complex<double> sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double th = i * h;
        const std::complex<double> dlog = (logd(r2, th + h / 2) - logd(r2, th - h / 2)) / h;
        sum += logd(r12, th) * dlog * h;
    }
    return -sum.real() / (48 * pi);
}

} // namespace

TEST_CASE("Bott cocycle against the contour sum") {
    const Diffeomorphism a = lift(0.2, 1, 0.3), b = lift(0.05, 3, -1.0);
    const CocycleValue v = bott_cocycle(a, b);
    CHECK(std::abs(v.value - bott_z(a, b)) < 1e-6);
    CHECK(std::abs(bott_cocycle(b, a).value - bott_z(b, a)) < 1e-6);
    CHECK(v.value != 0.0);
}

TEST_CASE("Bott cocycle: identity and rotations") {
    const Diffeomorphism id = Diffeomorphism::identity(Picture::circle);
    const Diffeomorphism g = lift(0.15, 2, 0.4);
    CHECK(std::abs(bott_cocycle(id, g).value) < 1e-12);
    CHECK(std::abs(bott_cocycle(g, id).value) < 1e-12);
    const Diffeomorphism r1 = Diffeomorphism::affine(1.0, 0.7, Picture::circle);
    const Diffeomorphism r2 = Diffeomorphism::affine(1.0, -1.9, Picture::circle);
    CHECK(std::abs(bott_cocycle(r1, r2).value) < 1e-12);
}

TEST_CASE("coboundary of flows of trigonometric fields") {
    const Diffeomorphism g1 = exponentiate(make_trigpoly({0, 0.2}, {0, 0.1, 0.05}), 1.0);
    const Diffeomorphism g2 = exponentiate(make_trigpoly({0, -0.1, 0.1}, {0, 0.2}), 0.7);
    const Diffeomorphism g3 = lift(0.1, 2, 1.1);
    const CoboundaryRecord r = coboundary_check(g1, g2, g3);
    CHECK(std::abs(r.residual) < 1e-9);
    CHECK(std::abs(r.swapped_combination - 2 * (r.b12 - r.b23)) < 1e-9);
    CHECK(r.residual == doctest::Approx(r.b23 - r.b12_3 + r.b1_23 - r.b12));
}

TEST_CASE("omega on Fourier modes") {
    // -(1/24) sum (k^3 - k)(b^f_k a^g_k - a^f_k b^g_k)
    const std::vector<double> fa{0.3, 0.2, -0.4, 0.1}, fb{0.0, 0.5, 0.25, -0.3};
    const std::vector<double> ga{-1.0, 0.1, 0.6, 0.2}, gb{0.0, -0.2, 0.3, 0.7};
    double expected = 0.0;
    for (int k = 1; k < 4; ++k) expected -= (k * k * k - k) * (fb[k] * ga[k] - fa[k] * gb[k]) / 24.0;
    const VectorField f = make_trigpoly(fa, fb), g = make_trigpoly(ga, gb);
    CHECK(std::abs(central_term_omega(f, g).value - expected) < 1e-12);
    CHECK(std::abs(central_term_omega(g, f).value + expected) < 1e-12);
    // L_{+-1} and L_0 span the Moebius algebra: no central term.
    CHECK(std::abs(central_term_omega(make_trigpoly({1, 1}, {}), make_trigpoly({0}, {0, 1})).value) < 1e-14);
    CHECK_THROWS_AS(central_term_omega(make_bump(0, 1, 1), g), DomainError);
}

TEST_CASE("beta: rotations, linearity and its derivative is -omega") {
    const VectorField g = make_trigpoly({0, 0.3, -0.2}, {0, 0.1, 0.4});
    CHECK(std::abs(anomaly_beta(Diffeomorphism::affine(1.0, 0.4, Picture::circle), g).value) < 1e-14);
    const VectorField f = make_trigpoly({0, 0.1, 0.2, 0.05}, {0, -0.2, 0.1});
    const double s = 1e-3;
    const double d = (anomaly_beta(exponentiate(f, s), g).value - anomaly_beta(exponentiate(f, -s), g).value) / (2 * s);
    CHECK(std::abs(d + central_term_omega(f, g).value) < 1e-6);
}

TEST_CASE("lift branch check") {
    CHECK_NOTHROW(check_lift_branch(lift(0.3, 2, 0.0)));
    const Diffeomorphism twice = Diffeomorphism::from_jets(
        [](double th) { return Jet3{2 * th, 2.0, 0.0, 0.0}; }, Support::everywhere(), "double",
        Picture::circle);
    CHECK_THROWS_AS(check_lift_branch(twice), NumericalError);
}
