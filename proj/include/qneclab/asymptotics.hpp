#pragma once

// Approximating sequences for maps with prescribed endpoint derivatives, the
// limit integrals attached to them, and the extensivity defect of half-line
// entropies.

#include "qneclab/diffeo.hpp"
#include "qneclab/entropy.hpp"
#include "qneclab/fields.hpp"
#include "qneclab/flows.hpp"
#include "qneclab/quadrature.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qneclab {

/// A map given on [lo, hi] only, with analytic jets.
struct MapFragment {
    double lo = 0.0;
    double hi = 0.0;
    std::string name;
    std::function<Jet3(double)> jet_fn;

    Jet3 jet(double u) const { return jet_fn(u); }
    double operator()(double u) const { return jet_fn(u).value; }
};

/// h_n(u) = (e^{n L u} - 1)/(n L), L = log r, on [0, 1/n]. r = 1 gives the
/// identity.
MapFragment h_seq(double r, int n);

/// int_0^{1/n} u (h_n''/h_n')^2 du by quadrature; equals (log r)^2 / 2.
Estimate h_seq_integral(double r, int n, const QuadOptions& quad = {});

/// Exponent convention for the constant term of sigma_n.
enum class SigmaExponent {
    /// (1/n)^p with p = log(n/r)/log n, so sigma_n(0) = 0
    consistent,
    /// (1/n)^{log(n/r)/log r} in the constant term; sigma_n(0) != 0 in general
    mixed
};

/// sigma_n(u) = (1/p) [(u + 1/n)^p - (1/n)^q] on [0, 1 - 1/n], p = log(n/r)/log n.
MapFragment sigma_seq(double r, int n, SigmaExponent e = SigmaExponent::consistent);

/// zeta_n(u) = -1/n + int_{-1/n}^u exp(L (1 + n s)^{1/n}) ds on [-1/n, 0].
/// The value is computed by quadrature; derivatives are analytic.
MapFragment zeta_seq(double r, int n);

struct NuLimitRecord {
    int n = 0;
    double i_n = 0.0;
    double j_n = 0.0;
    double quad_err = 0.0;
};

/// I_n and J_n on (0, 3), with the weight in I_n taken as the dilation
/// density of (-1/n, 3 + 1/n).
NuLimitRecord nu_limit_integrals(double r0, double r3, int n, const QuadOptions& quad = {});

/// The glued map rho_n on (a, b): identity outside, a + h_n^{r_a}(u - a) on
/// [a, a + 1/n], b - h_n^{r_b}(b - u) on [b - 1/n, b] and the rescaled
/// gamma = alpha o rho in between, alpha affine with gamma(a) = a,
/// gamma(b) = b. With blend > 0 the two junctions are replaced by a quintic
/// smoothstep blend over windows of that width.
Diffeomorphism glued_sequence_map(const Diffeomorphism& rho, double a, double b, int n,
                                  double blend = 0.0);

struct LimitTrace {
    double r_a = 1.0;
    double r_b = 1.0;
    /// -((log r_a)^2 + (log r_b)^2)/4 + int_a^b D S(rho)
    double limit = 0.0;
    std::vector<int> n;
    /// int_a^b D S(rho_n) with the Schwarzian taken piecewise (a.e.).
    std::vector<double> piecewise;
    /// Same integral for the C2 blended map (window 1/(10 n)).
    std::vector<double> blended;
    double quad_err = 0.0;
};

LimitTrace schwarzian_limit_check(const Diffeomorphism& rho, double a, double b,
                                  const std::vector<int>& ns, bool with_blend = true,
                                  const QuadOptions& quad = {});

/// f'(eta(u)) - f1'(eta1(u)) - f2'(eta2(u)) with f = f1 + f2 and eta, eta_i
/// the time -1 flows.
double extensivity_delta(const VectorField& f1, const VectorField& f2, double u,
                         const FlowConfig& cfg = {});

struct ExtensivityReport {
    double t = 0.0;
    double s_exact = 0.0;
    double eps0 = 0.0, eps1 = 0.0, eps2 = 0.0, eps3 = 0.0;
    double bound = 0.0;
    double quad_err = 0.0;
    bool satisfied = false;
};

/// s_t = S_{f1+f2}(t) - S_{f1}(t) - S_{f2}(t) for the state_vs_vacuum half-line
/// entropy of Exp(f), against eps0 + eps1 + eps2 + eps3. The fields are
/// ordered so that the right end b1 of the first support is the smaller one.
ExtensivityReport extensivity_report(const VectorField& f1, const VectorField& f2, double t,
                                     double c, const QuadOptions& quad = {},
                                     const FlowConfig& cfg = {});

} // namespace qneclab
