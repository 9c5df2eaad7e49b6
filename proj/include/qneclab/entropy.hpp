#pragma once

// Closed-form relative entropies of diffeomorphism-induced states, their
// derivatives in the cut, vacuum energies and the Bekenstein-type bound.

#include "qneclab/diffeo.hpp"
#include "qneclab/quadrature.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qneclab {

/// state_vs_vacuum is S(omega_V(rho) || omega), vacuum_vs_state is
/// S(omega || omega_V(rho)).
enum class Direction { state_vs_vacuum, vacuum_vs_state };

std::string to_string(Direction d);
Direction parse_direction(std::string_view s);

struct Interval {
    enum class Kind { half_line, bounded };
    Kind kind = Kind::half_line;
    double a = 0.0;
    double b = 0.0;   // unused for half lines

    static Interval half_line(double t);
    static Interval bounded(double a, double b);
};

struct EntropyReport {
    double value = 0.0;
    Direction direction = Direction::state_vs_vacuum;
    Interval interval;
    double central_charge = 1.0;
    double quad_err = 0.0;
};

struct Estimate {
    double value = 0.0;
    double quad_err = 0.0;
};

/// (b - u)(u - a)/(b - a).
double dilation_density(double a, double b, double u);

/// Entropy of the half line (t, inf). With eta = rho^{-1}:
///   state_vs_vacuum: (c/24) int_t^inf (u - t) (eta''/eta')^2 du
///   vacuum_vs_state: (c/24) int_{eta(t)}^inf (u - eta(t)) (rho''/rho')^2 du
/// rho must agree with one affine map on both sides of its hull.
EntropyReport entropy_half_line(const Diffeomorphism& rho, double t, double c,
                                Direction direction = Direction::state_vs_vacuum,
                                const QuadOptions& quad = {});

struct EntropyDerivatives {
    double first = 0.0;
    double second = 0.0;
    double quad_err = 0.0;
};

/// dS/dt and d^2S/dt^2 of entropy_half_line. For state_vs_vacuum,
/// S'' = (c/24)(eta''/eta')^2(t) and S' = -(c/24) int_t^inf (eta''/eta')^2.
EntropyDerivatives entropy_half_line_derivatives(const Diffeomorphism& rho, double t, double c,
                                                 Direction direction = Direction::state_vs_vacuum,
                                                 const QuadOptions& quad = {});

/// The vacuum_vs_state derivatives at the cut s = rho(t), scaled by powers of
/// rho'(t):
///   first  = S'(rho(t)) rho'(t)    = -(c/24) int_t^inf (rho''/rho')^2
///   second = S''(rho(t)) rho'(t)^2 = (c/24) q(t) [q(t) + int_t^inf q^2],
/// q = rho''/rho'.
EntropyDerivatives entropy_exchanged_derivative_formula(const Diffeomorphism& rho, double t,
                                                        double c, const QuadOptions& quad = {});

/// Entropy of the bounded interval (a, b):
///   vacuum_vs_state: -(c/12) int_{eta(a)}^{eta(b)} D S(rho)
///                    + (c/12) log(rho'(eta(a)) rho'(eta(b)))
///                    + (c/12) log(((eta(b) - eta(a))/(b - a))^2)
///   state_vs_vacuum: -(c/12) int_a^b D S(eta) + (c/12) log(eta'(a) eta'(b))
///                    - (c/12) log(((eta(b) - eta(a))/(b - a))^2)
/// where D is the dilation density of the integration interval.
EntropyReport entropy_interval(const Diffeomorphism& rho, double a, double b, double c,
                               Direction direction = Direction::vacuum_vs_state,
                               const QuadOptions& quad = {});

struct FixedEndpointForms {
    /// (c/24) int D (rho''/rho')^2 + (c/6)/(b-a) int log rho'
    double form1 = 0.0;
    /// -(c/12) int D S(rho) + (c/12) log(rho'(a) rho'(b))
    double form2 = 0.0;
    /// (1/(b-a)) int_a^b log rho', never positive when rho fixes a and b.
    double jensen = 0.0;
    double quad_err = 0.0;
};

/// Both fixed-endpoint expressions; rho(a) = a and rho(b) = b are required
/// to 1e-10.
FixedEndpointForms entropy_interval_fixed_endpoint_forms(const Diffeomorphism& rho, double a,
                                                         double b, double c,
                                                         const QuadOptions& quad = {});

/// vacuum_vs_state: E = (c/48 pi) int (rho''/rho')^2; state_vs_vacuum: the
/// same with eta = rho^{-1}.
Estimate vacuum_energy(const Diffeomorphism& rho, double c,
                       Direction direction = Direction::vacuum_vs_state,
                       const QuadOptions& quad = {});

struct BekensteinRecord {
    double r = 0.0;
    double entropy = 0.0;      // S on (-r, r)
    double energy = 0.0;       // E
    double bound = 0.0;        // pi r E
    double margin = 0.0;       // pi r E - S
    double quad_err = 0.0;
    bool pass = false;         // margin >= -quad_err
};

BekensteinRecord bekenstein_check(const Diffeomorphism& rho, double r, double c,
                                  Direction direction = Direction::vacuum_vs_state,
                                  const QuadOptions& quad = {});

/// bekenstein_check over several radii, sharing one energy quadrature.
std::vector<BekensteinRecord> bekenstein_sweep(const Diffeomorphism& rho,
                                               const std::vector<double>& radii, double c,
                                               Direction direction = Direction::vacuum_vs_state,
                                               const QuadOptions& quad = {});

/// (c/24 pi) int_t^{t2} (eta''/eta')^2.
Estimate qnec_energy_density(const Diffeomorphism& rho, double t, double t2, double c,
                             const QuadOptions& quad = {});

} // namespace qneclab
