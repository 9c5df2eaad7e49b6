#pragma once

// Seeded property suites over random fields and maps. Each property records
// the worst residual it saw against its tolerance.

#include "qneclab/flows.hpp"
#include "qneclab/quadrature.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qneclab {

struct VerifyOptions {
    std::uint64_t seed = 42;
    /// Multiplies every property tolerance. Values below 1 tighten the suite.
    double tol_scale = 1.0;
    /// Random fields per property; each suite scales its own sample counts
    /// from this.
    int samples = 6;
    double central_charge = 1.0;
    QuadOptions quad;
    FlowConfig flow;
};

struct PropertyResult {
    std::string suite;
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    int cases = 0;
    bool pass = false;
    /// Set when a case threw; the property then fails.
    std::string error;
};

/// flows, schwarzian, entropy, cocycles, asymptotics.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws DomainError for an
/// unknown name.
std::vector<PropertyResult> run_suite(std::string_view suite, const VerifyOptions& opts = {});

} // namespace qneclab
