#pragma once

// The qneclab command line: subcommands entropy, flow, counterexample,
// bekenstein, cocycle-check, extensivity and verify.

#include "qneclab/quadrature.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace qneclab::cli {

/// Exit codes: 0 success, 1 verify failure, 2 invalid input, 3 numerical
/// failure or a non-finite output value.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct CounterexampleRow {
    std::string quantity;
    double value = 0.0;
    double target = 0.0;
    double tolerance = 0.0;   // absolute
    bool within = false;
};

/// The cos^2 flow at time 1 checked against arctan(tan u + 1) and the
/// reference values -1, 1.4 and -c/60.
std::vector<CounterexampleRow> counterexample_report(double c, const QuadOptions& quad = {});

} // namespace qneclab::cli
