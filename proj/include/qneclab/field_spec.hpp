#pragma once

// JSON field descriptions and the seeded random field generators used by the
// property suites.

#include "qneclab/fields.hpp"
#include "qneclab/util.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace qneclab {

/// {"kind":"bump","center":x,"halfwidth":w,"amplitude":a}, {"kind":"cos2"},
/// {"kind":"sum","terms":[{<spec>, "coef":c}, ...]} (coef defaults to 1),
/// {"kind":"trigpoly","cos":[...],"sin":[...]}. Throws SpecError.
VectorField field_from_json(const nlohmann::json& spec);
VectorField parse_field_spec(std::string_view text);
VectorField load_field_spec(const std::string& path);

/// Sum of 1-4 bumps: centers in [-3, 3], halfwidths in [0.2, 1], amplitudes
/// in [-0.5, 0.5].
nlohmann::json random_bump_sum_spec(Rng& rng);

/// Trig polynomial with modes 1..max_mode and coefficients in [-amp, amp].
nlohmann::json random_trig_spec(Rng& rng, int max_mode = 3, double amp = 0.3);

} // namespace qneclab
