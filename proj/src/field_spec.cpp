#include "qneclab/field_spec.hpp"

#include "qneclab/error.hpp"

#include <fstream>
#include <sstream>

namespace qneclab {

using nlohmann::json;

namespace {

double number(const json& spec, const char* key) {
    const auto it = spec.find(key);
    if (it == spec.end()) throw SpecError(std::string("field spec: missing '") + key + "'");
    if (!it->is_number()) throw SpecError(std::string("field spec: '") + key + "' must be a number");
    const double v = it->get<double>();
    if (!std::isfinite(v)) throw SpecError(std::string("field spec: '") + key + "' is not finite");
    return v;
}

std::vector<double> numbers(const json& spec, const char* key) {
    const auto it = spec.find(key);
    if (it == spec.end()) return {};
    if (!it->is_array()) throw SpecError(std::string("field spec: '") + key + "' must be an array");
    std::vector<double> out;
    for (const auto& x : *it) {
        if (!x.is_number()) throw SpecError(std::string("field spec: '") + key + "' holds a non-number");
        out.push_back(x.get<double>());
    }
    return out;
}

} // namespace

VectorField field_from_json(const json& spec) {
    if (!spec.is_object()) throw SpecError("field spec: expected a JSON object");
    const auto kind_it = spec.find("kind");
    if (kind_it == spec.end() || !kind_it->is_string()) throw SpecError("field spec: missing string 'kind'");
    const std::string kind = kind_it->get<std::string>();
    try {
        if (kind == "bump") {
            return make_bump(number(spec, "center"), number(spec, "halfwidth"), number(spec, "amplitude"));
        }
        if (kind == "cos2") return make_cos2();
        if (kind == "trigpoly") return make_trigpoly(numbers(spec, "cos"), numbers(spec, "sin"));
        if (kind == "sum") {
            const auto terms = spec.find("terms");
            if (terms == spec.end() || !terms->is_array()) throw SpecError("field spec: sum needs a 'terms' array");
            std::vector<FieldTerm> parts;
            for (const auto& t : *terms) {
                const double coef = t.is_object() && t.contains("coef") ? number(t, "coef") : 1.0;
                parts.push_back({coef, field_from_json(t)});
            }
            return make_sum(std::move(parts));
        }
    } catch (const DomainError& e) {
        throw SpecError(std::string("field spec: ") + e.what());
    }
    throw SpecError("field spec: unknown kind '" + kind + "'");
}

VectorField parse_field_spec(std::string_view text) {
    json spec;
    try {
        spec = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("field spec: invalid JSON: ") + e.what());
    }
    return field_from_json(spec);
}

VectorField load_field_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("field spec: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_field_spec(buf.str());
}

json random_bump_sum_spec(Rng& rng) {
    const int count = rng.integer(1, 4);
    json terms = json::array();
    for (int i = 0; i < count; ++i) {
        const double center = rng.uniform(-3.0, 3.0);
        const double halfwidth = rng.uniform(0.2, 1.0);
        const double amplitude = rng.uniform(-0.5, 0.5);
        terms.push_back({{"kind", "bump"}, {"center", center}, {"halfwidth", halfwidth},
                         {"amplitude", amplitude}, {"coef", 1.0}});
    }
    return {{"kind", "sum"}, {"terms", terms}};
}

json random_trig_spec(Rng& rng, int max_mode, double amp) {
    json c = json::array({0.0}), s = json::array({0.0});
    for (int k = 1; k <= max_mode; ++k) {
        c.push_back(rng.uniform(-amp, amp));
        s.push_back(rng.uniform(-amp, amp));
    }
    return {{"kind", "trigpoly"}, {"cos", c}, {"sin", s}};
}

} // namespace qneclab
