#include "cli.hpp"

#include "qneclab/asymptotics.hpp"
#include "qneclab/cocycles.hpp"
#include "qneclab/entropy.hpp"
#include "qneclab/error.hpp"
#include "qneclab/field_spec.hpp"
#include "qneclab/flows.hpp"
#include "qneclab/util.hpp"
#include "qneclab/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <variant>

namespace qneclab::cli {

namespace {

using std::numbers::pi;
using nlohmann::json;

struct RunConfig {
    double central_charge = 1.0;
    double quad_tol = 1e-10;
    double ode_abs_tol = 1e-12;
    double ode_rel_tol = 1e-10;
    std::string format;   // empty: the command's default
    std::string out_path;
    std::uint64_t seed = 42;

    QuadOptions quad() const {
        QuadOptions q;
        q.abs_tol = quad_tol;
        return q;
    }
    FlowConfig flow() const {
        FlowConfig f;
        f.abs_tol = ode_abs_tol;
        f.rel_tol = ode_rel_tol;
        return f;
    }
};

/// Exit code 1.
struct VerifyFailure {};

using Cell = std::variant<double, std::string, bool, long long>;

struct Table {
    std::string operation;
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
    if (auto d = std::get_if<double>(&c)) return format_double(*d == 0.0 ? 0.0 : *d);
    if (auto s = std::get_if<std::string>(&c)) return *s;
    if (auto b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return std::to_string(std::get<long long>(c));
}

json cell_json(const Cell& c) {
    if (auto d = std::get_if<double>(&c)) return *d == 0.0 ? 0.0 : *d;
    if (auto s = std::get_if<std::string>(&c)) return *s;
    if (auto b = std::get_if<bool>(&c)) return *b;
    return std::get<long long>(c);
}

/// Throws NumericalError naming the row if any number is NaN or infinite.
void require_finite(const Table& t) {
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t k = 0; k < t.rows[r].size(); ++k) {
            const auto* d = std::get_if<double>(&t.rows[r][k]);
            if (d && !std::isfinite(*d)) {
                std::ostringstream os;
                os << t.operation << ": non-finite " << t.header[k] << " in row " << r;
                if (!t.rows[r].empty()) os << " (" << t.header[0] << "=" << cell_text(t.rows[r][0]) << ")";
                throw NumericalError(os.str());
            }
        }
    }
}

std::string render(const Table& t, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        json arr = json::array();
        for (const auto& row : t.rows) {
            json obj = json::object();
            for (std::size_t k = 0; k < row.size(); ++k) obj[t.header[k]] = cell_json(row[k]);
            arr.push_back(std::move(obj));
        }
        os << arr.dump(2) << '\n';
        return os.str();
    }
    for (std::size_t k = 0; k < t.header.size(); ++k) os << (k ? "," : "") << t.header[k];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << cell_text(row[k]);
        os << '\n';
    }
    return os.str();
}

void write_text(const std::string& text, const RunConfig& cfg, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file '" + cfg.out_path + "'");
    f << text;
}

void emit(const Table& t, const RunConfig& cfg, const std::string& default_format, std::ostream& out) {
    require_finite(t);
    write_text(render(t, cfg.format.empty() ? default_format : cfg.format), cfg, out);
}

std::vector<double> grid(double t0, double t1, int steps) {
    if (steps < 1) throw DomainError("--steps must be at least 1");
    std::vector<double> g(steps);
    for (int i = 0; i < steps; ++i) g[i] = steps == 1 ? t0 : t0 + (t1 - t0) * i / (steps - 1);
    return g;
}

/// Rows computed in parallel; failures are reported with the operation and
/// the grid point.
std::vector<std::vector<Cell>> scan(const std::string& op, const std::vector<double>& pts,
                                    const std::function<std::vector<Cell>(double)>& row) {
    std::vector<std::vector<Cell>> rows(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        try {
            rows[i] = row(pts[i]);
        } catch (const NumericalError& e) {
            std::ostringstream os;
            os << op << " at " << format_double(pts[i]) << ": " << e.what();
            throw NumericalError(os.str());
        }
    });
    return rows;
}

VectorField require_field(const std::string& path, const char* flag) {
    if (path.empty()) throw DomainError(std::string(flag) + " is required");
    return load_field_spec(path);
}

// ---------------------------------------------------------------- entropy

struct EntropyArgs {
    std::string field;
    std::string kind = "half-line";
    std::string direction = "state_vs_vacuum";
    double t0 = -2.0, t1 = 2.0;
    int steps = 81;
};

void cmd_entropy(const EntropyArgs& a, const RunConfig& cfg, std::ostream& out) {
    const VectorField f = require_field(a.field, "--field");
    const Direction dir = parse_direction(a.direction);
    const Diffeomorphism rho = exponentiate(f, 1.0, cfg.flow());
    const double c = cfg.central_charge;
    const QuadOptions q = cfg.quad();
    Table t;
    if (a.kind == "half-line") {
        t.operation = "entropy_half_line";
        t.header = {"t_or_r", "value", "derivative1", "derivative2", "quad_err"};
        t.rows = scan(t.operation, grid(a.t0, a.t1, a.steps), [&](double x) -> std::vector<Cell> {
            const EntropyReport s = entropy_half_line(rho, x, c, dir, q);
            const EntropyDerivatives d = entropy_half_line_derivatives(rho, x, c, dir, q);
            return {x, s.value, d.first, d.second, s.quad_err + d.quad_err};
        });
    } else if (a.kind == "interval") {
        // Intervals (-r, r); r derivatives by five-point differences.
        t.operation = "entropy_interval";
        t.header = {"t_or_r", "value", "derivative1", "derivative2", "quad_err", "energy", "margin"};
        const Estimate e = vacuum_energy(rho, c, dir, q);
        t.rows = scan(t.operation, grid(a.t0, a.t1, a.steps), [&](double r) -> std::vector<Cell> {
            if (!(r > 0.0)) throw DomainError("interval scans need r > 0 (got " + format_double(r) + ")");
            auto s = [&](double x) { return entropy_interval(rho, -x, x, c, dir, q); };
            const double h = 0.01 * r;
            const EntropyReport s0 = s(r);
            const double p1 = s(r + h).value, m1 = s(r - h).value;
            const double p2 = s(r + 2 * h).value, m2 = s(r - 2 * h).value;
            const double d1 = (-p2 + 8 * p1 - 8 * m1 + m2) / (12 * h);
            const double d2 = (-p2 + 16 * p1 - 30 * s0.value + 16 * m1 - m2) / (12 * h * h);
            return {r, s0.value, d1, d2, s0.quad_err + pi * r * e.quad_err, e.value,
                    pi * r * e.value - s0.value};
        });
    } else {
        throw DomainError("--kind must be half-line or interval");
    }
    emit(t, cfg, "csv", out);
}

// ---------------------------------------------------------------- flow

struct FlowArgs {
    std::string field;
    double t = 1.0;
    std::optional<double> u;
    double u0 = -2.0, u1 = 2.0;
    int steps = 41;
};

void cmd_flow(const FlowArgs& a, const RunConfig& cfg, std::ostream& out) {
    const VectorField f = require_field(a.field, "--field");
    const FlowConfig fc = cfg.flow();
    Table t;
    t.operation = "flow_jet";
    t.header = {"u", "t", "value", "derivative1", "derivative2", "derivative3"};
    const std::vector<double> pts = a.u ? std::vector<double>{*a.u} : grid(a.u0, a.u1, a.steps);
    t.rows = scan(t.operation, pts, [&](double u) -> std::vector<Cell> {
        const Jet3 j = flow_jet(f, a.t, u, fc);
        return {u, a.t, j.value, j.d1, j.d2, j.d3};
    });
    emit(t, cfg, "csv", out);
}

// ---------------------------------------------------------------- counterexample

void cmd_counterexample(const RunConfig& cfg, std::ostream& out) {
    Table t;
    t.operation = "counterexample";
    t.header = {"quantity", "value", "target", "tolerance", "within"};
    for (const CounterexampleRow& r : counterexample_report(cfg.central_charge, cfg.quad())) {
        t.rows.push_back({r.quantity, r.value, r.target, r.tolerance, r.within});
    }
    emit(t, cfg, "csv", out);
}

// ---------------------------------------------------------------- bekenstein

struct BekensteinArgs {
    std::string field;
    int fields = 50;
    std::vector<double> radii{0.5, 1.0, 2.0, 4.0};
};

void cmd_bekenstein(const BekensteinArgs& a, const RunConfig& cfg, std::ostream& out) {
    std::vector<VectorField> fields;
    std::vector<std::string> names;
    if (!a.field.empty()) {
        fields.push_back(load_field_spec(a.field));
        names.push_back(a.field);
    } else {
        if (a.fields < 1) throw DomainError("--fields must be at least 1");
        Rng rng(cfg.seed);
        for (int i = 0; i < a.fields; ++i) {
            fields.push_back(field_from_json(random_bump_sum_spec(rng)));
            names.push_back("random_" + std::to_string(i));
        }
    }
    for (double r : a.radii) {
        if (!(r > 0.0)) throw DomainError("--radii must be positive");
    }
    const Direction dirs[] = {Direction::vacuum_vs_state, Direction::state_vs_vacuum};
    std::vector<std::vector<std::vector<Cell>>> blocks(fields.size());
    parallel_for(fields.size(), [&](std::size_t i) {
        const Diffeomorphism rho = exponentiate(fields[i], 1.0, cfg.flow());
        for (Direction d : dirs) {
            for (const BekensteinRecord& r :
                 bekenstein_sweep(rho, a.radii, cfg.central_charge, d, cfg.quad())) {
                blocks[i].push_back({names[i], to_string(d), r.r, r.entropy, r.energy, r.bound,
                                     r.margin, r.quad_err, r.pass});
            }
        }
    });
    Table t;
    t.operation = "bekenstein_check";
    t.header = {"field", "direction", "r", "entropy", "energy", "bound", "margin", "quad_err", "pass"};
    for (auto& b : blocks) {
        for (auto& row : b) t.rows.push_back(std::move(row));
    }
    emit(t, cfg, "csv", out);
}

// ---------------------------------------------------------------- cocycle-check

struct CocycleArgs {
    int triples = 1;
    bool identity = false;
    std::string field;   // optional circle field: g_i = Exp(t_i f)
};

void cmd_cocycle(const CocycleArgs& a, const RunConfig& cfg, std::ostream& out) {
    if (a.triples < 1) throw DomainError("--triples must be at least 1");
    Rng rng(cfg.seed);
    std::optional<VectorField> fixed;
    if (!a.field.empty()) {
        fixed = load_field_spec(a.field);
        if (fixed->picture() != Picture::circle) throw DomainError("cocycle-check needs a circle field");
    }
    auto draw = [&]() {
        if (a.identity) return Diffeomorphism::identity(Picture::circle);
        const VectorField f = fixed ? *fixed : field_from_json(random_trig_spec(rng));
        return exponentiate(f, rng.uniform(-1.0, 1.0), cfg.flow());
    };
    Table t;
    t.operation = "coboundary_check";
    t.header = {"B12", "B12_3", "B1_23", "B23", "coboundary_residual", "swapped_combination", "quad_err"};
    for (int i = 0; i < a.triples; ++i) {
        const Diffeomorphism g1 = draw(), g2 = draw(), g3 = draw();
        const CoboundaryRecord r = coboundary_check(g1, g2, g3, cfg.quad());
        t.rows.push_back({r.b12, r.b12_3, r.b1_23, r.b23, r.residual, r.swapped_combination, r.quad_err});
    }
    const std::string format = cfg.format.empty() ? "json" : cfg.format;
    if (format == "json" && t.rows.size() == 1) {
        require_finite(t);
        json obj = json::object();
        for (std::size_t k = 0; k < t.header.size(); ++k) obj[t.header[k]] = cell_json(t.rows[0][k]);
        write_text(obj.dump(2) + "\n", cfg, out);
        return;
    }
    emit(t, cfg, format, out);
}

// ---------------------------------------------------------------- extensivity

struct ExtensivityArgs {
    std::string field1, field2;
    std::optional<double> t0, t1;
    int steps = 21;
};

void cmd_extensivity(const ExtensivityArgs& a, const RunConfig& cfg, std::ostream& out) {
    const VectorField f1 = require_field(a.field1, "--field1");
    const VectorField f2 = require_field(a.field2, "--field2");
    // Default grid: the first support, up to its right end.
    const Support s1 = f1.support(), s2 = f2.support();
    const Support first = s1.empty || (!s2.empty && s2.hi < s1.hi) ? s2 : s1;
    if (first.empty && (!a.t0 || !a.t1)) throw DomainError("extensivity: give --t0 and --t1 for zero fields");
    const double t0 = a.t0.value_or(first.lo), t1 = a.t1.value_or(first.hi);
    Table t;
    t.operation = "extensivity_report";
    t.header = {"t", "s_exact", "eps0", "eps1", "eps2", "eps3", "bound", "satisfied"};
    t.rows = scan(t.operation, grid(t0, t1, a.steps), [&](double x) -> std::vector<Cell> {
        const ExtensivityReport r = extensivity_report(f1, f2, x, cfg.central_charge, cfg.quad(), cfg.flow());
        return {x, r.s_exact, r.eps0, r.eps1, r.eps2, r.eps3, r.bound, r.satisfied};
    });
    emit(t, cfg, "csv", out);
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite = "all";
    int samples = 6;
    double tol_scale = 1.0;
};

void cmd_verify(const VerifyArgs& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    VerifyOptions o;
    o.seed = cfg.seed;
    o.samples = a.samples;
    o.tol_scale = a.tol_scale;
    o.central_charge = cfg.central_charge;
    o.quad = cfg.quad();
    o.flow = cfg.flow();
    const std::vector<PropertyResult> res = run_suite(a.suite, o);
    Table t;
    t.operation = "verify";
    t.header = {"suite", "property", "cases", "max_residual", "tolerance", "pass", "error"};
    int failed = 0;
    for (const PropertyResult& p : res) {
        // An infinite residual is a failed property, not a broken run.
        const double resid = std::isfinite(p.max_residual) ? p.max_residual : 1e308;
        t.rows.push_back({p.suite, p.name, static_cast<long long>(p.cases), resid, p.tolerance, p.pass, p.error});
        failed += p.pass ? 0 : 1;
    }
    emit(t, cfg, "csv", out);
    err << res.size() - failed << "/" << res.size() << " properties passed\n";
    if (failed) throw VerifyFailure{};
}

} // namespace

std::vector<CounterexampleRow> counterexample_report(double c, const QuadOptions& quad) {
    const VectorField f = make_cos2();
    const Diffeomorphism rho = exponentiate(f, 1.0);
    std::vector<CounterexampleRow> out;

    double resid = 0.0;
    for (int i = 1; i < 200; ++i) {
        const double u = -pi / 2 + pi * i / 200.0;
        resid = std::max(resid, std::abs(rho(u) - std::atan(std::tan(u) + 1.0)));
    }
    out.push_back({"arctan_residual", resid, 0.0, 1e-8, resid <= 1e-8});

    const double ratio = log_derivative_ratio(rho, 0.0);
    out.push_back({"ratio_at_0", ratio, -1.0, 1e-6, std::abs(ratio + 1.0) <= 1e-6});

    const QuadResult in = integrate(
        [&rho](double u) {
            const double q = log_derivative_ratio(rho, u);
            return q * q;
        },
        0.0, pi / 2, {}, quad);
    out.push_back({"integral_0_pi_2", in.value, 1.4, 0.05, std::abs(in.value - 1.4) <= 0.05});

    // S'' of the vacuum_vs_state half-line entropy at the cut rho(0) = pi/4.
    const double s2 = entropy_half_line_derivatives(rho, pi / 4, c, Direction::vacuum_vs_state, quad).second / 4;
    const double target = -c / 60.0;
    out.push_back({"second_derivative_quarter", s2, target, 0.05 * std::abs(target),
                   std::abs(s2 - target) <= 0.05 * std::abs(target)});
    const double ex = entropy_exchanged_derivative_formula(rho, 0.0, c, quad).second;
    out.push_back({"second_derivative_exchanged", ex, target, 0.05 * std::abs(target),
                   std::abs(ex - target) <= 0.05 * std::abs(target)});
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Relative entropy, flow and cocycle numerics for diffeomorphism states"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto common = [&cfg](CLI::App* s) {
        s->add_option("--c", cfg.central_charge, "central charge")->check(CLI::PositiveNumber);
        s->add_option("--quad-tol", cfg.quad_tol, "absolute quadrature tolerance")->check(CLI::PositiveNumber);
        s->add_option("--ode-abs-tol", cfg.ode_abs_tol, "ODE absolute tolerance")->check(CLI::PositiveNumber);
        s->add_option("--ode-rel-tol", cfg.ode_rel_tol, "ODE relative tolerance")->check(CLI::PositiveNumber);
        s->add_option("--seed", cfg.seed, "seed for randomized runs");
        s->add_option("--out", cfg.out_path, "write output here instead of stdout");
        s->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    EntropyArgs ea;
    auto* en = app.add_subcommand("entropy", "half-line or interval entropy scan");
    common(en);
    en->add_option("--field", ea.field, "JSON field spec")->required();
    en->add_option("--kind", ea.kind)->check(CLI::IsMember({"half-line", "interval"}));
    en->add_option("--direction", ea.direction)->check(CLI::IsMember({"state_vs_vacuum", "vacuum_vs_state"}));
    en->add_option("--t0", ea.t0, "first grid point (t, or r for intervals)");
    en->add_option("--t1", ea.t1, "last grid point");
    en->add_option("--steps", ea.steps, "grid points");

    FlowArgs fa;
    auto* fl = app.add_subcommand("flow", "jets of Exp(t f)");
    common(fl);
    fl->add_option("--field", fa.field, "JSON field spec")->required();
    fl->add_option("--t", fa.t, "flow time");
    fl->add_option("--u", fa.u, "single point");
    fl->add_option("--u0", fa.u0);
    fl->add_option("--u1", fa.u1);
    fl->add_option("--steps", fa.steps);

    auto* ce = app.add_subcommand("counterexample", "the cos^2 flow checks");
    common(ce);

    BekensteinArgs ba;
    auto* be = app.add_subcommand("bekenstein", "S(r) <= pi r E on (-r, r), both directions");
    common(be);
    be->add_option("--field", ba.field, "JSON field spec; random bump sums if absent");
    be->add_option("--fields", ba.fields, "number of random fields");
    be->add_option("--radii", ba.radii, "radii")->delimiter(',');

    CocycleArgs ca;
    auto* co = app.add_subcommand("cocycle-check", "Bott cocycle coboundary on circle maps");
    common(co);
    co->add_option("--triples", ca.triples, "random triples");
    co->add_flag("--identity", ca.identity, "use the identity triple");
    co->add_option("--field", ca.field, "circle field spec; maps are Exp(t f) with random t");

    ExtensivityArgs xa;
    auto* ex = app.add_subcommand("extensivity", "S_{f1+f2} - S_{f1} - S_{f2} against its bound");
    common(ex);
    ex->add_option("--field1", xa.field1)->required();
    ex->add_option("--field2", xa.field2)->required();
    ex->add_option("--t0", xa.t0);
    ex->add_option("--t1", xa.t1);
    ex->add_option("--steps", xa.steps);

    VerifyArgs va;
    auto* ve = app.add_subcommand("verify", "seeded property suites");
    common(ve);
    ve->add_option("suite", va.suite, "flows, schwarzian, entropy, cocycles, asymptotics or all")
        ->check(CLI::IsMember({"flows", "schwarzian", "entropy", "cocycles", "asymptotics", "all"}));
    ve->add_option("--samples", va.samples, "random cases per property")->check(CLI::PositiveNumber);
    ve->add_option("--tol-scale", va.tol_scale, "multiplies every tolerance")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (*en) cmd_entropy(ea, cfg, out);
        if (*fl) cmd_flow(fa, cfg, out);
        if (*ce) cmd_counterexample(cfg, out);
        if (*be) cmd_bekenstein(ba, cfg, out);
        if (*co) cmd_cocycle(ca, cfg, out);
        if (*ex) cmd_extensivity(xa, cfg, out);
        if (*ve) cmd_verify(va, cfg, out, err);
    } catch (const VerifyFailure&) {
        return 1;
    } catch (const SpecError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

} // namespace qneclab::cli
