#include "cli.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "qneclab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = qneclab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(QNECLAB_TEST_DATA) + "/" + name; }

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

} // namespace

TEST_CASE("flow of cos^2 at u = 0 is pi/4") {
    const Run r = run({"flow", "--field", data("cos2.json"), "--t", "1", "--u", "0"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "u,t,value,derivative1,derivative2,derivative3");
    const std::string value = ls[1].substr(4, ls[1].find(',', 4) - 4);
    CHECK(std::abs(std::stod(value) - std::numbers::pi / 4) < 1e-10);
}

TEST_CASE("entropy scan: row count, header and nonnegative S''") {
    const Run r = run({"entropy", "--field", data("cos2.json"), "--kind", "half-line", "--t0", "-2", "--t1",
                       "2", "--steps", "81"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 82);
    CHECK(ls[0] == "t_or_r,value,derivative1,derivative2,quad_err");
    for (std::size_t i = 1; i < ls.size(); ++i) {
        std::istringstream row(ls[i]);
        std::string cell;
        for (int k = 0; k < 4; ++k) std::getline(row, cell, ',');
        CHECK(std::stod(cell) >= 0.0);
    }
}

TEST_CASE("entropy scan of the zero field is all zeros") {
    const Run r = run({"entropy", "--field", data("identity.json"), "--steps", "5"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 6);
    CHECK(ls[3] == "0,0,0,0,0");
}

TEST_CASE("interval scan margins are nonnegative") {
    const Run r = run({"entropy", "--field", data("cos2.json"), "--kind", "interval", "--t0", "0.25", "--t1",
                       "3", "--steps", "12", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"margin\"") != std::string::npos);
    CHECK(r.out.find("\"margin\": -") == std::string::npos);
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> cmd{"bekenstein", "--fields", "2", "--radii", "0.5,2", "--seed", "5"};
    const Run a = run(cmd), b = run(cmd);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(lines(a.out).size() == 9);
}

TEST_CASE("cocycle-check: identity triple and random triples") {
    const Run id = run({"cocycle-check", "--identity"});
    REQUIRE(id.code == 0);
    CHECK(id.out.find("\"coboundary_residual\": 0.0") != std::string::npos);
    const Run rnd = run({"cocycle-check", "--triples", "3", "--seed", "7", "--format", "csv"});
    REQUIRE(rnd.code == 0);
    CHECK(lines(rnd.out).size() == 4);
}

TEST_CASE("extensivity with disjoint bumps") {
    const Run r = run({"extensivity", "--field1", data("bump_left.json"), "--field2", data("bump_right.json"),
                       "--steps", "5"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    CHECK(ls[0] == "t,s_exact,eps0,eps1,eps2,eps3,bound,satisfied");
    for (std::size_t i = 1; i < ls.size(); ++i) {
        CHECK(ls[i].substr(ls[i].rfind(',') + 1) == "true");
        std::istringstream row(ls[i]);
        std::string t, s;
        std::getline(row, t, ',');
        std::getline(row, s, ',');
        CHECK(std::abs(std::stod(s)) < 1e-8);
    }
}

TEST_CASE("counterexample report") {
    const Run r = run({"counterexample", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"integral_0_pi_2\"") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"entropy", "--field", "/nonexistent.json"}).code == 2);
    CHECK(run({"entropy", "--field", data("bad.json")}).code == 2);
    CHECK(run({"entropy", "--field", data("cos2.json"), "--c", "-1"}).code == 2);
    CHECK(run({"entropy", "--field", data("cos2.json"), "--kind", "interval", "--t0", "-1", "--t1", "1"}).code == 2);
    const Run v = run({"verify", "flows", "--samples", "2", "--tol-scale", "1e-30"});
    CHECK(v.code == 1);
    CHECK(v.err.find("properties passed") != std::string::npos);
}
