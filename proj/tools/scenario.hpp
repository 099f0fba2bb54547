#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rhosharp/config.hpp"
#include "rhosharp/errors.hpp"

namespace rhosharp::cli {

// Raw scenario text, structurally validated but not yet bound to a config
// (declaration expressions depend on the cap, which flags may still override).
//
//   # comment
//   CONFIG key=value [key=value ...]           (header only; cap/grid/nodes/seed)
//   DECLARE scalar NAME = <expr>
//   DECLARE set NAME = disc(c, r) | circle(c, r) | annulus(c, r1, r2)
//                    | rectangle(a, b) | segment(a, b)
//   DECLARE func NAME = <expr in z, zbar> | ks_net
//   DECLARE series NAME = geometric | rho_nsq | rho_n_over_log_n
//   DECLARE path NAME = circle(c, r[, cw]) | polyline(v1, ..., vn[, closed])
//   CHECK name: op(arg, ...) EXPECT expectation [TOL x]
//
// Declarations may reference earlier names; later or undeclared ones are
// parse errors, so reference cycles cannot be written at all.
struct Declaration {
    std::string kind;  // scalar | set | func | series | path
    std::string name;
    std::string rhs;
    int line = 0;
};

struct CheckSpec {
    std::string name;
    std::string op;
    std::vector<std::string> args;
    std::string expect;
    std::optional<double> tol;
    int line = 0;
};

struct ConfigOverride {
    std::optional<Rational> cap;
    std::optional<std::pair<int, int>> grid;
    std::optional<int> nodes;
    std::optional<std::uint64_t> seed;  // accepted for interface stability; sampling is fixed

    void apply(Config& cfg) const;
};

struct ScenarioDoc {
    ConfigOverride header;
    std::vector<Declaration> declarations;
    std::vector<CheckSpec> checks;
};

// Throws ScenarioParseError (fatal; exit code 2 at the CLI).
struct ScenarioParseError : Error {
    ScenarioParseError(const std::string& what, int line)
        : Error("line " + std::to_string(line) + ": " + what), line_no(line) {}
    int line_no;
};

ScenarioDoc parse_scenario(std::istream& in);
ScenarioDoc parse_scenario_file(const std::string& path);

struct CheckResult {
    std::string name;
    std::string op;
    std::string expected;
    std::string actual;                // verdict word, number, or canonical expression
    std::string verdict;               // pass | fail | error
    std::vector<std::pair<std::string, std::string>> evidence;
    double ms = 0.0;
};

// Executes checks in declaration order under the merged config. Library
// errors inside one check are recorded and the run continues.
std::vector<CheckResult> run_scenario(const ScenarioDoc& doc, const Config& cfg);

}  // namespace rhosharp::cli
