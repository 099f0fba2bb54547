#include "scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "expr.hpp"
#include "rhosharp/analytic.hpp"
#include "rhosharp/contour.hpp"
#include "rhosharp/onsets.hpp"

namespace rhosharp::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool is_identifier(const std::string& s) {
    if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_'))
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

// Comma split at parenthesis depth zero.
std::vector<std::string> split_args(const std::string& s, int line) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth < 0) throw ScenarioParseError("unbalanced ')'", line);
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (depth != 0) throw ScenarioParseError("unbalanced '('", line);
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    for (const auto& a : out)
        if (a.empty()) throw ScenarioParseError("empty argument", line);
    return out;
}

// NAME(arg, ...) with the ')' closing the line.
struct Call {
    std::string name;
    std::vector<std::string> args;
};

Call parse_call(const std::string& s, int line) {
    std::size_t open = s.find('(');
    if (open == std::string::npos || s.back() != ')')
        throw ScenarioParseError("expected NAME(arg, ...), got '" + s + "'", line);
    Call c;
    c.name = trim(s.substr(0, open));
    if (!is_identifier(c.name))
        throw ScenarioParseError("'" + c.name + "' is not a valid name", line);
    c.args = split_args(s.substr(open + 1, s.size() - open - 2), line);
    return c;
}

const std::set<std::string> kReserved = {
    "i",          "rho",        "z",          "zbar",     "exact",
    "quad",       "closed",     "cw",         "ccw",      "bounded",
    "poly",       "inf",        "divergent",  "ks_net",   "geometric",
    "rho_nsq",    "rho_n_over_log_n",         "disc",     "circle",
    "annulus",    "rectangle",  "segment",    "polyline", "yes",
    "no",         "undecided",  "negligible", "moderate", "neither",
    "less",       "greater",    "equivalent", "incomparable",
    "holds",      "violated",   "equal",      "unequal",
    "not_holomorphic", "leaves_domain",       "zero",
    "fails_at_order",  "hypothesis_fails"};

enum class ArgKind { ScalarLike, FuncLike, SetName, SeriesName, PathName, Int, Double, Mode, GrowthKind };
enum class ResultKind { Verdict, Number, Scalar };

struct OpSig {
    std::vector<ArgKind> fixed;
    int optional = 0;            // trailing fixed entries that may be omitted
    bool variadic_scalars = false;  // unicity zero list
    ResultKind result = ResultKind::Verdict;
    std::set<std::string> words;  // admissible verdicts
    double default_tol = 1e-9;
};

const std::map<std::string, OpSig>& op_table() {
    using A = ArgKind;
    static const std::map<std::string, OpSig> t = {
        {"classify", {{A::ScalarLike}, 0, false, ResultKind::Verdict,
                      {"negligible", "moderate", "neither"}}},
        {"compare", {{A::ScalarLike, A::ScalarLike}, 0, false, ResultKind::Verdict,
                     {"less", "greater", "equivalent", "incomparable"}}},
        {"invertible", {{A::ScalarLike}, 0, false, ResultKind::Verdict, {"yes", "no"}}},
        {"valuation", {{A::ScalarLike}, 0, false, ResultKind::Number, {}, 0.05}},
        {"sharp_norm", {{A::ScalarLike}, 0, false, ResultKind::Number, {}}},
        {"equal", {{A::ScalarLike, A::ScalarLike}, 0, false, ResultKind::Verdict, {"yes", "no"}}},
        {"sum", {{A::SeriesName, A::ScalarLike}, 0, false, ResultKind::Scalar, {"divergent"}}},
        {"radius", {{A::SeriesName}, 0, false, ResultKind::Number, {"inf"}}},
        {"membership", {{A::SetName, A::ScalarLike}, 0, false, ResultKind::Verdict,
                        {"yes", "no", "undecided"}}},
        {"holomorphic", {{A::FuncLike, A::SetName}, 0, false, ResultKind::Verdict, {"yes", "no"}}},
        {"ginfty", {{A::FuncLike, A::SetName}, 0, false, ResultKind::Verdict, {"yes", "no"}}},
        {"integral", {{A::FuncLike, A::PathName, A::Mode}, 1, false, ResultKind::Verdict,
                      {"negligible", "moderate", "neither"}}},
        {"cauchy_formula", {{A::FuncLike, A::ScalarLike, A::ScalarLike, A::ScalarLike, A::Int},
                            0, false, ResultKind::Verdict, {"yes", "no"}}},
        {"cauchy_estimate",
         {{A::FuncLike, A::ScalarLike, A::ScalarLike, A::ScalarLike, A::Int, A::Double},
          1, false, ResultKind::Verdict, {"holds", "violated"}}},
        {"homotopy", {{A::FuncLike, A::PathName, A::PathName}, 0, false, ResultKind::Verdict,
                      {"equal", "unequal", "not_holomorphic", "leaves_domain"}}},
        {"growth", {{A::FuncLike, A::GrowthKind, A::Int}, 1, false, ResultKind::Verdict,
                    {"holds", "violated"}}},
        {"unicity", {{A::FuncLike, A::ScalarLike, A::Double}, 0, true, ResultKind::Verdict,
                     {"zero", "fails_at_order", "hypothesis_fails"}}},
    };
    return t;
}

bool parses_as_int(const std::string& s) {
    if (s.empty()) return false;
    char* end = nullptr;
    std::strtol(s.c_str(), &end, 10);
    return end && *end == '\0';
}

bool parses_as_double(const std::string& s) {
    if (s.empty()) return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end && *end == '\0';
}

// ---- structural validation against names declared so far -------------------

void check_arg(ArgKind kind, const std::string& arg,
               const std::map<std::string, std::string>& declared, int line) {
    auto decl = declared.find(arg);
    std::string have = decl == declared.end() ? "" : decl->second;
    auto expect_decl = [&](const char* want) {
        if (have != want)
            throw ScenarioParseError("'" + arg + "' must be a declared " + want +
                                         (have.empty() ? " (not declared)" : " (it is a " + have + ")"),
                                     line);
    };
    switch (kind) {
        case ArgKind::SetName: expect_decl("set"); return;
        case ArgKind::SeriesName: expect_decl("series"); return;
        case ArgKind::PathName: expect_decl("path"); return;
        case ArgKind::Mode:
            if (arg != "exact" && arg != "quad")
                throw ScenarioParseError("mode must be 'exact' or 'quad'", line);
            return;
        case ArgKind::GrowthKind:
            if (arg != "bounded" && arg != "poly")
                throw ScenarioParseError("growth claim must be 'bounded' or 'poly'", line);
            return;
        case ArgKind::Int:
            if (!parses_as_int(arg))
                throw ScenarioParseError("'" + arg + "' is not an integer", line);
            return;
        case ArgKind::Double:
            if (!parses_as_double(arg))
                throw ScenarioParseError("'" + arg + "' is not a number", line);
            return;
        case ArgKind::FuncLike:
            if (have == "func" || have == "scalar") return;
            if (!have.empty())
                throw ScenarioParseError("'" + arg + "' is a " + have + ", not a function", line);
            if (is_identifiers_only(arg, declared, line)) return;  // placeholder, see below
            return;
        case ArgKind::ScalarLike:
            if (have == "scalar") return;
            if (!have.empty())
                throw ScenarioParseError("'" + arg + "' is a " + have + ", not a scalar", line);
            return;
    }
}

}  // namespace
}  // namespace rhosharp::cli
