#pragma once

// Batch verification runs and their reports.

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace catchi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInvariant = 3;

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::vector<std::string> command;  // e.g. {"singularities", "verify-alpha"}
    std::vector<std::string> args;     // positional arguments after the command

    double chi = 0.0;
    bool chi_set = false;
    int samples = 32;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
    bool expect_fail = false;

    int triangles = 0;  // 0: the subcommand's default
    int max_sum = 22;
    std::string circumference = "tau";
    std::string sheets = "2";

    std::size_t nx = 200;
    std::size_t nphi = 256;
    double x_min = 0.05;
    double x_max = 1.0;
    double x0 = 0.5;
    bool refine = true;
    std::string mesh_out;

    std::vector<double> thetas;  // tangent-estimate ray angles
    std::string input;           // cat-check triangle file
    std::string gram;            // lattice JSON file
    std::string re, im, point;   // comma-separated coordinates
    std::string expect;          // expected value, e.g. "(3,0,19)"
};

struct Check {
    std::string name;
    bool passed = false;
    nlohmann::json data;
};

struct Report {
    nlohmann::json config;
    std::vector<Check> checks;
    std::uint64_t seed = 0;

    int passed() const;
    int failed() const;
    nlohmann::json to_json() const;
    std::string render(const std::string& format) const;
};

std::string version();

/// "tau", "2pi", "0.9tau", "1.5pi", "inf" or a plain number.
double parse_circumference(const std::string& text);

/// Validates the configuration (ConfigError) and runs the subcommand.
/// Invariant violations propagate as catchi::InvariantViolation.
Report run(const RunConfig& config);

/// 0 iff every check passed; with expect_fail, 0 iff some check failed.
int exit_status(const Report& report, bool expect_fail);

}  // namespace catchi::cli
