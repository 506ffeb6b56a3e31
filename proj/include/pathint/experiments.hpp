#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pathint {

struct LevelRange {
    std::size_t lo = 1;
    std::size_t hi = 10;
};

/// "a..b" with a <= b.
std::optional<LevelRange> parse_level_range(const std::string& text);

/// One experiment invocation: subcommand name plus every knob the
/// subcommands share. Validated by run(); exit code semantics:
/// 0 success, 2 validation failure, 3 premise failure (e.g. sewing coherence).
struct ExperimentConfig {
    std::string command;
    std::uint64_t seed = 1;
    std::size_t grid_log2 = 14;
    LevelRange levels{1, 10};
    std::string path_spec = "brownian"; // brownian | bpair | smooth:t | smooth:sin |
                                        // lacunary:<alpha>:<m>
    double gamma = 0.0;
    std::string selector = "left"; // left | right | mid
    double alpha = 0.5;            // levy
    std::size_t m = 4;             // levy
    double p = 2.5;                // control-check
    double q = 2.5;                // control-check
    std::string f_spec = "x2";     // ito-check: x2 | x3
    std::string g_spec = "x";      // functional-ito: x | x2half
    std::string mu_spec = "lebesgue"; // functional-ito: lebesgue | diracT
    double t_eval = -1.0;             // functional-ito; negative means horizon
    std::string sewing_example = "young"; // young | additive | rough
    std::vector<double> exponents = {1.0, 2.0}; // variation
    std::string out_path; // empty: stdout
};

/// Runs the experiment, writing CSV to the configured destination.
int run(const ExperimentConfig& cfg);
/// Test entry point: writes CSV to the given stream, diagnostics to err.
int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace pathint
