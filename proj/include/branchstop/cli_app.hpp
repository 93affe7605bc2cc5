#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "branchstop/gf.hpp"

namespace branchstop {

/// Declarative description of one CLI experiment; `batch` runs a list of
/// these parsed from a JSON config.
struct ExperimentSpec {
    std::string command;

    // law selection (single-family commands)
    std::string family;
    double p = 0.0;
    int m = 0;
    double lambda = 0.0;
    double b = 0.0;
    double c = 0.0;
    double alpha = 0.0;
    std::vector<double> probs;

    // environment selection (inhomogeneous / simulate)
    std::string env;  // "", "gg-critical", "trinomial"
    std::vector<double> c_list;
    std::string r_pattern;  // "one" | "invsq"

    int n = 10;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::uint64_t pop_cap = 1000000;
    std::string mode = "closed";  // or "quadrature"

    std::string format = "csv";  // or "json"
    std::string output;          // empty = stdout
};

/// Builds the offspring law named by the spec; throws std::invalid_argument
/// for unknown families or out-of-domain parameters.
OffspringLaw law_from_spec(const ExperimentSpec& spec);

/// The standing family matrix used by verify-all and the test suites.
std::vector<std::pair<std::string, OffspringLaw>> verification_matrix();

/// Executes one experiment; writes the artifact to spec.output (or stdout).
/// Exit status: 0 ok, 1 verification failure, 2 invalid spec.
int run_spec(const ExperimentSpec& spec);

/// Full command-line entry: parse, dispatch, report errors on stderr.
int run_cli(int argc, const char* const* argv);

}  // namespace branchstop
