#pragma once

#include <cstdint>
#include <vector>

#include "branchstop/environment.hpp"

namespace branchstop {

/// Ensemble statistics from forward population simulation.
struct EnsembleResult {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t pop_cap = 0;
    std::vector<double> extinct_freq;   // per generation 1..n
    std::vector<double> std_error;      // binomial SE of extinct_freq
    std::vector<double> mean_population;  // over trials not yet capped
    std::uint64_t cap_hits = 0;
};

/// Simulates `trials` independent populations starting from a single
/// individual, each drawing generation i offspring from env.law(i) by
/// inverse-CDF on a precomputed cumulative table. A trial whose population
/// exceeds pop_cap is counted non-extinct for all remaining generations (the
/// chance of extinction after that many individuals is below any tolerance
/// in use; the bias direction is toward under-reporting extinctions).
///
/// Each trial owns the counter-based stream keyed by (seed, trial index),
/// so results are bit-identical for a given (seed, trials) regardless of
/// thread count.
EnsembleResult simulate(const Environment& env, int generations, std::uint64_t trials,
                        std::uint64_t seed, std::uint64_t pop_cap = 1000000);

}  // namespace branchstop
