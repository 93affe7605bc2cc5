#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "branchstop/correspondence.hpp"
#include "branchstop/environment.hpp"

namespace branchstop {

/// Threshold decision rule over an observation sequence: stop at the first i
/// with X_i >= thresholds[i-1]; acceptance at the horizon is forced. A final
/// threshold <= 0 encodes that forced acceptance explicitly (observations
/// are nonnegative).
struct StoppingRule {
    std::vector<double> thresholds;
    int horizon() const { return static_cast<int>(thresholds.size()); }
};

/// Backward-induction values V_1 .. V_n, V_{n+1} = 0 for a horizon-n problem.
struct ValueSequence {
    std::vector<double> values;  // size n+1; values[i] = V_{i+1}
    int horizon() const { return static_cast<int>(values.size()) - 1; }
    double value() const { return values.front(); }
};

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Optimal i.i.d. stopping value V_n = h^(n)(0).
double value_iid(const StoppingLaw& law, int n, HMode mode);

/// Backward induction V_i = h_i(V_{i+1}) from V_{n+1} = 0.
ValueSequence value_sequence(std::span<const StoppingLaw> laws, HMode mode);

/// Optimal rule for a value sequence: thresholds tau_i = V_{i+1}.
StoppingRule optimal_rule(const ValueSequence& vs);

/// Monte Carlo value of an arbitrary threshold rule. laws must have the
/// rule's horizon, or length 1 for an i.i.d. sequence. Trials are split into
/// fixed-size blocks, each with its own stream keyed by (seed, block index);
/// block results merge in block order, so the outcome is reproducible.
McEstimate evaluate_rule_mc(std::span<const StoppingLaw> laws, const StoppingRule& rule,
                            std::uint64_t trials, std::uint64_t seed);

/// Exact expected value of the single-threshold rule "stop at the first
/// X_i >= tau, else accept X_n". With forced_final_acceptance false the rule
/// instead returns 0 when no observation reaches tau.
double threshold_rule_value(std::span<const StoppingLaw> laws, double tau, int horizon,
                            bool forced_final_acceptance = true);

struct InfiniteHorizon {
    double value = 0.0;
    bool converged = false;
    int horizon_used = 0;
};

/// V_1 over growing horizons from the environment's stopping laws; flags
/// convergence when 10 successive horizon increments each move the value by
/// less than tol. The flag is a numeric plateau report, not a proof.
InfiniteHorizon value_infinite(const Environment& env, int n_max, double tol = 1e-10);

}  // namespace branchstop
