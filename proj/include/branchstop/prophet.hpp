#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "branchstop/correspondence.hpp"
#include "branchstop/stopping.hpp"

namespace branchstop {

/// E[max(X_1,...,X_n)] for independent stopping-law observations, as the
/// integral of 1 - prod_i F_i(x), split at the atoms.
double prophet_value(std::span<const StoppingLaw> laws, double tol = 1e-10);

/// Same expectation by simulation; block streams keyed by (seed, block).
McEstimate prophet_value_mc(std::span<const StoppingLaw> laws, std::uint64_t trials,
                            std::uint64_t seed);

/// Two-sided enclosure of the optimal stopping value (and hence of the
/// extinction probability it equals): V_p/2 < V_n <= V_p.
struct ProphetBounds {
    double lower = 0.0;
    double upper = 0.0;
    double prophet_value = 0.0;
    int horizon = 0;
};

ProphetBounds prophet_bounds(std::span<const StoppingLaw> laws);

/// Prophet value over growing horizons with the plateau convergence flag.
InfiniteHorizon prophet_value_infinite(const Environment& env, int n_max, double tol = 1e-10);

/// Enclosure of the limit extinction probability for the three-point
/// environment with P(Y_i=0) = r_i/3, P(Y_i=2) = 2 r_i/3, sum r_i < inf:
/// two suboptimal-rule lower bounds against the stochastic-dominance upper
/// bound, all from products truncated at n_terms.
struct TrinomialEnclosure {
    double lower_stop_at_half = 0.0;  // (1/2)[1 - prod(1 - r_i/3)]
    double lower_stop_positive = 0.0; // (1/3)[1 - prod(1 - r_i)]
    double lower = 0.0;               // max of the two
    double upper = 0.0;               // (1/2)[1 - prod(1 - r_i)]
    double product_r = 1.0;           // truncated prod(1 - r_i)
    double product_r3 = 1.0;          // truncated prod(1 - r_i/3)
    double tail_sum_bound = 0.0;      // declared bound on sum_{i>n} r_i
    std::int64_t n_terms = 0;
};

/// r(i) must be declared convergent (precondition, not inferred);
/// tail_sum_bound bounds the neglected sum_{i > n_terms} r_i so the
/// truncated products still certify the enclosure.
TrinomialEnclosure trinomial_enclosure(const std::function<double(std::int64_t)>& r,
                                       std::int64_t n_terms, double tail_sum_bound,
                                       SumDeclared declared);

/// Offspring law whose extinction structure matches the maximum of n i.i.d.
/// observations of a (sub)critical source: CDF [g'(x)]^n pushed back through
/// invert_to_offspring. prophet value = P(Y* = 0).
struct MaxCorrespondence {
    OffspringLaw law;
    double prophet_value = 0.0;
    double mean = 0.0;             // E[Y*] = [EY]^n
    double series_residual = 0.0;  // coefficient mass beyond the truncation
};

MaxCorrespondence max_correspondence(const OffspringLaw& law, int n, int max_degree = 4096);

/// Varying-environment version: the max-CDF is prod_i g_i'(x); every source
/// must have EY_i <= 1.
MaxCorrespondence max_correspondence_product(std::span<const OffspringLaw> laws,
                                             int max_degree = 4096);

}  // namespace branchstop
