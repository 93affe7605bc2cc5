#pragma once

#include <cmath>
#include <vector>

#include "branchstop/gf.hpp"
#include "branchstop/rng.hpp"

namespace branchstop::test {

/// Independent oracle: evaluates g(s) by direct pmf summation. Truncation at
/// 200k terms is exact for finite support and leaves a tail below 1e-12 for
/// the infinite-support families at s <= 0.999 (geometric s^k damping).
inline double g_pmf_oracle(const OffspringLaw& law, double s, int terms = 200000) {
    const int bound = law.support_bound();
    const int count = bound >= 0 ? bound + 1 : terms;
    const auto probs = law.pmf_prefix(count);
    double acc = 0.0;
    double sk = 1.0;
    for (int k = 0; k < count; ++k) {
        acc += probs[k] * sk;
        sk *= s;
    }
    return acc;
}

/// Same idea for the factorial-moment sums g'(s), g''(s).
inline double g_derivative_pmf_oracle(const OffspringLaw& law, double s, int order,
                                      int terms = 200000) {
    const int bound = law.support_bound();
    const int count = bound >= 0 ? bound + 1 : terms;
    const auto probs = law.pmf_prefix(count);
    double acc = 0.0;
    for (int k = order; k < count; ++k) {
        double w = probs[k];
        for (int j = 0; j < order; ++j) w *= k - j;
        acc += w * std::pow(s, k - order);
    }
    return acc;
}

}  // namespace branchstop::test
