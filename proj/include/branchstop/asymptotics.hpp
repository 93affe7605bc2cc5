#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "branchstop/gf.hpp"

namespace branchstop {

enum class Regime { supercritical, subcritical, critical };

struct RateRow {
    std::int64_t n = 0;
    double q_n = 0.0;
    double gap = 0.0;        // pi - q_n, or 1 - q_n
    double statistic = 0.0;  // the quantity being bounded or driven to a limit
    double reference = 0.0;  // bound (geometric regimes) or limit (critical)
    double statistic2 = 0.0;  // critical regime: n [1 - g'(q_n)]
    double reference2 = 0.0;
    bool pass = false;
};

struct RateReport {
    Regime regime = Regime::critical;
    std::vector<RateRow> rows;
    double limit_estimate = 0.0;
    bool all_pass = false;
};

/// Supercritical gap bound: 0 < pi - q_n < pi [g'(pi)]^n for each n <= n_max.
/// The gap is iterated in its own variable (pi - q), so the strict
/// inequalities remain meaningful when q_n agrees with pi to many digits.
RateReport supercritical_check(const OffspringLaw& law, int n_max);

/// Subcritical bound: 0 < 1 - q_n <= [EY]^n; strict iff P(Y <= 1) < 1.
RateReport subcritical_check(const OffspringLaw& law, int n_max);

/// Critical-regime limit statistics over n_grid: n (1-q_n)^a against its
/// limit, and n [1-g'(q_n)] against 1 + 1/a, where a = 1 for finite
/// variance. Rows pass when the first statistic moves monotonically toward
/// the limit relative to the previous grid point.
RateReport critical_limit(const OffspringLaw& law, std::span<const std::int64_t> n_grid);

/// (1-s) g''(s) / [1 - g'(s)] on a grid approaching 1; identifies the
/// critical tail exponent (1 for finite variance).
std::vector<double> rate_ratio(const OffspringLaw& law, std::span<const double> s_grid);

/// Gaps d_n = 1 - q_n at the requested generation counts (ascending), via
/// the cancellation-free excess iteration d <- d - (g(1-d) - (1-d)).
std::vector<double> critical_gap_sequence(const OffspringLaw& law,
                                          std::span<const std::int64_t> ns);

}  // namespace branchstop
