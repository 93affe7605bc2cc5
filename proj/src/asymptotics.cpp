#include "branchstop/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "extended.hpp"

namespace branchstop {

namespace {
// The supercritical gap pi - q_n shrinks geometrically and reaches ~1e-21
// by n = 50 for the stock families, far below what a double-precision
// fixed point can anchor. The gap iteration therefore runs in __float128
// with a Newton-refined root; faithful out to n ~ 150 for these laws.
using quad = __float128;
}  // namespace

RateReport supercritical_check(const OffspringLaw& law, int n_max) {
    if (law.criticality() != Criticality::supercritical)
        throw std::domain_error("supercritical_check: law is not supercritical");
    if (n_max < 1) throw std::invalid_argument("supercritical_check: n_max must be >= 1");

    const quad pi = detail::refine_root_ext<quad>(law, eventual_extinction(law), 8);
    const quad gp = detail::gprime_ext<quad>(law, pi);

    RateReport rep;
    rep.regime = Regime::supercritical;
    rep.all_pass = true;

    quad gap = pi - detail::g_ext<quad>(law, 0);  // pi - q_1
    quad bound = pi * gp;
    for (int n = 1; n <= n_max; ++n) {
        RateRow row;
        row.n = n;
        row.gap = static_cast<double>(gap);
        row.q_n = static_cast<double>(pi - gap);
        row.statistic = row.gap;
        row.reference = static_cast<double>(bound);
        row.pass = gap > 0 && gap < bound;
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(row);
        gap = pi - detail::g_ext<quad>(law, pi - gap);
        bound *= gp;
    }
    rep.limit_estimate = static_cast<double>(pi);
    return rep;
}

RateReport subcritical_check(const OffspringLaw& law, int n_max) {
    if (law.criticality() != Criticality::subcritical)
        throw std::domain_error("subcritical_check: law is not subcritical");
    if (n_max < 1) throw std::invalid_argument("subcritical_check: n_max must be >= 1");

    const double ey = law.mean();
    const bool support_within_one = law.support_bound() >= 0 && law.support_bound() <= 1;

    RateReport rep;
    rep.regime = Regime::subcritical;
    rep.all_pass = true;

    double d = 1.0;  // 1 - q_0
    double bound = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        d -= law.fixed_point_excess(d);
        bound *= ey;
        RateRow row;
        row.n = n;
        row.gap = d;
        row.q_n = 1.0 - d;
        row.statistic = d;
        row.reference = bound;
        if (support_within_one) {
            // P(Y <= 1) = 1: the bound is attained exactly
            row.pass = d > 0.0 && std::abs(d - bound) <= 1e-12 * bound;
        } else {
            row.pass = d > 0.0 && d < bound * (1.0 - 1e-12);
        }
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(row);
    }
    rep.limit_estimate = 1.0;
    return rep;
}

std::vector<double> critical_gap_sequence(const OffspringLaw& law,
                                          std::span<const std::int64_t> ns) {
    if (ns.empty()) return {};
    for (std::size_t i = 0; i + 1 < ns.size(); ++i)
        if (ns[i] >= ns[i + 1]) throw std::invalid_argument("critical_gap_sequence: ns must ascend");
    if (ns.front() < 1) throw std::invalid_argument("critical_gap_sequence: n must be >= 1");

    std::vector<double> out;
    out.reserve(ns.size());
    double d = 1.0;
    std::int64_t n = 0;
    for (std::int64_t target : ns) {
        while (n < target) {
            d -= law.fixed_point_excess(d);
            ++n;
        }
        out.push_back(d);
    }
    return out;
}

RateReport critical_limit(const OffspringLaw& law, std::span<const std::int64_t> n_grid) {
    if (law.criticality() != Criticality::critical)
        throw std::domain_error("critical_limit: law is not critical (|EY - 1| > 1e-12)");
    if (n_grid.empty()) throw std::invalid_argument("critical_limit: empty grid");

    const bool heavy = !law.variance_finite();
    const double alpha = heavy ? law.slack_alpha() : 1.0;
    double limit;
    if (heavy) {
        limit = 1.0 / (law.slack_c() * alpha);
    } else if (law.family() == Family::slack) {
        limit = 1.0 / law.slack_c();  // 2/sigma^2 with sigma^2 = 2c
    } else {
        limit = 2.0 / law.variance();
    }
    const double limit2 = 1.0 + 1.0 / alpha;

    const auto gaps = critical_gap_sequence(law, n_grid);

    RateReport rep;
    rep.regime = Regime::critical;
    rep.all_pass = true;
    double prev_err = 0.0;
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const double n = static_cast<double>(n_grid[i]);
        const double d = gaps[i];
        RateRow row;
        row.n = n_grid[i];
        row.q_n = 1.0 - d;
        row.gap = d;
        row.statistic = n * std::pow(d, alpha);
        row.reference = limit;
        row.statistic2 = n * law.gprime_complement(d);
        row.reference2 = limit2;
        const double err = std::abs(row.statistic - limit);
        row.pass = i == 0 || err <= prev_err * (1.0 + 1e-9);
        prev_err = err;
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(row);
    }
    rep.limit_estimate = rep.rows.back().statistic;
    return rep;
}

std::vector<double> rate_ratio(const OffspringLaw& law, std::span<const double> s_grid) {
    std::vector<double> out;
    out.reserve(s_grid.size());
    for (double s : s_grid) {
        if (!(s >= 0.0 && s < 1.0)) throw std::domain_error("rate_ratio: s must lie in [0,1)");
        const double omx = 1.0 - s;
        out.push_back(omx * law.g_derivative(s, 2) / law.gprime_complement(omx));
    }
    return out;
}

}  // namespace branchstop
