#include "branchstop/stopping.hpp"

#include <cmath>
#include <stdexcept>

#include "branchstop/parallel.hpp"

namespace branchstop {

namespace {
constexpr std::uint64_t kMcBlock = 8192;

// E[X 1{X >= tau}] from the stopping-law pieces.
double upper_partial_mean(const StoppingLaw& law, double tau) {
    const double pi = law.pi();
    if (tau <= 0.0) return law.ex();
    if (tau > pi) return 0.0;
    const double g_tau = law.source().g(tau);
    const double f_tau = law.cdf(tau);  // includes the atom when tau == pi
    double v = g_tau - tau * f_tau;
    if (tau == pi) v += pi * law.atom_at_pi();
    return v;
}
}  // namespace

double value_iid(const StoppingLaw& law, int n, HMode mode) {
    if (n < 1) throw std::invalid_argument("value_iid: n must be >= 1");
    double v = 0.0;
    for (int i = 0; i < n; ++i) v = payoff_h(law, v, mode);
    return v;
}

ValueSequence value_sequence(std::span<const StoppingLaw> laws, HMode mode) {
    if (laws.empty()) throw std::invalid_argument("value_sequence: empty law sequence");
    const int n = static_cast<int>(laws.size());
    ValueSequence vs;
    vs.values.assign(n + 1, 0.0);
    for (int i = n - 1; i >= 0; --i) vs.values[i] = payoff_h(laws[i], vs.values[i + 1], mode);
    return vs;
}

StoppingRule optimal_rule(const ValueSequence& vs) {
    StoppingRule rule;
    rule.thresholds.assign(vs.values.begin() + 1, vs.values.end());
    return rule;
}

McEstimate evaluate_rule_mc(std::span<const StoppingLaw> laws, const StoppingRule& rule,
                            std::uint64_t trials, std::uint64_t seed) {
    const int n = rule.horizon();
    if (n < 1) throw std::invalid_argument("evaluate_rule_mc: empty rule");
    if (laws.size() != static_cast<std::size_t>(n) && laws.size() != 1)
        throw std::invalid_argument("evaluate_rule_mc: law count must match horizon (or be 1)");
    if (trials < 1) throw std::invalid_argument("evaluate_rule_mc: trials must be >= 1");

    const bool iid = laws.size() == 1;
    const std::uint64_t n_blocks = (trials + kMcBlock - 1) / kMcBlock;
    std::vector<double> block_sum(n_blocks, 0.0), block_sumsq(n_blocks, 0.0);

    for_each_block(trials, kMcBlock, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
        RngStream rng(seed, b);
        double s = 0.0, s2 = 0.0;
        for (std::uint64_t t = begin; t < end; ++t) {
            double taken = 0.0;
            for (int i = 0; i < n; ++i) {
                const double x = sample(iid ? laws[0] : laws[i], rng);
                if (x >= rule.thresholds[i] || i == n - 1) {
                    taken = x;
                    break;
                }
            }
            s += taken;
            s2 += taken * taken;
        }
        block_sum[b] = s;
        block_sumsq[b] = s2;
    });

    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
        sum += block_sum[b];
        sumsq += block_sumsq[b];
    }
    const double mean = sum / static_cast<double>(trials);
    McEstimate out;
    out.estimate = mean;
    if (trials > 1) {
        const double var =
            std::max(0.0, (sumsq - trials * mean * mean) / (static_cast<double>(trials) - 1.0));
        out.std_error = std::sqrt(var / static_cast<double>(trials));
    }
    return out;
}

double threshold_rule_value(std::span<const StoppingLaw> laws, double tau, int horizon,
                            bool forced_final_acceptance) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw std::domain_error("threshold_rule_value: tau outside [0,1]");
    if (horizon < 1) throw std::invalid_argument("threshold_rule_value: horizon must be >= 1");
    if (laws.size() != static_cast<std::size_t>(horizon) && laws.size() != 1)
        throw std::invalid_argument("threshold_rule_value: law count must match horizon (or be 1)");
    const bool iid = laws.size() == 1;

    double reach = 1.0;  // P(no stop before i)
    double value = 0.0;
    double reach_before_last = 1.0;
    for (int i = 0; i < horizon; ++i) {
        const StoppingLaw& law = iid ? laws[0] : laws[i];
        value += reach * upper_partial_mean(law, tau);
        reach_before_last = reach;
        reach *= law.cdf_left(tau);
    }
    if (forced_final_acceptance) {
        const StoppingLaw& last = iid ? laws[0] : laws[horizon - 1];
        value += reach_before_last * (last.ex() - upper_partial_mean(last, tau));
    }
    return value;
}

InfiniteHorizon value_infinite(const Environment& env, int n_max, double tol) {
    if (n_max < 1) throw std::invalid_argument("value_infinite: n_max must be >= 1");
    n_max = std::min(n_max, env.horizon());

    InfiniteHorizon out;
    int plateau = 0;
    double prev = 0.0;

    if (env.is_homogeneous()) {
        const StoppingLaw law = to_stopping_law(env.law(1));
        double v = 0.0;
        for (int n = 1; n <= n_max; ++n) {
            v = payoff_h(law, v, HMode::closed_form);
            if (n > 1 && std::abs(v - prev) < tol) {
                if (++plateau >= 10 && !out.converged) {
                    out.converged = true;
                    out.horizon_used = n;
                }
            } else {
                plateau = 0;
            }
            prev = v;
        }
        out.value = v;
        if (!out.converged) out.horizon_used = n_max;
        return out;
    }

    std::vector<StoppingLaw> laws;
    laws.reserve(n_max);
    for (int i = 1; i <= n_max; ++i) laws.push_back(to_stopping_law(env.law(i)));

    double v = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        // V_1 over horizon n needs a fresh backward pass: the innermost law changes.
        double x = 0.0;
        for (int i = n - 1; i >= 0; --i) x = payoff_h(laws[i], x, HMode::closed_form);
        v = x;
        if (n > 1 && std::abs(v - prev) < tol) {
            if (++plateau >= 10 && !out.converged) {
                out.converged = true;
                out.horizon_used = n;
            }
        } else {
            plateau = 0;
        }
        prev = v;
    }
    out.value = v;
    if (!out.converged) out.horizon_used = n_max;
    return out;
}

}  // namespace branchstop
