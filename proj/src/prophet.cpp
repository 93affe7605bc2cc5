#include "branchstop/prophet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "branchstop/parallel.hpp"
#include "branchstop/quadrature.hpp"

namespace branchstop {

namespace {
constexpr std::uint64_t kMcBlock = 8192;

// Truncated power-series coefficients of g' (all nonnegative).
std::vector<double> gprime_series(const OffspringLaw& law, int max_degree) {
    std::vector<double> a;
    const int bound = law.support_bound();
    if (bound >= 0) {
        a.resize(bound);
        for (int k = 1; k <= bound; ++k) a[k - 1] = k * law.pmf(k);
        return a;
    }
    const double target = law.mean() - 1e-15;
    const auto probs = law.pmf_prefix(max_degree + 2);
    double acc = 0.0;
    for (int k = 1; k <= max_degree + 1; ++k) {
        a.push_back(k * probs[k]);
        acc += a.back();
        if (acc >= target) break;
    }
    return a;
}

std::vector<double> poly_mult(const std::vector<double>& a, const std::vector<double>& b,
                              int max_degree) {
    if (a.empty() || b.empty()) return {};
    const int len = std::min<int>(static_cast<int>(a.size() + b.size()) - 1, max_degree + 1);
    std::vector<double> c(len, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        const std::size_t jmax = std::min(b.size(), static_cast<std::size_t>(len) - i);
        for (std::size_t j = 0; j < jmax; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

MaxCorrespondence invert_series(std::vector<double> coeffs, double exact_mass) {
    double total = 0.0;
    for (double v : coeffs) total += v;

    CandidateCdf cdf;
    cdf.pi = 1.0;
    cdf.max_degree = static_cast<int>(coeffs.size()) - 1;
    cdf.coeff = [&coeffs](int j) { return coeffs[j]; };
    Inversion inv = invert_to_offspring(cdf);
    if (!inv.accepted)
        throw std::runtime_error("max_correspondence: inversion rejected: " + inv.rejection);

    MaxCorrespondence out{std::move(*inv.law), inv.c, inv.mean, exact_mass - total};
    if (std::abs(out.mean - exact_mass) > 1e-9 + 2.0 * out.series_residual)
        throw std::runtime_error("max_correspondence: E[Y*] does not match the mean-power identity");
    return out;
}

}  // namespace

double prophet_value(std::span<const StoppingLaw> laws, double tol) {
    if (laws.empty()) throw std::invalid_argument("prophet_value: empty law sequence");

    std::vector<double> cuts{0.0};
    for (const auto& law : laws) cuts.push_back(law.pi());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double lo = cuts[p], hi = cuts[p + 1];
        const double hi_gap = 1.0 - hi;
        total += integrate(
            [&](double x, double, double d_hi) {
                double log_prod = 0.0;
                for (const auto& law : laws) {
                    if (law.pi() <= lo) continue;  // F_i = 1 on this panel
                    const double omg = std::max(0.0, law.source().gprime_complement(hi_gap + d_hi));
                    if (omg >= 1.0) return 1.0;  // some F_i vanished at x
                    log_prod += std::log1p(-omg);
                }
                (void)x;
                return -std::expm1(log_prod);
            },
            lo, hi, tol / static_cast<double>(cuts.size()));
    }
    return total;
}

McEstimate prophet_value_mc(std::span<const StoppingLaw> laws, std::uint64_t trials,
                            std::uint64_t seed) {
    if (laws.empty()) throw std::invalid_argument("prophet_value_mc: empty law sequence");
    if (trials < 1) throw std::invalid_argument("prophet_value_mc: trials must be >= 1");

    const std::uint64_t n_blocks = (trials + kMcBlock - 1) / kMcBlock;
    std::vector<double> block_sum(n_blocks, 0.0), block_sumsq(n_blocks, 0.0);
    for_each_block(trials, kMcBlock, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
        RngStream rng(seed, b);
        double s = 0.0, s2 = 0.0;
        for (std::uint64_t t = begin; t < end; ++t) {
            double best = 0.0;
            for (const auto& law : laws) best = std::max(best, sample(law, rng));
            s += best;
            s2 += best * best;
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

ProphetBounds prophet_bounds(std::span<const StoppingLaw> laws) {
    ProphetBounds out;
    out.prophet_value = prophet_value(laws);
    out.lower = 0.5 * out.prophet_value;
    out.upper = out.prophet_value;
    out.horizon = static_cast<int>(laws.size());
    return out;
}

InfiniteHorizon prophet_value_infinite(const Environment& env, int n_max, double tol) {
    if (n_max < 1) throw std::invalid_argument("prophet_value_infinite: n_max must be >= 1");
    n_max = std::min(n_max, env.horizon());

    std::vector<StoppingLaw> laws;
    laws.reserve(n_max);
    InfiniteHorizon out;
    int plateau = 0;
    double prev = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        laws.push_back(to_stopping_law(env.law(n)));
        const double v = prophet_value(laws);
        if (n > 1 && std::abs(v - prev) < tol) {
            if (++plateau >= 10 && !out.converged) {
                out.converged = true;
                out.horizon_used = n;
            }
        } else {
            plateau = 0;
        }
        prev = v;
        out.value = v;
    }
    if (!out.converged) out.horizon_used = n_max;
    return out;
}

TrinomialEnclosure trinomial_enclosure(const std::function<double(std::int64_t)>& r,
                                       std::int64_t n_terms, double tail_sum_bound,
                                       SumDeclared declared) {
    if (declared != SumDeclared::convergent)
        throw std::invalid_argument("trinomial_enclosure: sum of r_i must be declared convergent");
    if (n_terms < 1) throw std::invalid_argument("trinomial_enclosure: need at least one term");
    if (!(tail_sum_bound >= 0.0)) throw std::invalid_argument("trinomial_enclosure: bad tail bound");

    TrinomialEnclosure out;
    out.n_terms = n_terms;
    out.tail_sum_bound = tail_sum_bound;
    for (std::int64_t i = 1; i <= n_terms; ++i) {
        const double ri = r(i);
        if (!(ri >= 0.0 && ri <= 1.0))
            throw std::domain_error("trinomial_enclosure: r_i outside [0,1]");
        out.product_r *= 1.0 - ri;
        out.product_r3 *= 1.0 - ri / 3.0;
    }
    out.lower_stop_at_half = 0.5 * (1.0 - out.product_r3);
    out.lower_stop_positive = (1.0 - out.product_r) / 3.0;
    out.lower = std::max(out.lower_stop_at_half, out.lower_stop_positive);
    // conservative: the untruncated product is at least product_r (1 - tail)
    out.upper = 0.5 * (1.0 - out.product_r * (1.0 - tail_sum_bound));
    return out;
}

MaxCorrespondence max_correspondence(const OffspringLaw& law, int n, int max_degree) {
    if (n < 1) throw std::invalid_argument("max_correspondence: n must be >= 1");
    if (law.mean() > 1.0 + 1e-12)
        throw std::domain_error("max_correspondence: requires EY <= 1 (no offspring law exists otherwise)");

    const auto base = gprime_series(law, max_degree);
    std::vector<double> acc = base;
    for (int i = 1; i < n; ++i) acc = poly_mult(acc, base, max_degree);
    return invert_series(std::move(acc), std::pow(law.mean(), n));
}

MaxCorrespondence max_correspondence_product(std::span<const OffspringLaw> laws, int max_degree) {
    if (laws.empty()) throw std::invalid_argument("max_correspondence_product: empty sequence");
    double mass = 1.0;
    for (const auto& law : laws) {
        if (law.mean() > 1.0 + 1e-12)
            throw std::domain_error("max_correspondence_product: requires EY_i <= 1 for all i");
        mass *= law.mean();
    }
    std::vector<double> acc = gprime_series(laws[0], max_degree);
    for (std::size_t i = 1; i < laws.size(); ++i)
        acc = poly_mult(acc, gprime_series(laws[i], max_degree), max_degree);
    return invert_series(std::move(acc), mass);
}

}  // namespace branchstop
