#pragma once

#include <span>
#include <string>
#include <vector>

namespace branchstop {

enum class Family {
    bernoulli,
    m_bernoulli,
    poisson,
    generalized_geometric,
    slack,
    explicit_pmf,
};

enum class Criticality { subcritical, critical, supercritical };

/// A nonnegative-integer offspring distribution. Immutable after
/// construction; closed-form generating function, derivatives and moments
/// for the parametric families, direct polynomial evaluation otherwise.
class OffspringLaw {
public:
    /// P(Y=1) = p, P(Y=0) = 1-p.
    static OffspringLaw bernoulli(double p);
    /// P(Y=m) = p, P(Y=0) = 1-p, m >= 2.
    static OffspringLaw m_bernoulli(int m, double p);
    static OffspringLaw poisson(double lambda);
    /// P(Y=k) = b c^(k-1) for k >= 1, P(Y=0) = (1-b-c)/(1-c); b,c > 0, b+c < 1.
    static OffspringLaw generalized_geometric(double b, double c);
    /// g(s) = s + c (1-s)^(1+alpha); 0 < alpha <= 1, 0 < c <= 1/(1+alpha).
    static OffspringLaw slack(double alpha, double c);
    /// Finite-support law from an explicit pmf (p_0, ..., p_K).
    /// P(Y=0) = 0 is rejected unless allow_zero_p0 is set.
    static OffspringLaw explicit_pmf(std::vector<double> probs, bool allow_zero_p0 = false);

    Family family() const { return family_; }

    /// Generating function g(s) = sum p_k s^k, for s in [0, 1].
    double g(double s) const;

    /// g'(s) or g''(s); order must be 1 or 2. At s = 1 returns the analytic
    /// limit, which may be +infinity (heavy-tailed laws).
    double g_derivative(double s, int order) const;

    double pmf(int k) const;

    /// First `count` probabilities p_0 .. p_{count-1}.
    std::vector<double> pmf_prefix(int count) const;

    double mean() const;
    /// Var(Y); +infinity when the second moment diverges.
    double variance() const;
    bool variance_finite() const;
    Criticality criticality() const;

    /// g(1-d) - (1-d) without cancellation; the fixed-point iteration step
    /// for extinction gaps near 1 works in this quantity directly.
    double fixed_point_excess(double d) const;

    /// 1 - g'(1 - omx) without cancellation, omx = 1 - s.
    double gprime_complement(double omx) const;

    /// Largest k with p_k > 0, or -1 for infinite support.
    int support_bound() const;

    /// Cumulative pmf table for inverse-CDF sampling, truncated once the
    /// remaining tail mass drops below `tail` or at max_entries.
    std::vector<double> cumulative_table(double tail, int max_entries) const;

    std::string describe() const;

    // Parameter accessors (family-specific; meaningful per constructor).
    double p() const { return a_; }
    int m() const { return m_; }
    double lambda() const { return a_; }
    double gg_b() const { return a_; }
    double gg_c() const { return b_; }
    double slack_alpha() const { return a_; }
    double slack_c() const { return b_; }
    const std::vector<double>& probs() const { return table_; }

private:
    OffspringLaw(Family f, double a, double b, int m) : family_(f), a_(a), b_(b), m_(m) {}

    Family family_;
    double a_ = 0.0;
    double b_ = 0.0;
    int m_ = 0;
    std::vector<double> table_;
};

/// g_1(g_2(...g_n(s))), evaluated innermost-first.
double iterate_g(std::span<const OffspringLaw> laws, double s);

/// n-fold self-composition g^(n)(s) of a single law.
double iterate_g(const OffspringLaw& law, int n, double s);

/// P(generation n extinct) = g_1(...g_n(0)) over the first n laws.
double extinction_prob(std::span<const OffspringLaw> laws, int n);
double extinction_prob(const OffspringLaw& law, int n);

/// Eventual extinction probability: the smallest root of g(s) = s in [0, 1].
/// Exactly 1 when EY <= 1 (tolerance 1e-12), exactly 0 when P(Y=0) = 0,
/// otherwise located by bisection to 1e-13.
double eventual_extinction(const OffspringLaw& law);

}  // namespace branchstop
