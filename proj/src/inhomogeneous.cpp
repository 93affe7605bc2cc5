#include "branchstop/inhomogeneous.hpp"

#include <cmath>
#include <stdexcept>

#include "branchstop/stopping.hpp"

namespace branchstop {

MoebiusCoefficients MoebiusCoefficients::compose(const MoebiusCoefficients& g2) const {
    // this = g1; numerator/denominator of g1(g2(s))
    MoebiusCoefficients out;
    out.alpha = alpha * g2.gamma + beta * g2.alpha;
    out.beta = alpha * g2.delta + beta * g2.beta;
    out.gamma = gamma * g2.gamma + delta * g2.alpha;
    out.delta = gamma * g2.delta + delta * g2.beta;
    return out;
}

MoebiusCoefficients MoebiusCoefficients::from_gg(const OffspringLaw& law) {
    if (law.family() != Family::generalized_geometric)
        throw std::invalid_argument("MoebiusCoefficients: law is not generalized-geometric");
    const double b = law.gg_b(), c = law.gg_c();
    MoebiusCoefficients m;
    m.alpha = 1.0 - (b + c);
    m.beta = b - c * (1.0 - c);
    m.gamma = 1.0 - c;
    m.delta = -c * (1.0 - c);
    return m;
}

InhomExtinction inhom_extinction(const Environment& env, int n) {
    if (n < 1) throw std::invalid_argument("inhom_extinction: n must be >= 1");
    InhomExtinction out;
    out.q = env.extinction(n);

    std::vector<double> pis;
    pis.reserve(n);
    for (int i = 1; i <= n; ++i) pis.push_back(eventual_extinction(env.law(i)));
    out.ordering_held = true;
    for (int i = 1; i < n; ++i) {
        if (pis[i] > pis[i - 1] + 1e-12) {
            out.ordering_held = false;
            break;
        }
    }
    if (!out.ordering_held) return out;

    std::vector<StoppingLaw> x_laws;
    x_laws.reserve(n);
    for (int i = 1; i <= n; ++i) x_laws.push_back(to_stopping_law(env.law(i)));
    const double v = value_sequence(x_laws, HMode::quadrature).value();
    out.q_h_path = v;
    if (std::abs(v - out.q) > 1e-9)
        throw std::runtime_error("inhom_extinction: composition and stopping-value paths disagree");
    return out;
}

DivergenceReport divergence_criterion(const Environment& env, int n_terms) {
    if (n_terms < 1) throw std::invalid_argument("divergence_criterion: need at least one term");
    if (n_terms > env.horizon()) throw std::out_of_range("divergence_criterion: beyond horizon");

    DivergenceReport rep;
    rep.hint = env.declared_r_summability();
    rep.pi0 = eventual_extinction(env.law(1));
    const int pi_checks = env.is_homogeneous() ? 1 : n_terms;
    for (int i = 2; i <= pi_checks; ++i) {
        if (std::abs(eventual_extinction(env.law(i)) - rep.pi0) > 1e-10)
            throw std::invalid_argument("divergence_criterion: fixed points are not all equal");
    }
    rep.partial_sums.reserve(n_terms);
    double acc = 0.0;
    for (int i = 1; i <= n_terms; ++i) {
        acc += 1.0 - env.law(i).pmf(1);
        rep.partial_sums.push_back(acc);
    }
    return rep;
}

std::vector<double> elementary_symmetric(std::span<const double> values) {
    std::vector<double> s(values.size() + 1, 0.0);
    s[0] = 1.0;
    std::size_t filled = 0;
    for (double v : values) {
        ++filled;
        for (std::size_t j = filled; j >= 1; --j) s[j] += v * s[j - 1];
    }
    return s;
}

GgClosedForm gg_closed_form(std::span<const double> c_list, int n) {
    if (n < 1 || static_cast<std::size_t>(n) > c_list.size())
        throw std::invalid_argument("gg_closed_form: n out of range");
    for (int i = 0; i < n; ++i)
        if (!(c_list[i] > 0.0 && c_list[i] < 1.0))
            throw std::invalid_argument("gg_closed_form: c values must lie in (0,1)");

    // The alternating sums over S_j collapse to the two symmetric quantities
    //   P = prod (1-c_i),  T = sum c_i/(1-c_i):
    //   alpha = P T, beta = P - alpha, gamma = alpha + P, delta = -alpha.
    // They are evaluated in this form; the textbook alternating assembly
    // cancels catastrophically once n c_max is large.
    double prod = 1.0, tsum = 0.0;
    for (int i = 0; i < n; ++i) {
        prod *= 1.0 - c_list[i];
        tsum += c_list[i] / (1.0 - c_list[i]);
    }
    GgClosedForm out;
    out.coeffs.alpha = prod * tsum;
    out.coeffs.beta = prod - out.coeffs.alpha;
    out.coeffs.gamma = out.coeffs.alpha + prod;
    out.coeffs.delta = -out.coeffs.alpha;
    out.q = tsum / (1.0 + tsum);  // alpha/gamma with the product cancelled
    return out;
}

Environment critical_gg_env(std::span<const double> c_list) {
    std::vector<OffspringLaw> laws;
    laws.reserve(c_list.size());
    for (double c : c_list)
        laws.push_back(OffspringLaw::generalized_geometric((1.0 - c) * (1.0 - c), c));
    return Environment::fixed(std::move(laws));
}

bool permutation_invariant(const MoebiusCoefficients& g1, const MoebiusCoefficients& g2) {
    if (g1.delta == 0.0 || g2.delta == 0.0)
        throw std::domain_error("permutation_invariant: delta = 0 (linear generating function)");
    return std::abs(g1.alpha / g1.delta - g2.alpha / g2.delta) <= 1e-12;
}

OffspringLaw trinomial_law(double r) {
    if (!(r > 0.0 && r <= 1.0)) throw std::domain_error("trinomial_law: r must lie in (0,1]");
    return OffspringLaw::explicit_pmf({r / 3.0, 1.0 - r, 2.0 * r / 3.0});
}

}  // namespace branchstop
