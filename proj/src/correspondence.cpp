#include "branchstop/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "branchstop/quadrature.hpp"

namespace branchstop {

namespace {
constexpr double kQuadTol = 1e-11;
}

StoppingLaw::StoppingLaw(OffspringLaw source)
    : source_(std::move(source)), pi_(eventual_extinction(source_)) {
    atom_zero_ = source_.pmf(1);
    gp_pi_ = source_.g_derivative(pi_, 1);
    atom_pi_ = std::max(0.0, 1.0 - gp_pi_);
}

StoppingLaw to_stopping_law(const OffspringLaw& law) { return StoppingLaw(law); }

double StoppingLaw::cdf(double x) const {
    if (x < 0.0) return 0.0;
    if (x >= pi_) return 1.0;
    return source_.g_derivative(x, 1);
}

double StoppingLaw::cdf_left(double x) const {
    if (x <= 0.0) return 0.0;
    if (x > pi_) return 1.0;
    return source_.g_derivative(x, 1);
}

double StoppingLaw::density(double x, double pi_minus_x) const {
    if (source_.family() == Family::slack) {
        // pi = 1 for this family; g'' = c a (1+a) (1-x)^(a-1)
        const double a = source_.slack_alpha(), c = source_.slack_c();
        return c * a * (1.0 + a) * std::pow(pi_minus_x, a - 1.0);
    }
    return source_.g_derivative(x, 2);
}

double payoff_h(const StoppingLaw& law, double a, HMode mode) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("payoff_h: a outside [0,1]");
    const double pi = law.pi();
    if (mode == HMode::closed_form) {
        return std::max(a, law.source().g(std::min(a, pi)));
    }
    if (a >= pi) return a;  // support lies in [0, pi]

    const double gap = pi - a;
    const double mass_below =
        law.atom_at_zero() +
        integrate([&](double x, double, double d_hi) { return law.density(x, gap + d_hi); },
                  0.0, a, kQuadTol);
    const double upper_part =
        integrate([&](double x, double, double d_hi) { return x * law.density(x, d_hi); },
                  a, pi, kQuadTol);
    return a * mass_below + upper_part + pi * law.atom_at_pi();
}

double sample(const StoppingLaw& law, RngStream& rng) {
    const double u = rng.next_uniform();
    if (u < law.atom_at_zero()) return 0.0;
    if (u > law.gprime_at_pi()) return law.pi();
    double lo = 0.0, hi = law.pi();
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (law.source().g_derivative(mid, 1) < u)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Inversion invert_to_offspring(const CandidateCdf& cdf) {
    Inversion out;
    if (!cdf.coeff || cdf.max_degree < 0 || !(cdf.pi > 0.0 && cdf.pi <= 1.0))
        throw std::invalid_argument("invert_to_offspring: malformed candidate");

    std::vector<double> a(cdf.max_degree + 1);
    double total = 0.0;       // k(1) = sum a_j
    double integral_1 = 0.0;  // int_0^1 k = sum a_j/(j+1)
    for (int j = 0; j <= cdf.max_degree; ++j) {
        a[j] = cdf.coeff(j);
        if (a[j] < -1e-12) {
            out.rejection = "condition (i): negative series coefficient at degree " + std::to_string(j);
            return out;
        }
        a[j] = std::max(a[j], 0.0);
        total += a[j];
        integral_1 += a[j] / (j + 1);
    }
    out.mean = total;

    const double c = 1.0 - integral_1;
    out.c = c;
    if (!(c > 0.0)) {
        out.rejection = "condition (ii)(a): 1 - integral of k is not positive";
        return out;
    }
    if (cdf.pi < 1.0) {
        double integral_pi = 0.0;
        for (int j = cdf.max_degree; j >= 0; --j)
            integral_pi = integral_pi * cdf.pi + a[j] / (j + 1);
        integral_pi *= cdf.pi;
        if (std::abs(integral_pi + c - cdf.pi) > 1e-9) {
            out.rejection = "condition (ii)(b): g(pi) != pi for the c fixed by (ii)(a)";
            return out;
        }
    }

    std::vector<double> pmf(cdf.max_degree + 2);
    pmf[0] = c;
    for (int j = 0; j <= cdf.max_degree; ++j) pmf[j + 1] = a[j] / (j + 1);
    try {
        out.law = OffspringLaw::explicit_pmf(std::move(pmf));
    } catch (const std::invalid_argument& e) {
        out.rejection = std::string("reconstruction is not a valid offspring law: ") + e.what();
        return out;
    }
    out.accepted = true;
    return out;
}

}  // namespace branchstop
