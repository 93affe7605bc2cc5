#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "branchstop/cli_app.hpp"
#include "branchstop/correspondence.hpp"
#include "branchstop/quadrature.hpp"
#include "branchstop/rng.hpp"

using namespace branchstop;

namespace {

double continuous_mass(const StoppingLaw& x) {
    if (x.pi() == 0.0) return 0.0;
    return integrate([&](double t, double, double d_hi) { return x.density(t, d_hi); }, 0.0,
                     x.pi(), 1e-12);
}

}  // namespace

TEST_CASE("derived stopping laws match the worked families") {
    SUBCASE("two-point source gives a two-point image") {
        const auto x = to_stopping_law(OffspringLaw::bernoulli(0.3));
        CHECK(x.pi() == 1.0);
        CHECK(x.atom_at_zero() == doctest::Approx(0.3));
        CHECK(x.atom_at_pi() == doctest::Approx(0.7));
        CHECK(x.density(0.5) == 0.0);
        CHECK(x.ex() == doctest::Approx(0.7));
    }
    SUBCASE("critical cell splitting gives the uniform law") {
        const auto x = to_stopping_law(OffspringLaw::m_bernoulli(2, 0.5));
        CHECK(x.pi() == 1.0);
        CHECK(x.atom_at_zero() == 0.0);
        CHECK(x.atom_at_pi() == doctest::Approx(0.0));
        for (double t : {0.1, 0.4, 0.8}) CHECK(x.density(t) == doctest::Approx(1.0));
    }
    SUBCASE("supercritical cell splitting gives the truncated mixture") {
        const double p = 0.75;
        const auto x = to_stopping_law(OffspringLaw::m_bernoulli(2, p));
        CHECK(x.pi() == doctest::Approx((1.0 - p) / p).epsilon(1e-14));
        CHECK(x.atom_at_pi() == doctest::Approx(2.0 * p - 1.0).epsilon(1e-13));
        CHECK(continuous_mass(x) == doctest::Approx(2.0 * (1.0 - p)).epsilon(1e-10));
    }
}

TEST_CASE("total mass is conserved across the family matrix") {
    std::vector<std::pair<std::string, OffspringLaw>> laws = verification_matrix();
    laws.emplace_back("gg(0.5,0.35)", OffspringLaw::generalized_geometric(0.5, 0.35));
    laws.emplace_back("mbernoulli(4,0.3)", OffspringLaw::m_bernoulli(4, 0.3));
    laws.emplace_back("slack(0.25,0.6)", OffspringLaw::slack(0.25, 0.6));
    for (const auto& [name, law] : laws) {
        INFO(name);
        const auto x = to_stopping_law(law);
        const double total = x.atom_at_zero() + x.atom_at_pi() + continuous_mass(x);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("cdf branches") {
    const auto x = to_stopping_law(OffspringLaw::poisson(2.0));
    CHECK(x.cdf(-0.5) == 0.0);
    CHECK(x.cdf(x.pi()) == 1.0);
    CHECK(x.cdf(1.0) == 1.0);
    for (double t : {0.05, 0.1, 0.15}) {
        CHECK(x.cdf(t) == doctest::Approx(2.0 * std::exp(2.0 * (t - 1.0))).epsilon(1e-14));
    }
    // E[X] = P(Y=0) and, at pi = 1, P(X < 1) = EY
    const auto sub = to_stopping_law(OffspringLaw::poisson(0.8));
    CHECK(sub.cdf_left(1.0) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(payoff_h(sub, 0.0, HMode::quadrature) == doctest::Approx(std::exp(-0.8)).epsilon(1e-10));
}

TEST_CASE("payoff operator: both modes, full grid") {
    for (const auto& [name, law] : verification_matrix()) {
        INFO(name);
        const auto x = to_stopping_law(law);
        double worst = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double a = x.pi() * i / 1000.0;
            const double cf = payoff_h(x, a, HMode::closed_form);
            const double quad = payoff_h(x, a, HMode::quadrature);
            worst = std::max(worst, std::abs(cf - quad));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("payoff operator: anchor values") {
    const auto uniform = to_stopping_law(OffspringLaw::m_bernoulli(2, 0.5));
    CHECK(payoff_h(uniform, 0.5, HMode::closed_form) == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(payoff_h(uniform, 0.5, HMode::quadrature) == doctest::Approx(0.625).epsilon(1e-10));

    for (const auto& [name, law] : verification_matrix()) {
        INFO(name);
        const auto x = to_stopping_law(law);
        CHECK(payoff_h(x, 0.0, HMode::quadrature) == doctest::Approx(law.pmf(0)).epsilon(1e-10));
        CHECK(payoff_h(x, x.pi(), HMode::closed_form) == doctest::Approx(x.pi()).epsilon(1e-12));
    }

    CHECK_THROWS_AS(payoff_h(uniform, 1.5, HMode::closed_form), std::domain_error);
}

TEST_CASE("above the upper support the operator is the identity") {
    // supercritical: pi < 1, so (pi, 1) is nonempty
    for (double p : {0.7, 0.9}) {
        const auto law = OffspringLaw::m_bernoulli(2, p);
        const auto x = to_stopping_law(law);
        for (double a = x.pi() + 0.05; a < 1.0; a += 0.1) {
            CHECK(payoff_h(x, a, HMode::quadrature) == a);
            CHECK(law.g(a) < a);  // the generating-function identity must fail here
        }
    }
}

TEST_CASE("sampling hits atoms and matches the cdf uniformly") {
    struct Case {
        const char* name;
        OffspringLaw law;
    };
    const Case cases[] = {
        {"bernoulli(0.3)", OffspringLaw::bernoulli(0.3)},
        {"mbernoulli(2,0.5)", OffspringLaw::m_bernoulli(2, 0.5)},
        {"mbernoulli(2,0.75)", OffspringLaw::m_bernoulli(2, 0.75)},
        {"poisson(2.0)", OffspringLaw::poisson(2.0)},
        {"slack(0.5,0.5)", OffspringLaw::slack(0.5, 0.5)},
    };
    const std::uint64_t n = 200000;
    for (const auto& [name, law] : cases) {
        INFO(name);
        const auto x = to_stopping_law(law);
        RngStream rng(4242);
        std::vector<double> samples;
        samples.reserve(n);
        double sum = 0.0, sumsq = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) {
            const double v = sample(x, rng);
            CHECK(v >= 0.0);
            CHECK(v <= x.pi());
            samples.push_back(v);
            sum += v;
            sumsq += v * v;
        }
        const double mean = sum / static_cast<double>(n);
        const double var = (sumsq - n * mean * mean) / (static_cast<double>(n) - 1.0);

        // sample mean against E[X] = P(Y=0), 4 standard errors
        const double se = std::sqrt(std::max(var, 1e-12) / static_cast<double>(n));
        CHECK(std::abs(mean - law.pmf(0)) < 4.0 * se);

        // Dvoretzky-Kiefer-Wolfowitz 99% band on the empirical cdf
        std::sort(samples.begin(), samples.end());
        const double band = std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(n)));
        double sup = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double t = x.pi() * i / 400.0;
            const double emp =
                static_cast<double>(std::upper_bound(samples.begin(), samples.end(), t) -
                                    samples.begin()) /
                static_cast<double>(n);
            sup = std::max(sup, std::abs(emp - x.cdf(t)));
        }
        CHECK(sup < band);
    }
}

TEST_CASE("inversion round-trips finite-support laws") {
    const OffspringLaw cases[] = {
        OffspringLaw::bernoulli(0.4),
        OffspringLaw::m_bernoulli(2, 0.5),
        OffspringLaw::m_bernoulli(3, 0.2),
        OffspringLaw::explicit_pmf({0.2, 0.3, 0.1, 0.4}),
    };
    for (const auto& law : cases) {
        INFO(law.describe());
        const double pi = eventual_extinction(law);
        const int bound = law.support_bound();
        CandidateCdf cdf;
        cdf.pi = pi;
        cdf.max_degree = bound - 1;
        cdf.coeff = [&](int j) { return (j + 1) * law.pmf(j + 1); };
        const auto inv = invert_to_offspring(cdf);
        REQUIRE(inv.accepted);
        for (int k = 0; k <= bound; ++k)
            CHECK(inv.law->pmf(k) == doctest::Approx(law.pmf(k)).epsilon(1e-10));
        CHECK(inv.mean == doctest::Approx(law.mean()).epsilon(1e-12));
    }
}

TEST_CASE("inversion rejections carry the violated condition") {
    SUBCASE("negative series coefficient") {
        CandidateCdf cdf;
        cdf.pi = 1.0;
        cdf.max_degree = 2;
        cdf.coeff = [](int j) { return j == 1 ? -0.2 : 0.3; };
        const auto inv = invert_to_offspring(cdf);
        CHECK(!inv.accepted);
        CHECK(inv.rejection.find("condition (i)") != std::string::npos);
    }
    SUBCASE("k too heavy for any positive constant") {
        CandidateCdf cdf;
        cdf.pi = 1.0;
        cdf.max_degree = 0;
        cdf.coeff = [](int) { return 2.0; };
        const auto inv = invert_to_offspring(cdf);
        CHECK(!inv.accepted);
        CHECK(inv.rejection.find("condition (ii)(a)") != std::string::npos);
    }
    SUBCASE("powered cdf of a supercritical source violates the fixed point") {
        // k(x) = [g'(x)]^n for the m=2 splitting law, p > 1/2: single
        // coefficient (2p)^n at degree n, pi = (1-p)/p < 1
        const double p = 0.75;
        const int n = 2;
        CandidateCdf cdf;
        cdf.pi = (1.0 - p) / p;
        cdf.max_degree = n;
        cdf.coeff = [&](int j) { return j == n ? std::pow(2.0 * p, n) : 0.0; };
        const auto inv = invert_to_offspring(cdf);
        CHECK(!inv.accepted);
        CHECK(inv.rejection.find("condition (ii)(b)") != std::string::npos);
    }
    SUBCASE("powered cdf of a subcritical source is accepted") {
        // same construction with p < 1/2: pi = 1, conditions collapse to (ii)(a)
        const double p = 0.3;
        const int n = 3;
        CandidateCdf cdf;
        cdf.pi = 1.0;
        cdf.max_degree = n;
        cdf.coeff = [&](int j) { return j == n ? std::pow(2.0 * p, n) : 0.0; };
        const auto inv = invert_to_offspring(cdf);
        REQUIRE(inv.accepted);
        CHECK(inv.c == doctest::Approx(1.0 - std::pow(2.0 * p, n) / (n + 1)).epsilon(1e-14));
    }
}
