#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "branchstop/asymptotics.hpp"
#include "branchstop/gf.hpp"

using namespace branchstop;

TEST_CASE("supercritical gap bound") {
    SUBCASE("cell-splitting law, explicit first step") {
        const auto rep = supercritical_check(OffspringLaw::m_bernoulli(2, 0.75), 50);
        CHECK(rep.all_pass);
        CHECK(rep.rows[0].gap == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
        CHECK(rep.rows[0].reference == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
        // the strictness margin stays bounded away from 1
        for (const auto& row : rep.rows) CHECK(row.statistic / row.reference < 0.95);
    }
    SUBCASE("poisson") {
        const auto rep = supercritical_check(OffspringLaw::poisson(2.0), 50);
        CHECK(rep.all_pass);
        for (const auto& row : rep.rows) {
            CHECK(row.gap > 0.0);
            CHECK(row.gap < row.reference);
        }
        // the generation-50 gap is ~1e-21: far below double resolution of
        // q_n itself, still strictly positive through the extended iteration
        CHECK(rep.rows[49].gap < 1e-18);
        CHECK(rep.rows[49].gap > 0.0);
    }
    SUBCASE("gap matches direct iteration while it is representable") {
        const auto law = OffspringLaw::m_bernoulli(2, 0.75);
        const auto rep = supercritical_check(law, 20);
        const double pi = eventual_extinction(law);
        double q = 0.0;
        for (int n = 1; n <= 20; ++n) {
            q = law.g(q);
            if (pi - q > 1e-10)
                CHECK(rep.rows[n - 1].gap == doctest::Approx(pi - q).epsilon(1e-9));
        }
    }
    SUBCASE("regime guard") {
        CHECK_THROWS_AS(supercritical_check(OffspringLaw::poisson(1.0), 10), std::domain_error);
        CHECK_THROWS_AS(supercritical_check(OffspringLaw::poisson(0.5), 10), std::domain_error);
    }
}

TEST_CASE("subcritical gap bound") {
    SUBCASE("two-point law attains the bound exactly") {
        const auto rep = subcritical_check(OffspringLaw::bernoulli(0.3), 50);
        CHECK(rep.all_pass);
        for (const auto& row : rep.rows)
            CHECK(row.gap == doctest::Approx(row.reference).epsilon(1e-12));
    }
    SUBCASE("strict otherwise") {
        for (const auto& law :
             {OffspringLaw::poisson(0.8), OffspringLaw::generalized_geometric(0.25, 0.4),
              OffspringLaw::m_bernoulli(3, 0.2)}) {
            INFO(law.describe());
            const auto rep = subcritical_check(law, 30);
            CHECK(rep.all_pass);
            for (const auto& row : rep.rows) CHECK(row.gap < row.reference);
        }
    }
    SUBCASE("regime guard") {
        CHECK_THROWS_AS(subcritical_check(OffspringLaw::poisson(1.5), 10), std::domain_error);
    }
}

TEST_CASE("critical gap sequence against direct iteration") {
    const auto law = OffspringLaw::m_bernoulli(2, 0.5);
    const std::int64_t ns[] = {1, 2, 10, 100};
    const auto gaps = critical_gap_sequence(law, ns);
    double q = 0.0;
    std::size_t idx = 0;
    for (int n = 1; n <= 100; ++n) {
        q = law.g(q);
        if (idx < 4 && ns[idx] == n) {
            CHECK(gaps[idx] == doctest::Approx(1.0 - q).epsilon(1e-11));
            ++idx;
        }
    }
    CHECK_THROWS_AS(critical_gap_sequence(law, std::vector<std::int64_t>{5, 3}),
                    std::invalid_argument);
}

TEST_CASE("critical limit statistics") {
    SUBCASE("finite variance: n(1-q_n) -> 2/sigma^2") {
        std::vector<std::int64_t> grid;
        for (std::int64_t n = 100; n <= 10000; n *= 2) grid.push_back(n);
        grid.push_back(10000);
        const auto rep = critical_limit(OffspringLaw::m_bernoulli(2, 0.5), grid);
        CHECK(rep.all_pass);  // monotone approach along the doubling grid
        CHECK(rep.rows.back().reference == doctest::Approx(2.0));
        CHECK(std::abs(rep.limit_estimate - 2.0) / 2.0 < 0.02);
        CHECK(std::abs(rep.rows.back().statistic2 - 2.0) / 2.0 < 0.02);
    }
    SUBCASE("quadratic heavy-tail family at alpha = 1 agrees with the variance form") {
        const std::int64_t ns[] = {1000, 10000};
        const auto rep = critical_limit(OffspringLaw::slack(1.0, 0.25), ns);
        CHECK(rep.rows.back().reference == doctest::Approx(4.0));  // 2/sigma^2 = 1/c
        CHECK(std::abs(rep.limit_estimate - 4.0) / 4.0 < 0.02);
    }
    SUBCASE("infinite variance: n(1-q_n)^alpha -> 1/(c alpha)") {
        struct Case {
            double alpha, c;
        };
        for (const Case k : {Case{0.5, 0.5}, Case{0.25, 0.6}}) {
            INFO("alpha=", k.alpha, " c=", k.c);
            std::vector<std::int64_t> grid;
            for (std::int64_t n = 100; n <= 100000; n *= 2) grid.push_back(n);
            grid.push_back(100000);
            const auto rep = critical_limit(OffspringLaw::slack(k.alpha, k.c), grid);
            const double limit = 1.0 / (k.c * k.alpha);
            CHECK(rep.all_pass);
            CHECK(rep.rows.back().reference == doctest::Approx(limit));
            CHECK(std::abs(rep.limit_estimate - limit) / limit < 0.05);
            CHECK(rep.rows.back().statistic2 ==
                  doctest::Approx(1.0 + 1.0 / k.alpha).epsilon(0.05));
        }
    }
    SUBCASE("regime guard") {
        const std::int64_t ns[] = {10};
        CHECK_THROWS_AS(critical_limit(OffspringLaw::poisson(0.9), ns), std::domain_error);
    }
}

TEST_CASE("tail-exponent ratio") {
    std::vector<double> grid;
    for (int k = 1; k <= 12; ++k) grid.push_back(1.0 - std::pow(10.0, -k));

    SUBCASE("identically alpha for the heavy-tail family") {
        for (double alpha : {0.25, 0.5, 1.0}) {
            const auto vals = rate_ratio(OffspringLaw::slack(alpha, 0.4 / (1.0 + alpha)), grid);
            for (double v : vals) CHECK(v == doctest::Approx(alpha).epsilon(1e-10));
        }
    }
    SUBCASE("tends to 1 for finite variance") {
        for (const auto& law : {OffspringLaw::m_bernoulli(2, 0.5), OffspringLaw::poisson(1.0)}) {
            INFO(law.describe());
            const auto vals = rate_ratio(law, grid);
            for (double v : vals) CHECK(v <= 1.0 + 1e-12);
            CHECK(vals.back() == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
}
