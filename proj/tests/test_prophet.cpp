#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "branchstop/cli_app.hpp"
#include "branchstop/inhomogeneous.hpp"
#include "branchstop/prophet.hpp"

using namespace branchstop;

namespace {
std::vector<StoppingLaw> iid(const OffspringLaw& law, int n) {
    return std::vector<StoppingLaw>(n, to_stopping_law(law));
}
}  // namespace

TEST_CASE("expected maximum, analytic route") {
    SUBCASE("a single observation is its own maximum") {
        for (const auto& [name, law] : verification_matrix()) {
            INFO(name);
            CHECK(prophet_value(iid(law, 1)) == doctest::Approx(law.pmf(0)).epsilon(1e-10));
        }
    }
    SUBCASE("two uniforms") {
        CHECK(prophet_value(iid(OffspringLaw::m_bernoulli(2, 0.5), 2)) ==
              doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    }
    SUBCASE("n uniforms: n/(n+1)") {
        for (int n : {3, 7, 20})
            CHECK(prophet_value(iid(OffspringLaw::m_bernoulli(2, 0.5), n)) ==
                  doctest::Approx(n / (n + 1.0)).epsilon(1e-9));
    }
    SUBCASE("two-point law: 1 - p^n") {
        const double p = 0.55;
        for (int n : {1, 4, 9})
            CHECK(prophet_value(iid(OffspringLaw::bernoulli(p), n)) ==
                  doctest::Approx(1.0 - std::pow(p, n)).epsilon(1e-10));
    }
}

TEST_CASE("analytic and Monte Carlo routes agree") {
    const OffspringLaw laws[] = {OffspringLaw::poisson(0.8), OffspringLaw::m_bernoulli(2, 0.75),
                                 OffspringLaw::slack(0.5, 0.5)};
    for (const auto& law : laws) {
        INFO(law.describe());
        const auto xs = iid(law, 4);
        const double vp = prophet_value(xs);
        const auto est = prophet_value_mc(xs, 40000, 2718);
        CHECK(std::abs(est.estimate - vp) < 4.0 * est.std_error);
    }
    SUBCASE("deterministic given the seed") {
        const auto xs = iid(OffspringLaw::poisson(0.8), 3);
        CHECK(prophet_value_mc(xs, 10000, 5).estimate == prophet_value_mc(xs, 10000, 5).estimate);
    }
}

TEST_CASE("prophet enclosure of the stopping value") {
    for (const auto& [name, law] : verification_matrix()) {
        INFO(name);
        const auto x = to_stopping_law(law);
        double prev_vp = 0.0;
        std::vector<StoppingLaw> xs;
        for (int n = 1; n <= 20; ++n) {
            xs.push_back(x);
            const auto pb = prophet_bounds(xs);
            const double vn = value_iid(x, n, HMode::closed_form);
            // half the prophet value is a strict lower bound, the value
            // itself never exceeds the prophet's
            CHECK(pb.lower < vn);
            CHECK(vn <= pb.upper + 1e-12);
            CHECK(pb.prophet_value < 2.0 * vn);
            CHECK(pb.prophet_value >= prev_vp - 1e-12);  // monotone in horizon
            prev_vp = pb.prophet_value;
        }
    }
}

TEST_CASE("prophet value over growing horizons") {
    // horizon increments fall off like r_n ~ n^-2; the plateau tolerance
    // has to sit above the tail at the truncation point
    const auto env = Environment::generated(
        [](int i) { return trinomial_law(1.0 / ((i + 1.0) * (i + 1.0))); }, 150,
        SumDeclared::convergent);
    const auto res = prophet_value_infinite(env, 150, 2e-4);
    CHECK(res.converged);
    CHECK(res.value < 0.25);
    CHECK(res.value > 1.0 / 6.0);
}

TEST_CASE("three-point enclosure from truncated products") {
    auto invsq = [](std::int64_t i) { return 1.0 / ((i + 1.0) * (i + 1.0)); };
    SUBCASE("telescoping partial product") {
        for (std::int64_t n : {10LL, 1000LL}) {
            const auto enc = trinomial_enclosure(invsq, n, 1.0 / (n + 1.0), SumDeclared::convergent);
            CHECK(enc.product_r == doctest::Approx((n + 2.0) / (2.0 * (n + 1.0))).epsilon(1e-13));
        }
    }
    SUBCASE("limit bounds 1/6 and 1/4") {
        const std::int64_t n = 1000000;
        const auto enc = trinomial_enclosure(invsq, n, 1.0 / (n + 1.0), SumDeclared::convergent);
        CHECK(enc.product_r == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(enc.lower_stop_positive == doctest::Approx(1.0 / 6.0).epsilon(1e-6));
        CHECK(enc.upper == doctest::Approx(0.25).epsilon(1e-5));
        CHECK(enc.lower == enc.lower_stop_positive);  // beats the atom-hunting rule here
        CHECK(enc.lower_stop_at_half < enc.lower_stop_positive);
    }
    SUBCASE("vanishing rates give a degenerate enclosure") {
        const auto enc =
            trinomial_enclosure([](std::int64_t) { return 0.0; }, 100, 0.0, SumDeclared::convergent);
        CHECK(enc.lower == 0.0);
        CHECK(enc.upper == 0.0);
    }
    SUBCASE("must be declared convergent") {
        CHECK_THROWS_AS(trinomial_enclosure(invsq, 10, 0.1, SumDeclared::divergent),
                        std::invalid_argument);
        CHECK_THROWS_AS(trinomial_enclosure(invsq, 10, 0.1, SumDeclared::unknown),
                        std::invalid_argument);
    }
}

TEST_CASE("max-of-n correspondence") {
    SUBCASE("two-valued source: two-valued image") {
        const int m = 3, n = 4;
        const double p = 0.2;
        const auto mc = max_correspondence(OffspringLaw::m_bernoulli(m, p), n);
        const int top = n * (m - 1) + 1;
        const double expect = 1.0 - std::pow(m * p, n) / top;
        CHECK(mc.prophet_value == doctest::Approx(expect).epsilon(1e-12));
        CHECK(mc.law.pmf(0) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(mc.law.pmf(top) == doctest::Approx(std::pow(m * p, n) / top).epsilon(1e-12));
        for (int k = 1; k < top; ++k) CHECK(mc.law.pmf(k) == 0.0);
        CHECK(mc.mean == doctest::Approx(std::pow(m * p, n)).epsilon(1e-12));
    }
    SUBCASE("poisson source: mixture of a fatter poisson and zero") {
        const double lam = 0.8;
        for (int n : {1, 2, 5}) {
            const auto mc = max_correspondence(OffspringLaw::poisson(lam), n);
            const double w = std::pow(lam, n - 1) / n;
            CHECK(mc.prophet_value ==
                  doctest::Approx(1.0 - w * (1.0 - std::exp(-n * lam))).epsilon(1e-11));
            const auto mixed = OffspringLaw::poisson(n * lam);
            for (int k = 1; k <= 8; ++k)
                CHECK(mc.law.pmf(k) == doctest::Approx(w * mixed.pmf(k)).epsilon(1e-10));
            CHECK(mc.mean == doctest::Approx(std::pow(lam, n)).epsilon(1e-11));
        }
    }
    SUBCASE("geometric source: negative-binomial mixture, derived constant") {
        const double p = 0.4, q = 1.0 - p;
        const auto geo = OffspringLaw::generalized_geometric(p * q, p);
        for (int n : {2, 3, 6}) {
            const auto mc = max_correspondence(geo, n);
            const double expect = 1.0 - std::pow(p / q, n - 1) / (2 * n - 1) +
                                  std::pow(p, n - 1) * std::pow(q, n) / (2 * n - 1);
            CHECK(mc.prophet_value == doctest::Approx(expect).epsilon(1e-11));
            CHECK(mc.mean == doctest::Approx(std::pow(p / q, n)).epsilon(1e-11));
            // body of the mixture: w * NegBin(2n-1, q) at small k
            const double w = std::pow(p / q, n - 1) / (2 * n - 1);
            double binom = 1.0;  // C(2n-2+k, k)
            double pk = std::pow(q, 2 * n - 1);
            for (int k = 1; k <= 4; ++k) {
                binom *= (2.0 * n - 2.0 + k) / k;
                pk *= p;
                CHECK(mc.law.pmf(k) == doctest::Approx(w * binom * pk).epsilon(1e-10));
            }
        }
    }
    SUBCASE("the expected maximum is the image's extinction start") {
        for (const auto& law : {OffspringLaw::m_bernoulli(2, 0.5), OffspringLaw::poisson(1.0),
                                OffspringLaw::generalized_geometric(0.25, 0.4)}) {
            INFO(law.describe());
            for (int n : {1, 3, 8}) {
                const auto mc = max_correspondence(law, n);
                CHECK(prophet_value(iid(law, n)) == doctest::Approx(mc.prophet_value).epsilon(1e-9));
            }
        }
    }
    SUBCASE("supercritical sources have no image") {
        CHECK_THROWS_AS(max_correspondence(OffspringLaw::poisson(2.0), 3), std::domain_error);
        CHECK_THROWS_AS(max_correspondence(OffspringLaw::m_bernoulli(2, 0.75), 2),
                        std::domain_error);
    }
}

TEST_CASE("varying-environment maximum still inverts") {
    std::vector<OffspringLaw> laws{OffspringLaw::poisson(0.8), OffspringLaw::m_bernoulli(3, 0.2),
                                   OffspringLaw::generalized_geometric(0.25, 0.4),
                                   OffspringLaw::m_bernoulli(2, 0.5)};
    const auto mc = max_correspondence_product(laws);
    double mass = 1.0;
    for (const auto& law : laws) mass *= law.mean();
    CHECK(mc.mean == doctest::Approx(mass).epsilon(1e-11));

    std::vector<StoppingLaw> xs;
    for (const auto& law : laws) xs.push_back(to_stopping_law(law));
    CHECK(prophet_value(xs) == doctest::Approx(mc.prophet_value).epsilon(1e-9));

    std::vector<OffspringLaw> bad{OffspringLaw::poisson(0.8), OffspringLaw::poisson(1.5)};
    CHECK_THROWS_AS(max_correspondence_product(bad), std::domain_error);
}
