#pragma once

// Extended-precision generating-function evaluation, shared by the root
// refinement in gf.cpp (long double) and the supercritical gap iteration in
// asymptotics.cpp (__float128). Internal header.

#include <quadmath.h>

#include <cmath>

#include "branchstop/gf.hpp"

namespace branchstop::detail {

inline long double exp_e(long double x) { return expl(x); }
inline __float128 exp_e(__float128 x) { return expq(x); }
inline long double pow_e(long double x, long double y) { return powl(x, y); }
inline __float128 pow_e(__float128 x, __float128 y) { return powq(x, y); }

template <typename F>
F g_ext(const OffspringLaw& law, F s) {
    switch (law.family()) {
        case Family::bernoulli:
            return (F(1) - F(law.p())) + F(law.p()) * s;
        case Family::m_bernoulli:
            return (F(1) - F(law.p())) + F(law.p()) * pow_e(s, F(law.m()));
        case Family::poisson:
            return exp_e(F(law.lambda()) * (s - F(1)));
        case Family::generalized_geometric: {
            const F b = F(law.gg_b()), c = F(law.gg_c());
            return (F(1) - b - c) / (F(1) - c) + b * s / (F(1) - c * s);
        }
        case Family::slack:
            return s + F(law.slack_c()) * pow_e(F(1) - s, F(1) + F(law.slack_alpha()));
        case Family::explicit_pmf: {
            F acc = F(0);
            const auto& p = law.probs();
            for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * s + F(*it);
            return acc;
        }
    }
    return F(0);
}

template <typename F>
F gprime_ext(const OffspringLaw& law, F s) {
    switch (law.family()) {
        case Family::bernoulli:
            return F(law.p());
        case Family::m_bernoulli:
            return F(law.m()) * F(law.p()) * pow_e(s, F(law.m() - 1));
        case Family::poisson:
            return F(law.lambda()) * exp_e(F(law.lambda()) * (s - F(1)));
        case Family::generalized_geometric: {
            const F b = F(law.gg_b()), c = F(law.gg_c());
            const F d = F(1) - c * s;
            return b / (d * d);
        }
        case Family::slack: {
            const F a = F(law.slack_alpha()), c = F(law.slack_c());
            return F(1) - c * (F(1) + a) * pow_e(F(1) - s, a);
        }
        case Family::explicit_pmf: {
            F acc = F(0);
            const auto& p = law.probs();
            for (int k = static_cast<int>(p.size()) - 1; k >= 1; --k)
                acc = acc * s + F(k) * F(p[k]);
            return acc;
        }
    }
    return F(0);
}

/// Newton refinement of a supercritical fixed point from a double-precision
/// seed; converges to the working precision of F near any root where
/// g' - 1 is bounded away from 0.
template <typename F>
F refine_root_ext(const OffspringLaw& law, double seed, int steps = 6) {
    F x = seed;
    for (int i = 0; i < steps; ++i) {
        const F f = g_ext(law, x) - x;
        const F fp = gprime_ext(law, x) - F(1);
        if (fp == F(0)) break;
        x -= f / fp;
    }
    return x;
}

}  // namespace branchstop::detail
