#pragma once

#include <functional>
#include <span>
#include <vector>

#include "branchstop/gf.hpp"

namespace branchstop {

/// Declared behaviour of the series sum r_i = P(Y_i != 1). Divergence is a
/// property of the generator rule, never inferred from finitely many terms.
enum class SumDeclared { unknown, divergent, convergent };

/// A finite or generated sequence of offspring laws, one per generation
/// (1-based). Generated sequences are materialized up to the horizon cap at
/// construction, so instances are immutable and safe to share across threads.
class Environment {
public:
    static Environment fixed(std::vector<OffspringLaw> laws,
                             SumDeclared declared = SumDeclared::unknown);
    static Environment homogeneous(OffspringLaw law, int horizon);
    static Environment generated(const std::function<OffspringLaw(int)>& gen, int horizon,
                                 SumDeclared declared = SumDeclared::unknown);

    /// Offspring law of generation i, 1 <= i <= horizon().
    const OffspringLaw& law(int i) const;
    int horizon() const;
    bool is_homogeneous() const { return homogeneous_; }
    SumDeclared declared_r_summability() const { return declared_; }

    /// g_1(g_2(...g_n(s))) over the first n generations.
    double iterate(int n, double s) const;
    /// Extinction probability of generation n.
    double extinction(int n) const { return iterate(n, 0.0); }

private:
    Environment() = default;
    std::vector<OffspringLaw> laws_;
    bool homogeneous_ = false;
    int horizon_ = 0;
    SumDeclared declared_ = SumDeclared::unknown;
};

/// Product of offspring means over the first n generations (expected size
/// of generation n).
double expected_size(const Environment& env, int n);

}  // namespace branchstop
