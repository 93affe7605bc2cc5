#pragma once

#include <optional>
#include <span>
#include <vector>

#include "branchstop/environment.hpp"
#include "branchstop/gf.hpp"

namespace branchstop {

/// Fractional-linear generating function g(s) = (alpha + beta s)/(gamma + delta s).
/// Closed under composition, which is what makes the generalized-geometric
/// family explicitly iterable.
struct MoebiusCoefficients {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 1.0;
    double delta = 0.0;

    double eval(double s) const { return (alpha + beta * s) / (gamma + delta * s); }

    /// Coefficients of this ∘ inner.
    MoebiusCoefficients compose(const MoebiusCoefficients& inner) const;

    static MoebiusCoefficients from_gg(const OffspringLaw& law);
};

struct InhomExtinction {
    double q = 0.0;                    // composition value g_1(...g_n(0))
    std::optional<double> q_h_path;    // backward-induction value, when computed
    bool ordering_held = false;        // pi_1 >= pi_2 >= ... >= pi_n
};

/// Extinction probability of generation n for a varying environment, via
/// generating-function composition. When the per-generation fixed points are
/// nonincreasing the same value is recomputed through the stopping-problem
/// backward induction (quadrature payoffs) and the two must agree to 1e-9;
/// disagreement throws. An ordering violation just skips the second path.
InhomExtinction inhom_extinction(const Environment& env, int n);

struct DivergenceReport {
    std::vector<double> partial_sums;  // of r_i = P(Y_i != 1)
    SumDeclared hint = SumDeclared::unknown;
    double pi0 = 0.0;
};

/// Partial sums of r_i for an environment whose fixed points all equal pi0
/// (checked to 1e-10; violating the hypothesis throws). The verdict on
/// divergence is only ever the generator's declared property.
DivergenceReport divergence_criterion(const Environment& env, int n_terms);

/// Elementary symmetric sums S_0..S_n of the given values, by the stable
/// one-row recurrence S_j += v S_{j-1}.
std::vector<double> elementary_symmetric(std::span<const double> values);

struct GgClosedForm {
    MoebiusCoefficients coeffs;
    double q = 0.0;  // alpha^(n)/gamma^(n)
};

/// n-fold composite of critical generalized-geometric laws (b_i = (1-c_i)^2)
/// in closed form. The coefficients are symmetric in the c_i, so any
/// permutation of the environment yields the same generation-n law.
GgClosedForm gg_closed_form(std::span<const double> c_list, int n);

/// Builds the critical GG environment matching gg_closed_form's inputs.
Environment critical_gg_env(std::span<const double> c_list);

/// True iff the two fractional-linear laws commute under composition
/// (alpha1/delta1 == alpha2/delta2 within 1e-12). Throws for delta == 0.
bool permutation_invariant(const MoebiusCoefficients& g1, const MoebiusCoefficients& g2);

/// Three-point law P(Y=0) = r/3, P(Y=1) = 1-r, P(Y=2) = 2r/3 with fixed
/// point 1/2 regardless of r in (0, 1].
OffspringLaw trinomial_law(double r);

}  // namespace branchstop
