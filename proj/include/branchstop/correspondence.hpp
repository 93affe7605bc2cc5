#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "branchstop/gf.hpp"
#include "branchstop/rng.hpp"

namespace branchstop {

enum class HMode { closed_form, quadrature };

/// The [0,1]-valued distribution paired with an offspring law: an atom of
/// size P(Y=1) at 0, density g''(x) on (0, pi), and an atom of size
/// 1 - g'(pi) at pi, where pi is the eventual extinction probability.
class StoppingLaw {
public:
    explicit StoppingLaw(OffspringLaw source);

    const OffspringLaw& source() const { return source_; }
    double pi() const { return pi_; }
    double atom_at_zero() const { return atom_zero_; }
    double atom_at_pi() const { return atom_pi_; }
    double gprime_at_pi() const { return gp_pi_; }

    /// Right-continuous CDF: 0 below 0, g'(x) on [0, pi), 1 from pi on.
    double cdf(double x) const;
    /// Left limit P(X < x).
    double cdf_left(double x) const;

    /// Density g''(x) of the continuous part on (0, pi). The second argument
    /// is a cancellation-free distance pi - x supplied by quadrature callers;
    /// laws whose density blows up at pi evaluate through it.
    double density(double x, double pi_minus_x) const;
    double density(double x) const { return density(x, pi_ - x); }

    /// Expected value E[X] (equals P(Y=0)).
    double ex() const { return source_.pmf(0); }

private:
    OffspringLaw source_;
    double pi_;
    double atom_zero_;
    double atom_pi_;
    double gp_pi_;
};

StoppingLaw to_stopping_law(const OffspringLaw& law);

/// One-step payoff operator h(a) = E[X v a] for a in [0, 1].
///
/// closed_form evaluates the generating-function identity; quadrature works
/// from atoms plus numeric integration of the density and never touches g,
/// giving an independent route to the same value.
double payoff_h(const StoppingLaw& law, double a, HMode mode);

/// Draws from the stopping law: atoms first, then inverse-CDF bisection on
/// the continuous part to 1e-12.
double sample(const StoppingLaw& law, RngStream& rng);

/// A candidate CDF (3.6-form): k(x) on [0, pi) given through its power
/// series coefficients. Only analytically-specified series are accepted;
/// the coefficient callback is the ground truth for condition (i).
struct CandidateCdf {
    double pi = 1.0;
    std::function<double(int)> coeff;
    int max_degree = 0;
};

/// Outcome of attempting to reconstruct an offspring law from a CandidateCdf.
/// Rejection is a value: `law` is empty and `rejection` names the failed
/// condition.
struct Inversion {
    bool accepted = false;
    std::string rejection;
    double c = 0.0;                    // P(Y=0) of the reconstruction
    double mean = 0.0;                 // EY = k(1), sum of coefficients
    std::optional<OffspringLaw> law;
};

/// Checks nonnegativity of the series coefficients and the existence of a
/// constant c > 0 making g(s) = int_0^s k + c a generating function fixing
/// both 1 and pi; on success returns the law with p_0 = c, p_k = a_{k-1}/k.
Inversion invert_to_offspring(const CandidateCdf& cdf);

}  // namespace branchstop
