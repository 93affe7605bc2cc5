#include "branchstop/gf.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "extended.hpp"

namespace branchstop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCriticalTol = 1e-12;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_s(double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("generating function argument outside [0,1]");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

}  // namespace

OffspringLaw OffspringLaw::bernoulli(double p) {
    require(p > 0.0 && p < 1.0, "bernoulli: p must lie in (0,1)");
    return OffspringLaw(Family::bernoulli, p, 0.0, 0);
}

OffspringLaw OffspringLaw::m_bernoulli(int m, double p) {
    require(m >= 2, "m_bernoulli: m must be >= 2");
    require(p > 0.0 && p < 1.0, "m_bernoulli: p must lie in (0,1)");
    return OffspringLaw(Family::m_bernoulli, p, 0.0, m);
}

OffspringLaw OffspringLaw::poisson(double lambda) {
    require(lambda > 0.0, "poisson: lambda must be positive");
    return OffspringLaw(Family::poisson, lambda, 0.0, 0);
}

OffspringLaw OffspringLaw::generalized_geometric(double b, double c) {
    require(b > 0.0 && c > 0.0 && b + c < 1.0, "generalized_geometric: need b,c > 0 and b + c < 1");
    return OffspringLaw(Family::generalized_geometric, b, c, 0);
}

OffspringLaw OffspringLaw::slack(double alpha, double c) {
    require(alpha > 0.0 && alpha <= 1.0, "slack: alpha must lie in (0,1]");
    require(c > 0.0 && c <= 1.0 / (1.0 + alpha), "slack: c must lie in (0, 1/(1+alpha)]");
    return OffspringLaw(Family::slack, alpha, c, 0);
}

OffspringLaw OffspringLaw::explicit_pmf(std::vector<double> probs, bool allow_zero_p0) {
    while (probs.size() > 1 && probs.back() == 0.0) probs.pop_back();
    require(probs.size() >= 2, "explicit_pmf: need support beyond {0}");
    double sum = 0.0;
    for (double q : probs) {
        require(q >= 0.0, "explicit_pmf: negative probability");
        require(q < 1.0, "explicit_pmf: degenerate point mass");
        sum += q;
    }
    require(std::abs(sum - 1.0) <= 1e-12, "explicit_pmf: probabilities must sum to 1");
    require(allow_zero_p0 || probs[0] > 0.0, "explicit_pmf: P(Y=0) = 0 requires allow_zero_p0");
    OffspringLaw law(Family::explicit_pmf, 0.0, 0.0, 0);
    law.table_ = std::move(probs);
    return law;
}

double OffspringLaw::g(double s) const {
    check_s(s);
    switch (family_) {
        case Family::bernoulli:
            return (1.0 - a_) + a_ * s;
        case Family::m_bernoulli:
            return (1.0 - a_) + a_ * std::pow(s, m_);
        case Family::poisson:
            return std::exp(a_ * (s - 1.0));
        case Family::generalized_geometric: {
            const double p0 = (1.0 - a_ - b_) / (1.0 - b_);
            return p0 + a_ * s / (1.0 - b_ * s);
        }
        case Family::slack:
            return s + b_ * std::pow(1.0 - s, 1.0 + a_);
        case Family::explicit_pmf: {
            double acc = 0.0;
            for (auto it = table_.rbegin(); it != table_.rend(); ++it) acc = acc * s + *it;
            return acc;
        }
    }
    return 0.0;
}

double OffspringLaw::g_derivative(double s, int order) const {
    check_s(s);
    if (order != 1 && order != 2) throw std::invalid_argument("g_derivative: order must be 1 or 2");
    switch (family_) {
        case Family::bernoulli:
            return order == 1 ? a_ : 0.0;
        case Family::m_bernoulli:
            return order == 1 ? m_ * a_ * std::pow(s, m_ - 1)
                              : static_cast<double>(m_) * (m_ - 1) * a_ * std::pow(s, m_ - 2);
        case Family::poisson: {
            const double e = std::exp(a_ * (s - 1.0));
            return order == 1 ? a_ * e : a_ * a_ * e;
        }
        case Family::generalized_geometric: {
            const double d = 1.0 - b_ * s;
            return order == 1 ? a_ / (d * d) : 2.0 * a_ * b_ / (d * d * d);
        }
        case Family::slack: {
            const double alpha = a_, c = b_;
            if (order == 1) return 1.0 - c * (1.0 + alpha) * std::pow(1.0 - s, alpha);
            if (s == 1.0 && alpha < 1.0) return kInf;
            return c * alpha * (1.0 + alpha) * std::pow(1.0 - s, alpha - 1.0);
        }
        case Family::explicit_pmf: {
            double acc = 0.0;
            if (order == 1) {
                for (int k = static_cast<int>(table_.size()) - 1; k >= 1; --k)
                    acc = acc * s + k * table_[k];
            } else {
                for (int k = static_cast<int>(table_.size()) - 1; k >= 2; --k)
                    acc = acc * s + static_cast<double>(k) * (k - 1) * table_[k];
            }
            return acc;
        }
    }
    return 0.0;
}

double OffspringLaw::pmf(int k) const {
    if (k < 0) return 0.0;
    switch (family_) {
        case Family::bernoulli:
            return k == 0 ? 1.0 - a_ : (k == 1 ? a_ : 0.0);
        case Family::m_bernoulli:
            return k == 0 ? 1.0 - a_ : (k == m_ ? a_ : 0.0);
        case Family::poisson: {
            double term = std::exp(-a_);
            for (int j = 1; j <= k; ++j) term *= a_ / j;
            return term;
        }
        case Family::generalized_geometric:
            return k == 0 ? (1.0 - a_ - b_) / (1.0 - b_) : a_ * std::pow(b_, k - 1);
        case Family::slack: {
            const double alpha = a_, c = b_;
            if (k == 0) return c;
            if (k == 1) return 1.0 - (1.0 + alpha) * c;
            // p_2 = c (1+alpha) alpha / 2, then p_{k+1} = p_k (k-1-alpha)/(k+1)
            double term = c * (1.0 + alpha) * alpha / 2.0;
            for (int j = 2; j < k; ++j) term *= (j - 1.0 - alpha) / (j + 1.0);
            return term;
        }
        case Family::explicit_pmf:
            return k < static_cast<int>(table_.size()) ? table_[k] : 0.0;
    }
    return 0.0;
}

std::vector<double> OffspringLaw::pmf_prefix(int count) const {
    std::vector<double> out;
    out.reserve(count);
    switch (family_) {
        case Family::poisson: {
            double term = std::exp(-a_);
            for (int k = 0; k < count; ++k) {
                out.push_back(term);
                term *= a_ / (k + 1);
            }
            break;
        }
        case Family::generalized_geometric: {
            double term = a_;
            for (int k = 0; k < count; ++k) {
                if (k == 0) {
                    out.push_back((1.0 - a_ - b_) / (1.0 - b_));
                } else {
                    out.push_back(term);
                    term *= b_;
                }
            }
            break;
        }
        case Family::slack: {
            double term = 0.0;
            for (int k = 0; k < count; ++k) {
                if (k == 0) {
                    out.push_back(b_);
                } else if (k == 1) {
                    out.push_back(1.0 - (1.0 + a_) * b_);
                } else if (k == 2) {
                    term = b_ * (1.0 + a_) * a_ / 2.0;
                    out.push_back(term);
                } else {
                    term *= (k - 2.0 - a_) / k;
                    out.push_back(term);
                }
            }
            break;
        }
        default:
            for (int k = 0; k < count; ++k) out.push_back(pmf(k));
            break;
    }
    return out;
}

double OffspringLaw::mean() const {
    switch (family_) {
        case Family::bernoulli: return a_;
        case Family::m_bernoulli: return m_ * a_;
        case Family::poisson: return a_;
        case Family::generalized_geometric: return a_ / ((1.0 - b_) * (1.0 - b_));
        case Family::slack: return 1.0;
        case Family::explicit_pmf: {
            double acc = 0.0;
            for (std::size_t k = 1; k < table_.size(); ++k) acc += k * table_[k];
            return acc;
        }
    }
    return 0.0;
}

double OffspringLaw::variance() const {
    double gpp;  // g''(1) = EY^2 - EY
    switch (family_) {
        case Family::bernoulli: gpp = 0.0; break;
        case Family::m_bernoulli: gpp = static_cast<double>(m_) * (m_ - 1) * a_; break;
        case Family::poisson: gpp = a_ * a_; break;
        case Family::generalized_geometric: {
            const double omc = 1.0 - b_;
            gpp = 2.0 * a_ * b_ / (omc * omc * omc);
            break;
        }
        case Family::slack:
            if (a_ < 1.0) return kInf;
            gpp = 2.0 * b_;
            break;
        case Family::explicit_pmf: {
            gpp = 0.0;
            for (std::size_t k = 2; k < table_.size(); ++k)
                gpp += static_cast<double>(k) * (k - 1.0) * table_[k];
            break;
        }
        default: gpp = 0.0; break;
    }
    const double m = mean();
    return gpp + m - m * m;
}

bool OffspringLaw::variance_finite() const {
    return !(family_ == Family::slack && a_ < 1.0);
}

Criticality OffspringLaw::criticality() const {
    const double m = mean();
    if (m > 1.0 + kCriticalTol) return Criticality::supercritical;
    if (m < 1.0 - kCriticalTol) return Criticality::subcritical;
    return Criticality::critical;
}

double OffspringLaw::fixed_point_excess(double d) const {
    switch (family_) {
        case Family::bernoulli:
            return (1.0 - a_) * d;
        case Family::m_bernoulli: {
            if (m_ == 2) return (1.0 - 2.0 * a_) * d + a_ * d * d;
            // d - p (1 - (1-d)^m)
            return d - a_ * (-std::expm1(m_ * std::log1p(-d)));
        }
        case Family::poisson:
            return std::expm1(-a_ * d) + d;
        case Family::generalized_geometric: {
            const double omc = 1.0 - b_;
            const double ey = a_ / (omc * omc);
            const double lin = (1.0 - ey) * omc;
            return d * (lin + b_ * d) / (omc + b_ * d);
        }
        case Family::slack:
            return b_ * std::pow(d, 1.0 + a_);
        case Family::explicit_pmf: {
            // g(s) - s = p0 (1-s) - s (1-s) sum_{k>=2} p_k (1 + s + ... + s^{k-2})
            const double s = 1.0 - d;
            double tail = 0.0;
            for (std::size_t k = table_.size(); k-- > 2;) {
                double geo = 0.0;
                for (std::size_t j = 0; j + 2 <= k; ++j) geo = geo * s + 1.0;
                tail += table_[k] * geo;
            }
            return d * (table_[0] - s * tail);
        }
    }
    return 0.0;
}

double OffspringLaw::gprime_complement(double omx) const {
    const double x = 1.0 - omx;
    switch (family_) {
        case Family::bernoulli:
            return 1.0 - a_;
        case Family::m_bernoulli: {
            const double mp = m_ * a_;
            return (1.0 - mp) + mp * (-std::expm1((m_ - 1) * std::log1p(-omx)));
        }
        case Family::poisson:
            return (1.0 - a_) - a_ * std::expm1(-a_ * omx);
        case Family::generalized_geometric: {
            const double omc = 1.0 - b_;
            const double den = omc + b_ * omx;  // 1 - c x
            const double crit = omc * omc;      // b at criticality
            if (std::abs(a_ - crit) <= 1e-14) {
                return b_ * omx * (2.0 * omc + b_ * omx) / (den * den);
            }
            return (den * den - a_) / (den * den);
        }
        case Family::slack:
            return b_ * (1.0 + a_) * std::pow(omx, a_);
        case Family::explicit_pmf: {
            double acc = 0.0;
            for (std::size_t k = 1; k < table_.size(); ++k) {
                double geo = 0.0;  // 1 + x + ... + x^{k-2}
                for (std::size_t j = 0; j + 1 < k; ++j) geo = geo * x + 1.0;
                acc += k * table_[k] * omx * geo;
            }
            return acc;
        }
    }
    return 0.0;
}

int OffspringLaw::support_bound() const {
    switch (family_) {
        case Family::bernoulli: return 1;
        case Family::m_bernoulli: return m_;
        case Family::slack: return a_ == 1.0 ? 2 : -1;
        case Family::explicit_pmf: return static_cast<int>(table_.size()) - 1;
        default: return -1;
    }
}

std::vector<double> OffspringLaw::cumulative_table(double tail, int max_entries) const {
    std::vector<double> cum;
    const int bound = support_bound();
    if (bound >= 0) {
        cum.reserve(bound + 1);
        double acc = 0.0;
        for (int k = 0; k <= bound; ++k) {
            acc += pmf(k);
            cum.push_back(acc);
        }
        cum.back() = 1.0;
        return cum;
    }
    const auto probs = pmf_prefix(max_entries);
    double acc = 0.0;
    for (int k = 0; k < max_entries; ++k) {
        acc += probs[k];
        cum.push_back(acc);
        if (1.0 - acc < tail) break;
    }
    return cum;
}

std::string OffspringLaw::describe() const {
    switch (family_) {
        case Family::bernoulli: return "bernoulli(p=" + fmt(a_) + ")";
        case Family::m_bernoulli: return "mbernoulli(m=" + std::to_string(m_) + ",p=" + fmt(a_) + ")";
        case Family::poisson: return "poisson(lambda=" + fmt(a_) + ")";
        case Family::generalized_geometric: return "gg(b=" + fmt(a_) + ",c=" + fmt(b_) + ")";
        case Family::slack: return "slack(alpha=" + fmt(a_) + ",c=" + fmt(b_) + ")";
        case Family::explicit_pmf: {
            std::string s = "pmf(";
            for (std::size_t k = 0; k < table_.size(); ++k) {
                if (k) s += ",";
                s += fmt(table_[k]);
            }
            return s + ")";
        }
    }
    return "";
}

double iterate_g(std::span<const OffspringLaw> laws, double s) {
    if (laws.empty()) throw std::invalid_argument("iterate_g: empty law sequence");
    double x = s;
    for (std::size_t i = laws.size(); i-- > 0;) x = laws[i].g(x);
    return x;
}

double iterate_g(const OffspringLaw& law, int n, double s) {
    double x = s;
    for (int i = 0; i < n; ++i) x = law.g(x);
    return x;
}

double extinction_prob(std::span<const OffspringLaw> laws, int n) {
    if (n < 1) throw std::invalid_argument("extinction_prob: n must be >= 1");
    if (static_cast<std::size_t>(n) > laws.size())
        throw std::invalid_argument("extinction_prob: fewer laws than generations");
    return iterate_g(laws.subspan(0, n), 0.0);
}

double extinction_prob(const OffspringLaw& law, int n) {
    if (n < 1) throw std::invalid_argument("extinction_prob: n must be >= 1");
    return iterate_g(law, n, 0.0);
}

double eventual_extinction(const OffspringLaw& law) {
    if (law.pmf(0) == 0.0) return 0.0;
    if (law.mean() <= 1.0 + kCriticalTol) return 1.0;

    // Closed forms where the family admits one, evaluated in long double so
    // the returned double is the correctly rounded root. Atom thresholds
    // (stop at the first X_i = pi) compare against this value exactly, so a
    // one-ulp root moves mass across the comparison.
    switch (law.family()) {
        case Family::m_bernoulli:
            if (law.m() == 2)
                return static_cast<double>((1.0L - (long double)law.p()) / (long double)law.p());
            break;
        case Family::generalized_geometric: {
            const long double b = law.gg_b(), c = law.gg_c();
            return static_cast<double>((1.0L - (b + c)) / (c * (1.0L - c)));
        }
        case Family::explicit_pmf:
            if (law.probs().size() == 3) {
                // smaller root of p2 s^2 - (1-p1) s + p0, in the
                // subtraction-free form 2 p0 / ((1-p1) + sqrt(disc))
                const long double p0 = law.probs()[0], p1 = law.probs()[1], p2 = law.probs()[2];
                const long double lin = 1.0L - p1;
                const long double disc = lin * lin - 4.0L * p2 * p0;
                return static_cast<double>(2.0L * p0 /
                                           (lin + sqrtl(disc < 0.0L ? 0.0L : disc)));
            }
            break;
        default:
            break;
    }

    auto excess = [&](double s) { return law.g(s) - s; };
    double delta = 1e-9;
    while (delta < 0.5 && excess(1.0 - delta) >= 0.0) delta *= 8.0;
    double lo = 0.0, hi = 1.0 - delta;
    if (excess(hi) >= 0.0) return 1.0;  // numerically indistinguishable from critical
    while (hi - lo > 1e-11) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return static_cast<double>(detail::refine_root_ext<long double>(law, 0.5 * (lo + hi)));
}

}  // namespace branchstop
