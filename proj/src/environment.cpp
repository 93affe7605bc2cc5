#include "branchstop/environment.hpp"

#include <stdexcept>

namespace branchstop {

Environment Environment::fixed(std::vector<OffspringLaw> laws, SumDeclared declared) {
    if (laws.empty()) throw std::invalid_argument("Environment: empty law sequence");
    Environment env;
    env.horizon_ = static_cast<int>(laws.size());
    env.laws_ = std::move(laws);
    env.declared_ = declared;
    return env;
}

Environment Environment::homogeneous(OffspringLaw law, int horizon) {
    if (horizon < 1) throw std::invalid_argument("Environment: horizon must be >= 1");
    Environment env;
    env.laws_.push_back(std::move(law));
    env.homogeneous_ = true;
    env.horizon_ = horizon;
    env.declared_ = SumDeclared::divergent;  // identical nondegenerate laws: r_i constant > 0
    return env;
}

Environment Environment::generated(const std::function<OffspringLaw(int)>& gen, int horizon,
                                   SumDeclared declared) {
    if (horizon < 1) throw std::invalid_argument("Environment: horizon must be >= 1");
    Environment env;
    env.laws_.reserve(horizon);
    for (int i = 1; i <= horizon; ++i) env.laws_.push_back(gen(i));
    env.horizon_ = horizon;
    env.declared_ = declared;
    return env;
}

const OffspringLaw& Environment::law(int i) const {
    if (i < 1 || i > horizon_) throw std::out_of_range("Environment: generation index beyond horizon");
    return homogeneous_ ? laws_[0] : laws_[i - 1];
}

int Environment::horizon() const { return horizon_; }

double Environment::iterate(int n, double s) const {
    if (n < 1) throw std::invalid_argument("Environment::iterate: n must be >= 1");
    if (n > horizon_) throw std::out_of_range("Environment::iterate: n beyond horizon");
    double x = s;
    for (int i = n; i >= 1; --i) x = law(i).g(x);
    return x;
}

double expected_size(const Environment& env, int n) {
    if (n < 1) throw std::invalid_argument("expected_size: n must be >= 1");
    double prod = 1.0;
    for (int i = 1; i <= n; ++i) prod *= env.law(i).mean();
    return prod;
}

}  // namespace branchstop
