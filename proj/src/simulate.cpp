#include "branchstop/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "branchstop/parallel.hpp"
#include "branchstop/rng.hpp"

namespace branchstop {

namespace {

constexpr std::uint64_t kSimBlock = 4096;
constexpr double kSamplerTail = 1e-14;
constexpr int kSamplerMaxEntries = 200000;  // heavy-tailed laws cap here

std::uint64_t draw(const std::vector<double>& cum, double u) {
    // offset variant: small supports dominate, so scan before binary search
    if (cum.size() <= 8) {
        for (std::size_t k = 0; k < cum.size(); ++k)
            if (u < cum[k]) return k;
        return cum.size() - 1;
    }
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cum.begin(), cum.size() - 1));
}

}  // namespace

EnsembleResult simulate(const Environment& env, int generations, std::uint64_t trials,
                        std::uint64_t seed, std::uint64_t pop_cap) {
    if (generations < 1) throw std::invalid_argument("simulate: generations must be >= 1");
    if (trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
    if (pop_cap < 1) throw std::invalid_argument("simulate: pop_cap must be >= 1");
    if (generations > env.horizon()) throw std::out_of_range("simulate: generations beyond horizon");

    // One cumulative table per generation (shared for homogeneous laws).
    std::vector<std::vector<double>> tables;
    if (env.is_homogeneous()) {
        tables.push_back(env.law(1).cumulative_table(kSamplerTail, kSamplerMaxEntries));
    } else {
        tables.reserve(generations);
        for (int i = 1; i <= generations; ++i)
            tables.push_back(env.law(i).cumulative_table(kSamplerTail, kSamplerMaxEntries));
    }
    auto table_for = [&](int gen) -> const std::vector<double>& {
        return env.is_homogeneous() ? tables[0] : tables[gen - 1];
    };

    const std::uint64_t n_blocks = (trials + kSimBlock - 1) / kSimBlock;
    struct BlockAcc {
        std::vector<std::uint64_t> extinct;
        std::vector<std::uint64_t> pop_sum;
        std::vector<std::uint64_t> uncapped;
        std::uint64_t cap_hits = 0;
    };
    std::vector<BlockAcc> acc(n_blocks);

    for_each_block(trials, kSimBlock, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
        BlockAcc& a = acc[b];
        a.extinct.assign(generations, 0);
        a.pop_sum.assign(generations, 0);
        a.uncapped.assign(generations, 0);
        for (std::uint64_t t = begin; t < end; ++t) {
            RngStream rng(seed, t);
            std::uint64_t z = 1;
            bool capped = false;
            for (int gen = 1; gen <= generations; ++gen) {
                if (capped) break;  // counted non-extinct for the rest
                if (z > 0) {
                    const auto& cum = table_for(gen);
                    std::uint64_t next = 0;
                    for (std::uint64_t i = 0; i < z; ++i) {
                        next += draw(cum, rng.next_uniform());
                        if (next > pop_cap) break;
                    }
                    if (next > pop_cap) {
                        capped = true;
                        ++a.cap_hits;
                        break;
                    }
                    z = next;
                }
                if (z == 0) ++a.extinct[gen - 1];
                a.pop_sum[gen - 1] += z;
                ++a.uncapped[gen - 1];
            }
        }
    });

    EnsembleResult out;
    out.trials = trials;
    out.seed = seed;
    out.pop_cap = pop_cap;
    out.extinct_freq.assign(generations, 0.0);
    out.std_error.assign(generations, 0.0);
    out.mean_population.assign(generations, 0.0);

    for (int g = 0; g < generations; ++g) {
        std::uint64_t extinct = 0, pop = 0, uncapped = 0;
        for (const auto& a : acc) {
            extinct += a.extinct[g];
            pop += a.pop_sum[g];
            uncapped += a.uncapped[g];
        }
        const double q = static_cast<double>(extinct) / static_cast<double>(trials);
        out.extinct_freq[g] = q;
        out.std_error[g] = std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
        out.mean_population[g] =
            uncapped > 0 ? static_cast<double>(pop) / static_cast<double>(uncapped) : 0.0;
    }
    for (const auto& a : acc) out.cap_hits += a.cap_hits;
    return out;
}

}  // namespace branchstop
