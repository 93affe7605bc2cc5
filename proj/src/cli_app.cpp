#include "branchstop/cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "branchstop/asymptotics.hpp"
#include "branchstop/correspondence.hpp"
#include "branchstop/inhomogeneous.hpp"
#include "branchstop/prophet.hpp"
#include "branchstop/report.hpp"
#include "branchstop/simulate.hpp"
#include "branchstop/stopping.hpp"

namespace branchstop {

namespace {

using SpecEcho = std::vector<std::pair<std::string, std::string>>;

struct Artifact {
    Table table;
    std::vector<Check> checks;
    SpecEcho echo;
    bool failed = false;  // any check failed
};

void echo_law(SpecEcho& e, const ExperimentSpec& s) {
    e.emplace_back("family", s.family);
    if (s.family == "bernoulli") e.emplace_back("p", format_double(s.p));
    if (s.family == "mbernoulli") {
        e.emplace_back("m", std::to_string(s.m));
        e.emplace_back("p", format_double(s.p));
    }
    if (s.family == "poisson") e.emplace_back("lambda", format_double(s.lambda));
    if (s.family == "gg") {
        e.emplace_back("b", format_double(s.b));
        e.emplace_back("c", format_double(s.c));
    }
    if (s.family == "slack") {
        e.emplace_back("alpha", format_double(s.alpha));
        e.emplace_back("c", format_double(s.c));
    }
    if (s.family == "pmf") {
        std::string probs;
        for (std::size_t i = 0; i < s.probs.size(); ++i) {
            if (i) probs += ",";
            probs += format_double(s.probs[i]);
        }
        e.emplace_back("probs", probs);
    }
}

Environment env_from_spec(const ExperimentSpec& spec, int horizon) {
    if (spec.env == "gg-critical") {
        if (spec.c_list.empty()) throw std::invalid_argument("gg-critical env needs --c-list");
        std::vector<double> cs = spec.c_list;
        return critical_gg_env(cs);
    }
    if (spec.env == "trinomial") {
        if (spec.r_pattern == "one")
            return Environment::generated([](int) { return trinomial_law(1.0); }, horizon,
                                          SumDeclared::divergent);
        if (spec.r_pattern == "invsq")
            return Environment::generated(
                [](int i) { return trinomial_law(1.0 / ((i + 1.0) * (i + 1.0))); }, horizon,
                SumDeclared::convergent);
        throw std::invalid_argument("trinomial env needs --r-pattern one|invsq");
    }
    if (!spec.env.empty()) throw std::invalid_argument("unknown env: " + spec.env);
    return Environment::homogeneous(law_from_spec(spec), horizon);
}

Artifact cmd_extinction(const ExperimentSpec& spec) {
    const auto law = law_from_spec(spec);
    Artifact art;
    art.table.columns = {"n", "q_n"};
    double q = 0.0;
    for (int k = 1; k <= spec.n; ++k) {
        q = law.g(q);
        art.table.add({k, q});
    }
    return art;
}

Artifact cmd_correspond(const ExperimentSpec& spec) {
    const auto x = to_stopping_law(law_from_spec(spec));
    Artifact art;
    art.table.columns = {"pi", "atom_at_zero", "atom_at_pi", "continuous_mass", "ex"};
    art.table.add({x.pi(), x.atom_at_zero(), x.atom_at_pi(),
                   x.gprime_at_pi() - x.atom_at_zero(), x.ex()});
    return art;
}

Artifact cmd_stopping_value(const ExperimentSpec& spec) {
    const auto x = to_stopping_law(law_from_spec(spec));
    const HMode mode = spec.mode == "quadrature" ? HMode::quadrature : HMode::closed_form;
    Artifact art;
    art.table.columns = {"k", "v_k"};
    double v = 0.0;
    for (int k = 1; k <= spec.n; ++k) {
        v = payoff_h(x, v, mode);
        art.table.add({k, v});
    }
    return art;
}

Artifact cmd_simulate(const ExperimentSpec& spec) {
    const Environment env = env_from_spec(spec, spec.n);
    const auto res = simulate(env, spec.n, spec.trials ? spec.trials : 10000, spec.seed,
                              spec.pop_cap);
    Artifact art;
    art.table.columns = {"generation", "q_hat", "std_error", "mean_population", "q_analytic"};
    for (int g = 1; g <= spec.n; ++g) {
        art.table.add({g, res.extinct_freq[g - 1], res.std_error[g - 1],
                       res.mean_population[g - 1], env.extinction(g)});
    }
    Check c;
    c.name = "cap_hits";
    c.detail = "trials that exceeded pop_cap (counted non-extinct onward)";
    c.lhs = static_cast<double>(res.cap_hits);
    c.rhs = 0.0;
    c.tol = static_cast<double>(spec.trials);
    c.pass = true;
    art.checks.push_back(c);
    return art;
}

Artifact cmd_asymptotics(const ExperimentSpec& spec) {
    const auto law = law_from_spec(spec);
    Artifact art;
    art.table.columns = {"n", "q_n", "statistic", "bound", "pass"};
    RateReport rep;
    switch (law.criticality()) {
        case Criticality::supercritical:
            rep = supercritical_check(law, spec.n);
            break;
        case Criticality::subcritical:
            rep = subcritical_check(law, spec.n);
            break;
        case Criticality::critical: {
            std::vector<std::int64_t> grid;
            for (std::int64_t k = 1; k <= spec.n; k *= 2) grid.push_back(k);
            if (grid.back() != spec.n) grid.push_back(spec.n);
            rep = critical_limit(law, grid);
            break;
        }
    }
    for (const auto& row : rep.rows)
        art.table.add({row.n, row.q_n, row.statistic, row.reference, row.pass ? 1 : 0});
    art.failed = !rep.all_pass;
    return art;
}

Artifact cmd_inhomogeneous(const ExperimentSpec& spec) {
    Artifact art;
    art.table.columns = {"n", "q_n", "q_alt", "alt_kind"};
    if (spec.env == "gg-critical") {
        const Environment env = env_from_spec(spec, spec.n);
        const int n = std::min<int>(spec.n, env.horizon());
        for (int k = 1; k <= n; ++k) {
            const auto cf = gg_closed_form(spec.c_list, k);
            art.table.add({k, env.extinction(k), cf.q, "closed-form"});
        }
        return art;
    }
    const Environment env = env_from_spec(spec, spec.n);
    for (int k = 1; k <= spec.n; ++k) {
        const auto r = inhom_extinction(env, k);
        if (r.q_h_path)
            art.table.add({k, r.q, *r.q_h_path, "h-path"});
        else
            art.table.add({k, r.q, Cell(), "skipped (pi ordering violated)"});
    }
    return art;
}

Artifact cmd_prophet(const ExperimentSpec& spec) {
    const auto law = law_from_spec(spec);
    const auto x = to_stopping_law(law);
    const bool mc = spec.trials > 0;
    Artifact art;
    art.table.columns = {"n", "v_p", "v_n", "p_ystar_zero", "mc_estimate", "mc_std_error"};
    std::vector<StoppingLaw> xs;
    for (int k = 1; k <= spec.n; ++k) {
        xs.push_back(x);
        const double vp = prophet_value(xs);
        const double vn = value_iid(x, k, HMode::closed_form);
        Cell ystar, mc_est, mc_se;
        if (law.mean() <= 1.0 + 1e-12) ystar = Cell(max_correspondence(law, k).prophet_value);
        if (mc) {
            const auto est = prophet_value_mc(xs, spec.trials, spec.seed);
            mc_est = Cell(est.estimate);
            mc_se = Cell(est.std_error);
        }
        art.table.add({k, vp, vn, ystar, mc_est, mc_se});
    }
    return art;
}

void check_abs(Artifact& art, const std::string& name, const std::string& detail, double lhs,
               double rhs, double tol) {
    Check c;
    c.name = name;
    c.detail = detail;
    c.lhs = lhs;
    c.rhs = rhs;
    c.tol = tol;
    c.pass = std::abs(lhs - rhs) <= tol;
    art.failed = art.failed || !c.pass;
    art.checks.push_back(c);
}

void check_true(Artifact& art, const std::string& name, const std::string& detail, bool ok,
                double lhs = 0.0, double rhs = 0.0) {
    Check c;
    c.name = name;
    c.detail = detail;
    c.lhs = lhs;
    c.rhs = rhs;
    c.tol = 0.0;
    c.pass = ok;
    art.failed = art.failed || !c.pass;
    art.checks.push_back(c);
}

Artifact cmd_verify_all(const ExperimentSpec& spec) {
    Artifact art;
    const auto matrix = verification_matrix();

    // stopping value vs extinction probability, quadrature path
    for (const auto& [name, law] : matrix) {
        const auto x = to_stopping_law(law);
        double worst = 0.0;
        double v = 0.0, q = 0.0;
        for (int n = 1; n <= 30; ++n) {
            v = payoff_h(x, v, HMode::quadrature);
            q = law.g(q);
            worst = std::max(worst, std::abs(v - q));
        }
        check_abs(art, "duality", name + " n<=30 max|V_n - q_n|", worst, 0.0, 1e-8);
    }

    // payoff operator: the two evaluation modes on a grid
    for (const auto& [name, law] : matrix) {
        const auto x = to_stopping_law(law);
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double a = x.pi() * i / 100.0;
            worst = std::max(worst,
                             std::abs(payoff_h(x, a, HMode::closed_form) -
                                      payoff_h(x, a, HMode::quadrature)));
        }
        check_abs(art, "payoff-two-mode", name + " grid max diff", worst, 0.0, 1e-9);
    }

    // generalized-geometric closed form vs direct composition
    {
        RngStream rng(spec.seed, 7001);
        double worst = 0.0;
        for (int rep = 0; rep < 20; ++rep) {
            const int n = 2 + static_cast<int>(rng.next_u64() % 11);
            std::vector<double> cs;
            for (int i = 0; i < n; ++i) cs.push_back(0.05 + 0.9 * rng.next_uniform());
            const auto cf = gg_closed_form(cs, n);
            const auto env = critical_gg_env(cs);
            worst = std::max(worst, std::abs(cf.q - env.extinction(n)));
        }
        check_abs(art, "gg-closed-form", "20 random critical envs", worst, 0.0, 1e-10);
    }

    // permutation invariance of critical-GG composition
    {
        RngStream rng(spec.seed, 7002);
        std::vector<double> cs;
        for (int i = 0; i < 5; ++i) cs.push_back(0.1 + 0.8 * rng.next_uniform());
        std::sort(cs.begin(), cs.end());
        double lo = 2.0, hi = -1.0;
        do {
            const auto env = critical_gg_env(cs);
            const double q = env.extinction(5);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        } while (std::next_permutation(cs.begin(), cs.end()));
        check_abs(art, "gg-permutation", "spread over 120 orderings", hi - lo, 0.0, 1e-12);
    }

    // Monte Carlo vs backward induction
    {
        const auto x = to_stopping_law(OffspringLaw::m_bernoulli(2, 0.75));
        std::vector<StoppingLaw> xs(6, x);
        const auto vs = value_sequence(xs, HMode::closed_form);
        const auto est = evaluate_rule_mc(xs, optimal_rule(vs), 20000, spec.seed);
        check_abs(art, "stopping-mc", "mbernoulli(2,0.75) n=6 optimal rule", est.estimate,
                  vs.value(), 4.0 * est.std_error);
    }

    // simulation vs analytic extinction
    for (const char* fam : {"poisson08", "mbern05"}) {
        const OffspringLaw law = std::string(fam) == "poisson08"
                                     ? OffspringLaw::poisson(0.8)
                                     : OffspringLaw::m_bernoulli(2, 0.5);
        const auto env = Environment::homogeneous(law, 10);
        const auto res = simulate(env, 10, 20000, spec.seed, 100000);
        double worst = 0.0;
        for (int g = 1; g <= 10; ++g) {
            const double diff = std::abs(res.extinct_freq[g - 1] - env.extinction(g));
            const double band = 4.0 * std::max(res.std_error[g - 1], 1e-6);
            worst = std::max(worst, diff / band);
        }
        check_true(art, "simulate-oracle", std::string(fam) + " max |qhat-q|/4SE <= 1", worst <= 1.0,
                   worst, 1.0);
    }

    // prophet: analytic vs Monte Carlo, and the doubling bound
    {
        const auto x = to_stopping_law(OffspringLaw::poisson(0.8));
        std::vector<StoppingLaw> xs(3, x);
        const double vp = prophet_value(xs);
        const auto est = prophet_value_mc(xs, 20000, spec.seed);
        check_abs(art, "prophet-mc", "poisson(0.8) n=3", est.estimate, vp, 4.0 * est.std_error);
    }
    for (const auto& [name, law] : matrix) {
        const auto x = to_stopping_law(law);
        std::vector<StoppingLaw> xs(8, x);
        const double vp = prophet_value(xs);
        const double vn = value_iid(x, 8, HMode::closed_form);
        check_true(art, "prophet-doubling", name + " V_p < 2 V_n at n=8", vp < 2.0 * vn, vp,
                   2.0 * vn);
    }

    // critical limit statistic
    {
        const std::int64_t ns[] = {10000};
        const auto gaps = critical_gap_sequence(OffspringLaw::m_bernoulli(2, 0.5), ns);
        check_abs(art, "critical-limit", "mbernoulli(2,0.5) n(1-q_n) at n=1e4", 10000.0 * gaps[0],
                  2.0, 0.04);
    }

    // three-point environment enclosure
    {
        const auto enc = trinomial_enclosure([](std::int64_t i) { return 1.0 / ((i + 1.0) * (i + 1.0)); },
                                             1000000, 1e-6, SumDeclared::convergent);
        check_abs(art, "trinomial-products", "prod(1-r_i) at N=1e6", enc.product_r, 0.5, 1e-6);
        const Environment env = Environment::generated(
            [](int i) { return trinomial_law(1.0 / ((i + 1.0) * (i + 1.0))); }, 600,
            SumDeclared::convergent);
        const double q = env.extinction(600);
        check_true(art, "trinomial-plateau", "q_600 inside (lower, upper)",
                   q > enc.lower && q < enc.upper, q, enc.upper);
    }

    art.table.columns = {"check", "detail", "lhs", "rhs", "tol", "pass"};
    for (const auto& c : art.checks)
        art.table.add({c.name, c.detail, c.lhs, c.rhs, c.tol, c.pass ? 1 : 0});
    return art;
}

void write_artifact(const ExperimentSpec& spec, Artifact& art) {
    SpecEcho echo;
    echo.emplace_back("command", spec.command);
    for (auto& kv : art.echo) echo.push_back(std::move(kv));
    if (spec.has_seed) echo.emplace_back("seed", std::to_string(spec.seed));

    const std::string text =
        spec.format == "json" ? to_json(echo, art.table, art.checks) : to_csv(art.table);
    if (spec.output.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        std::ofstream out(spec.output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + spec.output);
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
    }
}

int run_one(const ExperimentSpec& spec) {
    Artifact art;
    if (spec.command == "extinction") art = cmd_extinction(spec);
    else if (spec.command == "correspond") art = cmd_correspond(spec);
    else if (spec.command == "stopping-value") art = cmd_stopping_value(spec);
    else if (spec.command == "simulate") art = cmd_simulate(spec);
    else if (spec.command == "asymptotics") art = cmd_asymptotics(spec);
    else if (spec.command == "inhomogeneous") art = cmd_inhomogeneous(spec);
    else if (spec.command == "prophet") art = cmd_prophet(spec);
    else if (spec.command == "verify-all") art = cmd_verify_all(spec);
    else throw std::invalid_argument("unknown command: " + spec.command);

    if (!spec.family.empty()) {
        SpecEcho e;
        echo_law(e, spec);
        for (auto& kv : e) art.echo.push_back(kv);
    }
    write_artifact(spec, art);
    return art.failed ? 1 : 0;
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
    ExperimentSpec s;
    s.command = j.value("command", "");
    s.family = j.value("family", "");
    s.p = j.value("p", 0.0);
    s.m = j.value("m", 0);
    s.lambda = j.value("lambda", 0.0);
    s.b = j.value("b", 0.0);
    s.c = j.value("c", 0.0);
    s.alpha = j.value("alpha", 0.0);
    if (j.contains("probs")) s.probs = j["probs"].get<std::vector<double>>();
    s.env = j.value("env", "");
    if (j.contains("c_list")) s.c_list = j["c_list"].get<std::vector<double>>();
    s.r_pattern = j.value("r_pattern", "");
    s.n = j.value("n", 10);
    s.trials = j.value("trials", 0ull);
    if (j.contains("seed")) {
        s.seed = j["seed"].get<std::uint64_t>();
        s.has_seed = true;
    }
    s.pop_cap = j.value("pop_cap", 1000000ull);
    s.mode = j.value("mode", "closed");
    s.format = j.value("format", "csv");
    s.output = j.value("output", "");
    return s;
}

void validate_stochastic(const ExperimentSpec& spec) {
    const bool stochastic = spec.command == "simulate" || spec.command == "verify-all" ||
                            (spec.command == "prophet" && spec.trials > 0);
    if (stochastic && !spec.has_seed)
        throw std::invalid_argument(spec.command + ": --seed is mandatory for stochastic runs");
}

}  // namespace

OffspringLaw law_from_spec(const ExperimentSpec& spec) {
    if (spec.family == "bernoulli") return OffspringLaw::bernoulli(spec.p);
    if (spec.family == "mbernoulli") return OffspringLaw::m_bernoulli(spec.m, spec.p);
    if (spec.family == "poisson") return OffspringLaw::poisson(spec.lambda);
    if (spec.family == "gg") return OffspringLaw::generalized_geometric(spec.b, spec.c);
    if (spec.family == "slack") return OffspringLaw::slack(spec.alpha, spec.c);
    if (spec.family == "pmf") return OffspringLaw::explicit_pmf(spec.probs);
    throw std::invalid_argument("unknown family: " + spec.family);
}

std::vector<std::pair<std::string, OffspringLaw>> verification_matrix() {
    return {
        {"bernoulli(0.3)", OffspringLaw::bernoulli(0.3)},
        {"mbernoulli(2,0.5)", OffspringLaw::m_bernoulli(2, 0.5)},
        {"mbernoulli(2,0.75)", OffspringLaw::m_bernoulli(2, 0.75)},
        {"mbernoulli(3,0.2)", OffspringLaw::m_bernoulli(3, 0.2)},
        {"poisson(0.8)", OffspringLaw::poisson(0.8)},
        {"poisson(1.0)", OffspringLaw::poisson(1.0)},
        {"poisson(2.0)", OffspringLaw::poisson(2.0)},
        {"gg(0.25,0.4)", OffspringLaw::generalized_geometric(0.25, 0.4)},
        {"slack(0.5,0.5)", OffspringLaw::slack(0.5, 0.5)},
    };
}

int run_spec(const ExperimentSpec& spec) {
    try {
        validate_stochastic(spec);
        return run_one(spec);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid spec: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid spec: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid spec: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    }
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"extinction probabilities and optimal stopping values, cross-verified"};
    app.require_subcommand(1);

    ExperimentSpec spec;
    std::string probs_csv, c_list_csv, config_path;

    auto add_law_flags = [&](CLI::App* cmd) {
        cmd->add_option("--family", spec.family, "bernoulli|mbernoulli|poisson|gg|slack|pmf");
        cmd->add_option("--p", spec.p, "success probability");
        cmd->add_option("--m", spec.m, "offspring count for mbernoulli");
        cmd->add_option("--lambda", spec.lambda, "poisson mean");
        cmd->add_option("--b", spec.b, "gg parameter b");
        cmd->add_option("--c", spec.c, "gg/slack parameter c");
        cmd->add_option("--alpha", spec.alpha, "slack tail exponent");
        cmd->add_option("--probs", probs_csv, "explicit pmf, comma separated");
    };
    auto add_io_flags = [&](CLI::App* cmd) {
        cmd->add_option("--format", spec.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--output", spec.output, "output path (default stdout)");
    };

    auto* ext = app.add_subcommand("extinction", "per-generation extinction probabilities");
    add_law_flags(ext);
    ext->add_option("--n", spec.n, "horizon");
    add_io_flags(ext);

    auto* cor = app.add_subcommand("correspond", "stopping law derived from an offspring law");
    add_law_flags(cor);
    add_io_flags(cor);

    auto* sv = app.add_subcommand("stopping-value", "optimal stopping values V_1..V_n");
    add_law_flags(sv);
    sv->add_option("--n", spec.n, "horizon");
    sv->add_option("--mode", spec.mode, "closed|quadrature")
        ->check(CLI::IsMember({"closed", "quadrature"}));
    add_io_flags(sv);

    auto* sim = app.add_subcommand("simulate", "forward population simulation");
    add_law_flags(sim);
    sim->add_option("--env", spec.env, "gg-critical|trinomial (default: homogeneous family)");
    sim->add_option("--c-list", c_list_csv, "comma separated c values for gg-critical");
    sim->add_option("--r-pattern", spec.r_pattern, "one|invsq for trinomial env");
    sim->add_option("--n", spec.n, "generations");
    sim->add_option("--trials", spec.trials, "simulation trials");
    auto* sim_seed = sim->add_option("--seed", spec.seed, "PRNG seed");
    sim->add_option("--pop-cap", spec.pop_cap, "population cap");
    add_io_flags(sim);

    auto* asy = app.add_subcommand("asymptotics", "convergence-rate checks for q_n -> pi");
    add_law_flags(asy);
    asy->add_option("--n", spec.n, "max generation (or grid top for critical laws)");
    add_io_flags(asy);

    auto* inh = app.add_subcommand("inhomogeneous", "varying-environment extinction");
    inh->add_option("--env", spec.env, "gg-critical|trinomial")->required();
    inh->add_option("--c-list", c_list_csv, "comma separated c values for gg-critical");
    inh->add_option("--r-pattern", spec.r_pattern, "one|invsq for trinomial env");
    inh->add_option("--n", spec.n, "horizon");
    add_io_flags(inh);

    auto* pro = app.add_subcommand("prophet", "expected-maximum values and bounds");
    add_law_flags(pro);
    pro->add_option("--n", spec.n, "horizon");
    pro->add_option("--trials", spec.trials, "Monte Carlo trials (0 = analytic only)");
    auto* pro_seed = pro->add_option("--seed", spec.seed, "PRNG seed");
    add_io_flags(pro);

    auto* ver = app.add_subcommand("verify-all", "full cross-check matrix");
    auto* ver_seed = ver->add_option("--seed", spec.seed, "PRNG seed")->required();
    add_io_flags(ver);

    auto* bat = app.add_subcommand("batch", "run experiments from a JSON config");
    bat->add_option("--config", config_path, "config file: {\"runs\": [spec, ...]}")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto parse_csv_list = [](const std::string& text) {
        std::vector<double> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
        return out;
    };
    try {
        if (!probs_csv.empty()) spec.probs = parse_csv_list(probs_csv);
        if (!c_list_csv.empty()) spec.c_list = parse_csv_list(c_list_csv);
    } catch (const std::exception&) {
        std::cerr << "invalid spec: malformed numeric list\n";
        return 2;
    }
    spec.has_seed = (sim_seed && sim_seed->count() > 0) || (pro_seed && pro_seed->count() > 0) ||
                    (ver_seed && ver_seed->count() > 0);

    if (bat->parsed()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "invalid spec: cannot open config " << config_path << "\n";
            return 2;
        }
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const std::exception& e) {
            std::cerr << "invalid spec: config parse error: " << e.what() << "\n";
            return 2;
        }
        if (!doc.contains("runs") || !doc["runs"].is_array()) {
            std::cerr << "invalid spec: config must contain a \"runs\" array\n";
            return 2;
        }
        int worst = 0;
        for (const auto& j : doc["runs"]) worst = std::max(worst, run_spec(spec_from_json(j)));
        return worst;
    }

    spec.command = app.get_subcommands().front()->get_name();
    return run_spec(spec);
}

}  // namespace branchstop
