#include "cli_app.hpp"

#include <map>

#include <CLI11.hpp>

#include "pathint/experiments.hpp"

namespace {

struct CommonFlags {
    std::string levels = "1..10";
};

// each subcommand wants its own default path; the config struct is shared, so
// defaults are applied after parsing when --path was not given
struct PathDefaults {
    std::map<std::string, std::pair<CLI::Option*, std::string>> by_command;
};

void add_common(CLI::App* sub, pathint::ExperimentConfig& cfg, CommonFlags& common) {
    sub->fallthrough(); // lets the app-level --config appear after the subcommand
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--grid-log2", cfg.grid_log2, "log2 of the number of grid intervals")
        ->check(CLI::Range(1, 26));
    sub->add_option("--levels", common.levels, "dyadic level range a..b");
    sub->add_option("--out", cfg.out_path, "output CSV file (default: stdout)");
}

void add_path(CLI::App* sub, pathint::ExperimentConfig& cfg, PathDefaults& defaults,
              const std::string& def) {
    auto* opt = sub->add_option(
        "--path", cfg.path_spec,
        "path spec: brownian | bpair | smooth:t | smooth:sin | lacunary:<alpha>:<m>");
    defaults.by_command[sub->get_name()] = {opt, def};
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"pathwise stochastic integration experiments"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "key-value config file with one [subcommand] section; flags override");

    pathint::ExperimentConfig cfg;
    CommonFlags common;
    PathDefaults defaults;

    auto* levy = app.add_subcommand("levy", "Levy area of the truncated lacunary pair");
    add_common(levy, cfg, common);
    levy->add_option("--alpha", cfg.alpha, "lacunary exponent in (0,1)")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    levy->add_option("--m", cfg.m, "largest truncation level")->check(CLI::PositiveNumber);

    auto* integrate = app.add_subcommand("integrate", "gamma-Riemann sums of X against itself");
    add_common(integrate, cfg, common);
    add_path(integrate, cfg, defaults, "brownian");
    integrate->add_option("--gamma", cfg.gamma, "evaluation weight")->check(CLI::Range(0.0, 1.0));
    integrate->add_option("--selector", cfg.selector, "evaluation point rule")
        ->check(CLI::IsMember({"left", "right", "mid"}));

    auto* variation = app.add_subcommand("variation", "p-variation norms of a path");
    add_common(variation, cfg, common);
    add_path(variation, cfg, defaults, "brownian");
    variation->add_option("--p", cfg.exponents, "exponent list")->delimiter(',');

    auto* control = app.add_subcommand("control-check", "self-control reports across levels");
    add_common(control, cfg, common);
    add_path(control, cfg, defaults, "bpair");
    control->add_option("--p", cfg.p, "path variation exponent")->check(CLI::PositiveNumber);
    control->add_option("--q", cfg.q, "derivative variation exponent")
        ->check(CLI::PositiveNumber);

    auto* qv = app.add_subcommand("qv", "quadratic variation along dyadic partitions");
    add_common(qv, cfg, common);
    add_path(qv, cfg, defaults, "brownian");

    auto* ito = app.add_subcommand("ito-check", "pathwise Ito formula residuals");
    add_common(ito, cfg, common);
    add_path(ito, cfg, defaults, "brownian");
    ito->add_option("--gamma", cfg.gamma, "evaluation weight")->check(CLI::Range(0.0, 1.0));
    ito->add_option("--f", cfg.f_spec, "field: x2 | x3")->check(CLI::IsMember({"x2", "x3"}));

    auto* fito = app.add_subcommand("functional-ito", "functional Ito formula residuals");
    add_common(fito, cfg, common);
    add_path(fito, cfg, defaults, "smooth:t");
    fito->add_option("--g", cfg.g_spec, "integrand: x | x2half")
        ->check(CLI::IsMember({"x", "x2half"}));
    fito->add_option("--mu", cfg.mu_spec, "measure: lebesgue | diracT")
        ->check(CLI::IsMember({"lebesgue", "diracT"}));
    fito->add_option("--t", cfg.t_eval, "evaluation time (grid point; default horizon)");

    auto* sewing = app.add_subcommand("sewing", "sewing-lemma construction with certificate");
    add_common(sewing, cfg, common);
    sewing->add_option("--example", cfg.sewing_example, "young | additive | rough")
        ->check(CLI::IsMember({"young", "additive", "rough"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // validation contract: bad flags exit 2
    }

    const auto range = pathint::parse_level_range(common.levels);
    if (!range) {
        std::cerr << "--levels: expected a..b with a <= b\n";
        return 2;
    }
    cfg.levels = *range;
    cfg.command = app.get_subcommands().front()->get_name();

    const auto it = defaults.by_command.find(cfg.command);
    if (it != defaults.by_command.end() && it->second.first->count() == 0) {
        cfg.path_spec = it->second.second;
    }
    return pathint::run(cfg);
}
