#include "pathint/experiments.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pathint/errors.hpp"
#include "pathint/functional.hpp"
#include "pathint/integration.hpp"
#include "pathint/numeric.hpp"
#include "pathint/variation.hpp"

namespace pathint {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

std::optional<SampledPath> build_path(const ExperimentConfig& cfg, std::string& err) {
    const std::size_t n = (std::size_t{1} << cfg.grid_log2) + 1;
    if (cfg.path_spec == "brownian") {
        return sample_brownian(cfg.seed, make_uniform_grid(1.0, n), 1);
    }
    if (cfg.path_spec == "bpair") {
        const auto b = sample_brownian(cfg.seed, make_uniform_grid(1.0, n), 1);
        std::vector<double> vals(n * 2);
        for (std::size_t i = 0; i < n; ++i) {
            vals[i * 2] = b.value(i, 0);
            vals[i * 2 + 1] = std::sin(b.value(i, 0));
        }
        return SampledPath(b.grid(), 2, std::move(vals));
    }
    if (cfg.path_spec == "smooth:t") {
        const auto grid = make_uniform_grid(1.0, n);
        std::vector<double> vals(grid.points().begin(), grid.points().end());
        return SampledPath(grid, 1, std::move(vals));
    }
    if (cfg.path_spec == "smooth:sin") {
        const auto grid = make_uniform_grid(1.0, n);
        std::vector<double> vals(n);
        for (std::size_t i = 0; i < n; ++i) vals[i] = std::sin(2.0 * kPi * grid[i]);
        return SampledPath(grid, 1, std::move(vals));
    }
    if (cfg.path_spec.rfind("lacunary:", 0) == 0) {
        double alpha = 0.0;
        unsigned long m = 0;
        if (std::sscanf(cfg.path_spec.c_str(), "lacunary:%lf:%lu", &alpha, &m) != 2 ||
            !(alpha > 0.0 && alpha < 1.0) || m < 1) {
            err = "--path: bad lacunary spec, expected lacunary:<alpha>:<m>";
            return std::nullopt;
        }
        return lacunary_pair(alpha, m, TimeGrid::uniform(-1.0, 1.0, n));
    }
    err = "--path: unknown path spec '" + cfg.path_spec + "'";
    return std::nullopt;
}

int run_levy(const ExperimentConfig& cfg, std::ostream& out) {
    const std::size_t n = (std::size_t{1} << cfg.grid_log2) + 1;
    const auto grid = TimeGrid::uniform(-1.0, 1.0, n);
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    const auto finest = Partition::from_indices(grid, std::move(all));

    out << "m,predicted,computed,rel_err\n";
    double predicted = 0.0;
    for (std::size_t mm = 1; mm <= cfg.m; ++mm) {
        predicted += -2.0 * kPi * std::exp2((1.0 - 2.0 * cfg.alpha) * static_cast<double>(mm));
        const auto x = lacunary_pair(cfg.alpha, mm, grid);
        const double computed = levy_area(x, finest)[0 * 2 + 1];
        out << mm << "," << format_full(predicted) << "," << format_full(computed) << ","
            << format_full(std::abs(computed - predicted) / std::abs(predicted)) << "\n";
    }
    return 0;
}

int run_integrate(const ExperimentConfig& cfg, const SampledPath& x, std::ostream& out) {
    const auto seq = dyadic_sequence(x.grid(), cfg.levels.hi);
    out << "level,mesh,value,cauchy_gap\n";
    double prev = 0.0;
    bool have_prev = false;
    for (std::size_t lev = cfg.levels.lo; lev <= cfg.levels.hi; ++lev) {
        const Partition& pi = seq.level(lev);
        double v;
        if (cfg.selector == "left") {
            v = riemann_gamma(x, x, pi, cfg.gamma);
        } else {
            v = riemann_point(x, x, pi,
                              cfg.selector == "right" ? SelectorRule::Right : SelectorRule::Mid);
        }
        const double gap = have_prev ? std::abs(v - prev) : 0.0;
        out << lev << "," << format_full(mesh(pi)) << "," << format_full(v) << ","
            << format_full(gap) << "\n";
        prev = v;
        have_prev = true;
    }
    return 0;
}

int run_variation(const ExperimentConfig& cfg, const SampledPath& x, std::ostream& out) {
    const auto f = increment_field(x);
    out << "p,value\n";
    for (double p : cfg.exponents) {
        out << format_full(p) << ","
            << format_full(p_variation_indices(f, p, 0, x.size() - 1)) << "\n";
    }
    return 0;
}

int run_control_check(const ExperimentConfig& cfg, const SampledPath& x, std::ostream& out) {
    out << "level,i,j,direction,r_norm,q_norm,theta\n";
    const auto seq = dyadic_sequence(x.grid(), cfg.levels.hi);
    for (std::size_t lev = cfg.levels.lo; lev <= cfg.levels.hi; ++lev) {
        const auto sub = sample_at_breakpoints(x, seq.level(lev));
        for (const auto& rep : check_self_controlled(sub, cfg.p, cfg.q)) {
            out << lev << "," << rep.i + 1 << "," << rep.j + 1 << ","
                << (rep.i < rep.j ? "fwd" : "rev") << ","
                << format_full(rep.report.remainder_r_norm) << ","
                << format_full(rep.report.y_prime_q_norm) << ","
                << format_full(rep.report.theta) << "\n";
        }
    }
    return 0;
}

int run_qv(const ExperimentConfig& cfg, const SampledPath& x, std::ostream& out) {
    const auto seq = dyadic_sequence(x.grid(), cfg.levels.hi);
    const QuadraticVariation qv(x, seq);
    const std::size_t last = x.size() - 1;
    out << "level,mesh,bracket_end,uniform_gap\n";
    for (std::size_t lev = cfg.levels.lo; lev <= cfg.levels.hi; ++lev) {
        const double gap = lev >= 1 ? qv.uniform_gap(lev, 0, 0) : 0.0;
        out << lev << "," << format_full(mesh(seq.level(lev))) << ","
            << format_full(qv.bracket(lev, 0, 0, last)) << "," << format_full(gap) << "\n";
    }
    return 0;
}

int run_ito_check(const ExperimentConfig& cfg, const SampledPath& x, std::ostream& out,
                  std::ostream& err) {
    if (cfg.f_spec != "x2" && cfg.f_spec != "x3") {
        err << "--f: unknown field '" << cfg.f_spec << "' (expected x2 or x3)\n";
        return 2;
    }
    const auto F = smooth_monomial(cfg.f_spec == "x2" ? 2 : 3);
    const auto seq = dyadic_sequence(x.grid(), cfg.levels.hi);
    const auto res = follmer_ito_residual(F, x, seq, cfg.gamma);
    out << "level,residual\n";
    for (std::size_t lev = cfg.levels.lo; lev <= cfg.levels.hi; ++lev) {
        out << lev << "," << format_full(res[lev]) << "\n";
    }
    return 0;
}

int run_functional_ito(const ExperimentConfig& cfg, const SampledPath& x, std::ostream& out,
                       std::ostream& err) {
    std::function<double(double, double)> g, gx, gxx;
    if (cfg.g_spec == "x") {
        g = [](double, double v) { return v; };
        gx = [](double, double) { return 1.0; };
        gxx = [](double, double) { return 0.0; };
    } else if (cfg.g_spec == "x2half") {
        g = [](double, double v) { return 0.5 * v * v; };
        gx = [](double, double v) { return v; };
        gxx = [](double, double) { return 1.0; };
    } else {
        err << "--g: unknown integrand '" << cfg.g_spec << "' (expected x or x2half)\n";
        return 2;
    }
    SignedMeasure1D mu = cfg.mu_spec == "diracT"
                             ? SignedMeasure1D::dirac(x.grid(), x.size() - 1)
                             : SignedMeasure1D::lebesgue(x.grid());
    if (cfg.mu_spec != "diracT" && cfg.mu_spec != "lebesgue") {
        err << "--mu: unknown measure '" << cfg.mu_spec << "' (expected lebesgue or diracT)\n";
        return 2;
    }
    const double t = cfg.t_eval < 0.0 ? x.grid().horizon() : cfg.t_eval;
    if (!x.grid().try_index_of(t)) {
        err << "--t: evaluation time is not a grid point\n";
        return 2;
    }
    const auto F = integral_functional(g, gx, gxx, mu);
    const auto seq = dyadic_sequence(x.grid(), cfg.levels.hi);
    const auto res = functional_ito_residual(F, x, seq, t);
    out << "level,residual\n";
    for (std::size_t lev = cfg.levels.lo; lev <= cfg.levels.hi; ++lev) {
        out << lev << "," << format_full(res[lev]) << "\n";
    }
    return 0;
}

int run_sewing(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::size_t n = (std::size_t{1} << cfg.grid_log2) + 1;
    const auto grid = make_uniform_grid(1.0, n);
    TwoParamField::ComponentFn xi_fn;
    if (cfg.sewing_example == "young") {
        xi_fn = [grid](std::size_t i, std::size_t j, std::size_t) {
            return grid[i] * (grid[j] - grid[i]);
        };
    } else if (cfg.sewing_example == "additive") {
        xi_fn = [grid](std::size_t i, std::size_t j, std::size_t) {
            return std::sin(2.0 * kPi * grid[j]) - std::sin(2.0 * kPi * grid[i]);
        };
    } else if (cfg.sewing_example == "rough") {
        xi_fn = [grid](std::size_t i, std::size_t j, std::size_t) {
            return std::sqrt(grid[j] - grid[i]);
        };
    } else {
        err << "--example: unknown sewing example '" << cfg.sewing_example << "'\n";
        return 2;
    }
    const TwoParamField xi(grid, 1, xi_fn);
    const ControlFunction omega(grid,
                                [grid](std::size_t i, std::size_t j) { return grid[j] - grid[i]; });
    const auto seq = dyadic_sequence(grid, cfg.levels.hi);
    const auto res = sewing_integral(xi, omega, 2.0, 1.0, seq);
    out << "level,mesh,phi_end,cauchy_gap,phi_extrapolated,cert_max_ratio\n";
    const double phi_end = res.phi.value(res.phi.size() - 1, 0);
    for (std::size_t lev = cfg.levels.lo; lev <= cfg.levels.hi; ++lev) {
        const double gap =
            lev >= 1 ? std::abs(res.level_values[lev] - res.level_values[lev - 1]) : 0.0;
        out << lev << "," << format_full(res.level_meshes[lev]) << ","
            << format_full(res.level_values[lev]) << "," << format_full(gap) << ","
            << format_full(phi_end) << "," << format_full(res.certificate_max_ratio) << "\n";
    }
    return 0;
}

} // namespace

std::optional<LevelRange> parse_level_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos) return std::nullopt;
    try {
        const unsigned long lo = std::stoul(text.substr(0, pos));
        const unsigned long hi = std::stoul(text.substr(pos + 2));
        if (lo > hi) return std::nullopt;
        return LevelRange{lo, hi};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.grid_log2 < 1 || cfg.grid_log2 > 26) {
            err << "--grid-log2: must lie in [1,26]\n";
            return 2;
        }
        if (cfg.levels.lo < 1 || cfg.levels.lo > cfg.levels.hi || cfg.levels.hi > cfg.grid_log2) {
            err << "--levels: range must satisfy 1 <= lo <= hi <= grid-log2\n";
            return 2;
        }
        if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0)) {
            err << "--gamma: must lie in [0,1]\n";
            return 2;
        }
        if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
            err << "--alpha: must lie in (0,1)\n";
            return 2;
        }
        // commands that store per-level bracket paths scale in memory with
        // levels * grid points; keep them off multi-gigabyte grids
        if ((cfg.command == "qv" || cfg.command == "ito-check" ||
             cfg.command == "functional-ito") &&
            cfg.grid_log2 > 20) {
            err << "--grid-log2: " << cfg.command << " supports at most 20\n";
            return 2;
        }

        if (cfg.command == "levy") return run_levy(cfg, out);
        if (cfg.command == "sewing") return run_sewing(cfg, out, err);

        std::string path_err;
        const auto x = build_path(cfg, path_err);
        if (!x) {
            err << path_err << "\n";
            return 2;
        }
        if (cfg.command == "integrate") return run_integrate(cfg, *x, out);
        if (cfg.command == "variation") return run_variation(cfg, *x, out);
        if (cfg.command == "control-check") {
            if (x->dim() < 2) {
                err << "--path: control-check needs a path of dimension >= 2\n";
                return 2;
            }
            return run_control_check(cfg, *x, out);
        }
        if (cfg.command == "qv") return run_qv(cfg, *x, out);
        if (cfg.command == "ito-check") return run_ito_check(cfg, *x, out, err);
        if (cfg.command == "functional-ito") return run_functional_ito(cfg, *x, out, err);

        err << "unknown command '" << cfg.command << "'\n";
        return 2;
    } catch (const PremiseFailed& e) {
        err << "premise failed: " << e.what() << " at (s,u,t) = (" << format_full(e.s) << ", "
            << format_full(e.u) << ", " << format_full(e.t) << "), ratio " << format_full(e.ratio)
            << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run(const ExperimentConfig& cfg) {
    if (cfg.out_path.empty()) {
        return run(cfg, std::cout, std::cerr);
    }
    std::ofstream out(cfg.out_path);
    if (!out) {
        std::cerr << "--out: cannot open '" << cfg.out_path << "'\n";
        return 2;
    }
    return run(cfg, out, std::cerr);
}

} // namespace pathint
