#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pathint/functional.hpp"

using namespace pathint;
using testutil::rel_close;
using testutil::TestRng;

namespace {

SampledPath identity_path(const TimeGrid& grid) {
    std::vector<double> tvals(grid.points().begin(), grid.points().end());
    return SampledPath(grid, 1, std::move(tvals));
}

} // namespace

TEST_CASE("smooth field construction checks derivatives") {
    CHECK_NOTHROW(smooth_monomial(2));
    CHECK_NOTHROW(smooth_monomial(3));
    CHECK_NOTHROW(smooth_linear({1.0, -2.0}));
    CHECK_NOTHROW(smooth_quadratic_form({1.0, 0.5, 0.5, 2.0}, 2));
    // wrong gradient is caught by the finite-difference spot check
    CHECK_THROWS_AS(SmoothField(
                        1, [](std::span<const double> x) { return x[0] * x[0]; },
                        [](std::span<const double> x) {
                            return std::vector<double>{3.0 * x[0]};
                        },
                        [](std::span<const double>) { return std::vector<double>{2.0}; }, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(smooth_quadratic_form({1.0, 0.5, 0.4, 2.0}, 2), std::invalid_argument);
}

TEST_CASE("eta weight") {
    const auto grid = make_uniform_grid(1.0, 9);
    const double bp[] = {0.0, 0.25, 0.75, 1.0};
    const auto pi = Partition::from_times(grid, bp);

    CHECK(eta_weight(pi, 1, 0.25) == 0.0);
    CHECK(eta_weight(pi, 1, 0.75) == 1.0);
    CHECK(eta_weight(pi, 1, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(eta_weight(pi, 1, 0.1) == 0.0);
    CHECK(eta_weight(pi, 1, 0.9) == 1.0);
    CHECK_THROWS_AS(eta_weight(pi, 3, 0.5), std::invalid_argument);
}

TEST_CASE("eta weight reconstructs stopped-approximation increments") {
    const std::size_t L = 4;
    const auto grid = make_uniform_grid(1.0, (std::size_t{1} << 6) + 1);
    TestRng rng(97);
    const auto x = testutil::random_scalar_path(rng, grid);
    const auto seq = dyadic_sequence(grid, L);
    const auto& pi = seq.level(3);
    const auto level_grid = sample_at_breakpoints(x, pi).grid();

    for (std::size_t k = 0; k + 1 < pi.breakpoint_count(); ++k) {
        const auto lo = stopped_linear_approximation(x, level_grid, pi.time(k));
        const auto hi = stopped_linear_approximation(x, level_grid, pi.time(k + 1));
        const double inc = x.value(pi.index(k + 1), 0) - x.value(pi.index(k), 0);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const double expect = eta_weight(pi, k, grid[g]) * inc;
            CHECK(std::abs(hi.value(g, 0) - lo.value(g, 0) - expect) <= 1e-13);
        }
    }
}

TEST_CASE("chain rule residuals") {
    const std::size_t L = 10;
    const auto grid = make_uniform_grid(1.0, (std::size_t{1} << L) + 1);
    const auto seq = dyadic_sequence(grid, L);

    SUBCASE("linear fields telescope at every level") {
        const auto x = sample_brownian(61, grid, 2);
        const auto res = chain_rule_residual(smooth_linear({2.0, -1.0}), x, seq);
        for (double r : res) CHECK(r <= 1e-13);
    }
    SUBCASE("F = x^3/3 on the identity path: trapezoid error h^2/6 exactly") {
        const SmoothField third(
            1, [](std::span<const double> x) { return x[0] * x[0] * x[0] / 3.0; },
            [](std::span<const double> x) { return std::vector<double>{x[0] * x[0]}; },
            [](std::span<const double> x) { return std::vector<double>{2.0 * x[0]}; }, 1.0);
        const auto res = chain_rule_residual(third, identity_path(grid), seq);
        for (std::size_t n = 0; n <= L; ++n) {
            const double h2 = std::exp2(-2.0 * double(n));
            CHECK(std::abs(res[n] - h2 / 6.0) <= 1e-14);
        }
    }
    SUBCASE("F = |x|^2/2 on a Brownian sample stays at rounding level") {
        // the trapezoid sum of a quadratic telescopes, so the residual is
        // already ~1e-17 at every level; frozen bound 1e-12
        const auto x = sample_brownian(67, grid, 1);
        const auto res = chain_rule_residual(smooth_quadratic_form({0.5}, 1), x, seq);
        for (std::size_t n = 8; n <= L; ++n) CHECK(res[n] <= 1e-12);
    }
    SUBCASE("F = x^3 on a Brownian sample decays from level 8 to the finest") {
        const auto x = sample_brownian(67, grid, 1);
        const auto res = chain_rule_residual(smooth_monomial(3), x, seq);
        CHECK(res[L] < res[8]);
    }
}

TEST_CASE("Follmer Ito residuals") {
    const std::size_t L = 12;
    const auto grid = make_uniform_grid(1.0, (std::size_t{1} << L) + 1);
    const auto seq = dyadic_sequence(grid, L);

    SUBCASE("F = x^2 at gamma = 0 is an algebraic identity at every level") {
        const auto x = sample_brownian(71, grid, 1);
        const auto res = follmer_ito_residual(smooth_monomial(2), x, seq, 0.0);
        for (double r : res) CHECK(r <= 1e-10);
    }
    SUBCASE("linear F leaves no residual for any gamma") {
        const auto x = sample_brownian(73, grid, 2);
        for (double g : {0.0, 0.3, 1.0}) {
            const auto res = follmer_ito_residual(smooth_linear({1.0, 2.0}), x, seq, g);
            for (double r : res) CHECK(r <= 1e-12);
        }
    }
    SUBCASE("quadratic form at gamma = 0 on a 2d Brownian sample") {
        const auto x = sample_brownian(79, grid, 2);
        const auto res =
            follmer_ito_residual(smooth_quadratic_form({1.0, 0.25, 0.25, 0.5}, 2), x, seq, 0.0);
        for (double r : res) CHECK(r <= 1e-10);
    }
    SUBCASE("F = x^3 at gamma = 1/2 on the smooth path vanishes with the level") {
        const auto res = follmer_ito_residual(smooth_monomial(3), identity_path(grid), seq, 0.5);
        CHECK(res[12] < res[8]);
        CHECK(res[12] <= 1e-6);
    }
}

TEST_CASE("signed measures") {
    const auto grid = make_uniform_grid(1.0, 9);

    SUBCASE("Lebesgue pairing is exact trapezoid quadrature") {
        const auto mu = SignedMeasure1D::lebesgue(grid);
        std::vector<double> ramp(9);
        for (std::size_t i = 0; i < 9; ++i) ramp[i] = grid[i]; // integral 1/2
        CHECK(mu.pair_with(ramp) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(mu.tail_mass(2) == doctest::Approx(0.75).epsilon(1e-14));
        CHECK(mu.total_variation() == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("atoms evaluate the test function") {
        const auto mu = SignedMeasure1D::dirac(grid, 8, 2.0);
        std::vector<double> f(9, 0.0);
        f[8] = 3.0;
        CHECK(mu.pair_with(f) == 6.0);
        CHECK(mu.tail_mass(8) == 2.0);
        CHECK(mu.tail_mass(3) == 2.0);
        CHECK(SignedMeasure1D::dirac(grid, 4).tail_mass(5) == 0.0);
    }
}

TEST_CASE("integral functional") {
    const std::size_t L = 8;
    const auto grid = make_uniform_grid(1.0, (std::size_t{1} << L) + 1);
    const auto x = identity_path(grid);

    SUBCASE("constant integrand has measure mass and zero derivatives") {
        const auto F = integral_functional([](double, double) { return 1.0; },
                                           [](double, double) { return 0.0; },
                                           [](double, double) { return 0.0; },
                                           SignedMeasure1D::lebesgue(grid));
        const std::size_t mid = grid.index_of(0.5);
        CHECK(F.eval(mid, stop_sample(x, mid)) == doctest::Approx(1.0).epsilon(1e-14));
        const auto d1 = F.d1(mid, stop_sample(x, mid), 0);
        CHECK(d1.total_variation() == 0.0);
        CHECK(F.d2(mid, stop_sample(x, mid), 0, 0).tail_mass(0) == 0.0);
        CHECK(F.time_derivative(mid, stop_sample(x, mid)) == 0.0);
    }
    SUBCASE("the Example derivative identity for g = x against Lebesgue") {
        // <DF(X^t), 1_{[t,T]}> - <DF(X^s), 1_{[s,T]}> = -(t - s)
        const auto F = integral_functional([](double, double v) { return v; },
                                           [](double, double) { return 1.0; },
                                           [](double, double) { return 0.0; },
                                           SignedMeasure1D::lebesgue(grid));
        const std::size_t s = grid.index_of(0.25), t = grid.index_of(0.75);
        const double tail_t = F.d1(t, stop_sample(x, t), 0).tail_mass(t);
        const double tail_s = F.d1(s, stop_sample(x, s), 0).tail_mass(s);
        CHECK(tail_t - tail_s == doctest::Approx(-(0.75 - 0.25)).epsilon(1e-13));
    }
    SUBCASE("stopping consistency under tail perturbations") {
        TestRng rng(101);
        const auto F = integral_functional([](double, double v) { return 0.5 * v * v; },
                                           [](double, double v) { return v; },
                                           [](double, double) { return 1.0; },
                                           SignedMeasure1D::lebesgue(grid));
        const auto b = sample_brownian(83, grid, 1);
        const std::size_t t = grid.index_of(0.5);
        const auto stopped = stop_sample(b, t);
        std::vector<double> perturbed(stopped.values().begin(), stopped.values().end());
        for (std::size_t i = t + 1; i < grid.size(); ++i) {
            perturbed[i] += rng.uniform(-5.0, 5.0);
        }
        const double v0 = F.eval(t, stopped);
        const double v1 = F.eval(t, SampledPath(grid, 1, perturbed));
        CHECK(v0 == v1);
    }
}

TEST_CASE("functional Ito residuals") {
    const std::size_t L = 8;
    const auto grid = make_uniform_grid(1.0, (std::size_t{1} << L) + 1);
    const auto seq = dyadic_sequence(grid, L);
    const auto x = identity_path(grid);

    SUBCASE("trivial functional has zero residual exactly") {
        PathFunctional F;
        F.dim = 1;
        F.eval = [](std::size_t, const SampledPath&) { return 5.0; };
        F.time_derivative = [](std::size_t, const SampledPath&) { return 0.0; };
        F.d1 = [&grid](std::size_t, const SampledPath&, std::size_t) {
            return SignedMeasure1D(grid, std::vector<double>(grid.size() - 1, 0.0), {});
        };
        F.d2 = [&grid](std::size_t, const SampledPath&, std::size_t, std::size_t) {
            return DiagonalMeasure2D{grid, std::vector<double>(grid.size() - 1, 0.0), {}};
        };
        const auto res = functional_ito_residual(F, x, seq, 1.0);
        for (double r : res) CHECK(r == 0.0);
    }
    SUBCASE("g = x against the Dirac mass at T telescopes") {
        const auto b = sample_brownian(89, grid, 1);
        const auto F = integral_functional([](double, double v) { return v; },
                                           [](double, double) { return 1.0; },
                                           [](double, double) { return 0.0; },
                                           SignedMeasure1D::dirac(grid, grid.size() - 1));
        const auto res = functional_ito_residual(F, b, seq, 1.0);
        for (double r : res) CHECK(r <= 1e-10);
    }
    SUBCASE("running integral of the identity path: closed form at every level") {
        const auto F = integral_functional([](double, double v) { return v; },
                                           [](double, double) { return 1.0; },
                                           [](double, double) { return 0.0; },
                                           SignedMeasure1D::lebesgue(grid));
        for (double t : {0.25, 0.5, 1.0}) {
            const std::size_t t_idx = grid.index_of(t);
            const double closed = t * t / 2.0 + t * (1.0 - t);
            CHECK(rel_close(F.eval(t_idx, stop_sample(x, t_idx)), closed, 1e-12));
            const auto res = functional_ito_residual(F, x, seq, t);
            for (double r : res) CHECK(r <= 1e-10);
        }
    }
    SUBCASE("t = 0 gives an empty truncation and zero residual") {
        const auto F = integral_functional([](double, double v) { return v; },
                                           [](double, double) { return 1.0; },
                                           [](double, double) { return 0.0; },
                                           SignedMeasure1D::lebesgue(grid));
        const auto res = functional_ito_residual(F, x, seq, 0.0);
        for (double r : res) CHECK(r == 0.0);
    }
    SUBCASE("g = x^2/2 on a Brownian sample: residual shrinks across levels") {
        const auto b = sample_brownian(97, grid, 1);
        const auto F = integral_functional([](double, double v) { return 0.5 * v * v; },
                                           [](double, double v) { return v; },
                                           [](double, double) { return 1.0; },
                                           SignedMeasure1D::lebesgue(grid));
        const auto res = functional_ito_residual(F, b, seq, 1.0);
        CHECK(res[8] < res[5]);
    }
    SUBCASE("residual at an off-breakpoint grid time stays small for smooth data") {
        // t = 3/16 is a breakpoint of level 4 but interior to level-2 intervals
        const auto F = integral_functional([](double, double v) { return v; },
                                           [](double, double) { return 1.0; },
                                           [](double, double) { return 0.0; },
                                           SignedMeasure1D::lebesgue(grid));
        const double t = 3.0 / 16.0;
        const auto res = functional_ito_residual(F, x, seq, t);
        CHECK(res[2] <= 1e-2);
        CHECK(res[8] <= 1e-10);
    }
}
