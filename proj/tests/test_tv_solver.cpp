#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "core/tv_solver.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mwto;

namespace {

BoxTvProblem tight_problem(Plane lower, double lambda) {
    BoxTvProblem p;
    p.lower = std::move(lower);
    p.lambda = lambda;
    p.tol = 1e-10;
    p.max_iters = 30000;
    return p;
}

Plane checkerboard4(double lo, double hi) {
    Plane p(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            p(r, c) = ((r + c) % 2 == 0) ? lo : hi;
    return p;
}

} // namespace

TEST_CASE("lower bound is epsilon where the sub-band matches the airlight") {
    const std::array<Plane, 3> low{Plane(2, 2, 0.9), Plane(2, 2, 0.8), Plane(2, 2, 0.7)};
    const Plane bound = lower_bound_plane(low, {0.9, 0.8, 0.7}, 0.05);
    for (double v : bound.values)
        CHECK(v == 0.05);
}

TEST_CASE("lower bound takes the per-channel maximum") {
    const std::array<Plane, 3> low{Plane(1, 1, 0.9), Plane(1, 1, 0.8), Plane(1, 1, 0.7)};
    const Plane bound = lower_bound_plane(low, {1.0, 1.0, 1.0}, 0.05);
    CHECK(bound(0, 0) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("black pixels force full transmission") {
    const std::array<Plane, 3> low{Plane(3, 3, 0.0), Plane(3, 3, 0.0), Plane(3, 3, 0.0)};
    const Plane bound = lower_bound_plane(low, {1.8, 1.9, 2.0}, 0.05);
    for (double v : bound.values)
        CHECK(v == 1.0);
}

TEST_CASE("non-positive airlight is rejected") {
    const std::array<Plane, 3> low{Plane(1, 1, 0.5), Plane(1, 1, 0.5), Plane(1, 1, 0.5)};
    CHECK_THROWS_AS(lower_bound_plane(low, {1.0, 0.0, 1.0}, 0.05), std::invalid_argument);
}

TEST_CASE("anisotropic TV of simple patterns") {
    CHECK(tv_anisotropic(Plane(5, 7, 0.3)) == 0.0);

    Plane steps(2, 2);
    steps(0, 0) = 0.0;
    steps(0, 1) = 1.0;
    steps(1, 0) = 0.0;
    steps(1, 1) = 1.0;
    CHECK(tv_anisotropic(steps) == 2.0);

    // positive homogeneity
    std::mt19937_64 rng(31);
    const Plane x = fixtures::random_plane(rng, 6, 6, -1.0, 1.0);
    Plane scaled = x;
    for (double& v : scaled.values)
        v *= 3.5;
    CHECK(tv_anisotropic(scaled) == doctest::Approx(3.5 * tv_anisotropic(x)).epsilon(1e-12));
}

TEST_CASE("objective combines the Frobenius and TV terms") {
    CHECK(objective(Plane(4, 4, 0.0), 2.0) == 0.0);
    CHECK(objective(Plane(3, 5, 0.2), 0.7) == doctest::Approx(15 * 0.04).epsilon(1e-12));

    Plane steps(2, 2);
    steps(0, 0) = 0.0;
    steps(0, 1) = 1.0;
    steps(1, 0) = 0.0;
    steps(1, 1) = 1.0;
    CHECK(objective(steps, 0.5) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("lambda = 0 returns the lower bound exactly") {
    std::mt19937_64 rng(32);
    BoxTvProblem p = tight_problem(fixtures::random_plane(rng, 8, 8, 0.1, 0.9), 0.0);
    const auto [t, diag] = solve_swto(p);
    for (size_t i = 0; i < t.plane.size(); ++i)
        CHECK(std::abs(t.plane.values[i] - p.lower.values[i]) < 1e-6);
    CHECK(diag.converged);
}

TEST_CASE("a constant lower bound is the solution for any lambda") {
    for (double lambda : {0.0, 0.3, 2.0}) {
        BoxTvProblem p = tight_problem(Plane(6, 6, 0.45), lambda);
        const auto [t, diag] = solve_swto(p);
        for (double v : t.plane.values)
            CHECK(v == doctest::Approx(0.45).epsilon(1e-6));
        // No feasible perturbation does better.
        std::mt19937_64 rng(33);
        for (int trial = 0; trial < 10; ++trial) {
            Plane perturbed = p.lower;
            for (double& v : perturbed.values)
                v = std::clamp(v + 0.2 * mwto::uniform01(rng), v, 1.0);
            CHECK(diag.final_objective <= objective(perturbed, lambda) + 1e-9);
        }
    }
}

TEST_CASE("checkerboard problem matches the subgradient oracle within 1%") {
    BoxTvProblem p = tight_problem(checkerboard4(0.2, 0.6), 0.5);
    const auto [t, diag] = solve_swto(p);
    const auto oracle = oracles::projected_subgradient(p, 100000, 1e-3);
    CHECK(std::abs(diag.final_objective - oracle.best_objective) <=
          0.01 * oracle.best_objective);
}

TEST_CASE("output is always feasible") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 10; ++trial) {
        const int rows = 2 + static_cast<int>(rng() % 7);
        const int cols = 2 + static_cast<int>(rng() % 7);
        BoxTvProblem p;
        p.lower = fixtures::random_plane(rng, rows, cols, 0.05, 1.0);
        p.lambda = mwto::uniform_in(rng, 0.0, 2.0);
        p.tol = 1e-4;
        p.max_iters = 60;
        const auto [t, diag] = solve_swto(p);
        for (size_t i = 0; i < t.plane.size(); ++i) {
            CHECK(t.plane.values[i] >= p.lower.values[i]);
            CHECK(t.plane.values[i] <= 1.0);
        }
        CHECK(diag.iterations <= p.max_iters);
    }
}

TEST_CASE("objective never exceeds the lower-bound plane or the best constant") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 5; ++trial) {
        BoxTvProblem p = tight_problem(fixtures::random_plane(rng, 8, 8, 0.2, 0.8), 0.05);
        const auto [t, diag] = solve_swto(p);
        CHECK(diag.final_objective <= objective(p.lower, p.lambda) + 1e-9);
        const double best_const =
            *std::max_element(p.lower.values.begin(), p.lower.values.end());
        CHECK(diag.final_objective <=
              objective(Plane(8, 8, best_const), p.lambda) + 1e-9);
    }
}

TEST_CASE("split bregman tracks the subgradient oracle across lambda") {
    std::mt19937_64 rng(36);
    const double lambdas[] = {0.0, 0.1, 1.0, 10.0};
    for (int trial = 0; trial < 8; ++trial) {
        const int rows = 3 + static_cast<int>(rng() % 6);
        const int cols = 3 + static_cast<int>(rng() % 6);
        BoxTvProblem p = tight_problem(fixtures::random_plane(rng, rows, cols, 0.1, 0.95),
                                       lambdas[trial % 4]);
        p.max_iters = 20000;
        const auto [t, diag] = solve_swto(p);
        const auto oracle = oracles::projected_subgradient(p, 100000, 1e-3);
        CHECK(std::abs(diag.final_objective - oracle.best_objective) <=
              0.02 * oracle.best_objective);
    }
}

TEST_CASE("raising the lower bound never lowers the optimum") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 5; ++trial) {
        BoxTvProblem p = tight_problem(fixtures::random_plane(rng, 5, 5, 0.1, 0.7), 0.4);
        BoxTvProblem q = p;
        for (double& v : q.lower.values)
            v = std::min(1.0, v + mwto::uniform_in(rng, 0.0, 0.2));
        const auto base = oracles::projected_subgradient(p, 30000, 1e-3);
        const auto raised = oracles::projected_subgradient(q, 30000, 1e-3);
        CHECK(raised.best_objective >= base.best_objective - 1e-3 * base.best_objective);
    }
}

TEST_CASE("huge lambda drives the solution to the best constant") {
    std::mt19937_64 rng(38);
    BoxTvProblem p = tight_problem(fixtures::random_plane(rng, 4, 4, 0.2, 0.8), 1000.0);
    p.max_iters = 20000;
    const auto [t, diag] = solve_swto(p);
    const double best_const = *std::max_element(p.lower.values.begin(), p.lower.values.end());
    for (double v : t.plane.values)
        CHECK(std::abs(v - best_const) <= 1e-2);
}

TEST_CASE("hitting the iteration cap reports non-convergence but stays feasible") {
    std::mt19937_64 rng(39);
    BoxTvProblem p;
    p.lower = fixtures::random_plane(rng, 6, 6, 0.1, 0.9);
    p.lambda = 0.5;
    p.tol = 1e-14;
    p.max_iters = 2;
    const auto [t, diag] = solve_swto(p);
    CHECK_FALSE(diag.converged);
    CHECK(diag.iterations == 2);
    for (size_t i = 0; i < t.plane.size(); ++i) {
        CHECK(t.plane.values[i] >= p.lower.values[i]);
        CHECK(t.plane.values[i] <= 1.0);
    }
}

TEST_CASE("solves are bit-reproducible") {
    std::mt19937_64 rng(40);
    BoxTvProblem p = tight_problem(fixtures::random_plane(rng, 7, 9, 0.1, 0.9), 0.3);
    const auto first = solve_swto(p);
    const auto second = solve_swto(p);
    CHECK(first.first.plane.values == second.first.plane.values);
    CHECK(first.second.final_objective == second.second.final_objective);
}

TEST_CASE("a single-pixel problem sits at its lower bound") {
    BoxTvProblem p = tight_problem(Plane(1, 1, 0.6), 0.7);
    const auto [t, diag] = solve_swto(p);
    CHECK(t.plane(0, 0) == doctest::Approx(0.6).epsilon(1e-8));
}

TEST_CASE("invalid problems are rejected") {
    BoxTvProblem p;
    p.lower = Plane(2, 2, 0.0); // zero violates the open lower constraint
    CHECK_THROWS_AS(solve_swto(p), std::invalid_argument);
    p.lower = Plane(2, 2, 0.5);
    p.lambda = -1.0;
    CHECK_THROWS_AS(solve_swto(p), std::invalid_argument);
}
