#include "doctest.h"

#include "heston/cir_tree.hpp"

#include <cmath>
#include <vector>

using namespace heston;

namespace {

HestonParams cir_params(double a, double b, double sigma) {
    HestonParams p;
    p.a = a;
    p.b = b;
    p.sigma = sigma;
    p.rho = 0.0;
    p.r = 0.0;
    return p;
}

}  // namespace

TEST_CASE("lattice node values") {
    // (sqrt(0.04) + 0.1 * (2k - n) * 0.5)^2 at h = 0.25
    CHECK(node_value(0.04, 0.2, 0.25, 1, 1) == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(node_value(0.04, 0.2, 0.25, 1, 0) == doctest::Approx(0.0225).epsilon(1e-14));
    // sqrt(0.01) + 1 * (-1) * 1 < 0: indicator truncates to 0
    CHECK(node_value(0.01, 2.0, 1.0, 1, 0) == 0.0);
}

TEST_CASE("one-step tree matches the hand example") {
    const HestonParams p = cir_params(0.02, 0.5, 0.2);
    const CIRTree tree = CIRTree::build(0.04, p, 1, 0.25);

    CHECK(tree.n_steps() == 1);
    CHECK(tree.step() == doctest::Approx(0.25));
    CHECK(tree.value(0, 0) == doctest::Approx(0.04));
    CHECK(tree.value(1, 0) == doctest::Approx(0.0225).epsilon(1e-14));
    CHECK(tree.value(1, 1) == doctest::Approx(0.0625).epsilon(1e-14));

    // target = 0.04 + 0 -> k_u = 1, k_d = 0, p_u = 0.0175 / 0.04
    CHECK(tree.jump_up(0, 0) == 1);
    CHECK(tree.jump_down(0, 0) == 0);
    CHECK(tree.prob_up(0, 0) == doctest::Approx(0.4375).epsilon(1e-14));
}

TEST_CASE("jump index fallbacks") {
    SUBCASE("huge upward drift exhausts the level: k_u = n + 1") {
        // Node (1,0): target = 0.01 + 50 far above every level-2 value, so
        // the defining set is empty and k_u falls back to n + 1 = 2.
        const HestonParams p = cir_params(50.0, 0.0, 0.2);
        const CIRTree tree = CIRTree::build(0.04, p, 2, 2.0);
        CHECK(tree.jump_up(1, 0) == 2);
        CHECK(tree.jump_down(1, 0) == 0);
        CHECK(tree.prob_up(1, 0) == 1.0);  // clamped at the top
    }

    SUBCASE("strong downward drift: k_d = 0 and p_u clamps at 0") {
        // Node (1,1): target = 4.41 + (0.001 - 50 * 4.41) far below every
        // level-2 value, so the k_d set is empty and the probability clamps.
        const HestonParams p = cir_params(0.001, 50.0, 0.2);
        const CIRTree tree = CIRTree::build(4.0, p, 2, 2.0);
        CHECK(tree.jump_down(1, 1) == 0);
        CHECK(tree.jump_up(1, 1) == 2);
        CHECK(tree.prob_up(1, 1) == 0.0);
    }
}

TEST_CASE("build invariants over representative trees") {
    struct Case {
        double y0, a, b, sigma, t;
        int n;
    };
    const std::vector<Case> cases = {
        {0.04, 0.02, 0.5, 0.3, 1.0, 40},   // Feller violated
        {0.04, 0.02, 0.5, 0.15, 1.0, 40},  // Feller satisfied
        {0.0, 0.02, 0.5, 0.3, 1.0, 25},    // starts at the boundary
        {0.5, 0.1, -0.2, 0.4, 2.0, 30},    // negative mean reversion
    };

    for (const auto& c : cases) {
        CAPTURE(c.y0);
        CAPTURE(c.sigma);
        const HestonParams p = cir_params(c.a, c.b, c.sigma);
        const CIRTree tree = CIRTree::build(c.y0, p, c.n, c.t);
        const double h = tree.step();

        CHECK(tree.node_count() ==
              static_cast<std::size_t>(c.n + 1) * (c.n + 2) / 2);
        CHECK(tree.value(0, 0) == doctest::Approx(c.y0).epsilon(1e-14));

        for (int n = 0; n <= c.n; ++n) {
            const auto lvl = tree.level(n);
            REQUIRE(static_cast<int>(lvl.size()) == n + 1);
            for (int k = 0; k <= n; ++k) {
                CHECK(lvl[k] >= 0.0);
                if (k > 0) CHECK(lvl[k] >= lvl[k - 1]);
            }
        }

        for (int n = 0; n < c.n; ++n) {
            for (int k = 0; k <= n; ++k) {
                const int ku = tree.jump_up(n, k);
                const int kd = tree.jump_down(n, k);
                const double pu = tree.prob_up(n, k);
                CHECK(kd >= 0);
                CHECK(kd <= k);
                CHECK(ku >= k + 1);
                CHECK(ku <= n + 1);
                CHECK(ku > kd);
                CHECK(pu >= 0.0);
                CHECK(pu <= 1.0);

                // First-moment consistency wherever the raw ratio is interior.
                const double y = tree.value(n, k);
                const double target = y + drift_y(y, p) * h;
                const double yu = tree.value(n + 1, ku);
                const double yd = tree.value(n + 1, kd);
                if (yu > yd) {
                    const double raw = (target - yd) / (yu - yd);
                    if (raw >= 0.0 && raw <= 1.0) {
                        CHECK(std::abs(pu * yu + (1.0 - pu) * yd - target) <= 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("a 100-step tree has 5151 nodes") {
    const HestonParams p = cir_params(0.02, 0.5, 0.3);
    CHECK(CIRTree::build(0.04, p, 100, 1.0).node_count() == 5151);
}

TEST_CASE("zero initial variance collapses the lower lattice") {
    const HestonParams p = cir_params(0.02, 0.5, 0.3);
    const CIRTree tree = CIRTree::build(0.0, p, 12, 1.0);
    for (int n = 1; n <= 12; ++n) {
        for (int k = 0; k <= n; ++k) {
            const double expected = node_value(0.0, 0.3, tree.step(), n, k);
            CHECK(tree.value(n, k) == expected);
            if (2 * k <= n) CHECK(tree.value(n, k) == 0.0);  // root argument <= 0
        }
    }
}

TEST_CASE("stationary start keeps the chain mean at y0") {
    // a = b y0: the drifted target is a convex combination of y and y0, and
    // with local first-moment exactness the propagated mean stays put.
    const double y0 = 0.04;
    const HestonParams p = cir_params(0.5 * y0, 0.5, 0.2);
    const int n_steps = 6;
    const CIRTree tree = CIRTree::build(y0, p, n_steps, 1.5);
    const double h = tree.step();

    std::vector<double> prob = {1.0};
    for (int n = 0; n < n_steps; ++n) {
        // All visited nodes must be unclamped for the identity to be exact.
        for (int k = 0; k <= n; ++k) {
            if (prob[k] == 0.0) continue;
            const double y = tree.value(n, k);
            const double target = y + drift_y(y, p) * h;
            const double yu = tree.value(n + 1, tree.jump_up(n, k));
            const double yd = tree.value(n + 1, tree.jump_down(n, k));
            REQUIRE(yu > yd);
            const double raw = (target - yd) / (yu - yd);
            REQUIRE(raw >= 0.0);
            REQUIRE(raw <= 1.0);
        }
        std::vector<double> next(n + 2, 0.0);
        for (int k = 0; k <= n; ++k) {
            if (prob[k] == 0.0) continue;
            const double pu = tree.prob_up(n, k);
            next[tree.jump_up(n, k)] += prob[k] * pu;
            next[tree.jump_down(n, k)] += prob[k] * (1.0 - pu);
        }
        prob = std::move(next);

        double mean = 0.0;
        double mass = 0.0;
        for (std::size_t k = 0; k < prob.size(); ++k) {
            mean += prob[k] * tree.value(n + 1, static_cast<int>(k));
            mass += prob[k];
        }
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(mean == doctest::Approx(y0).epsilon(1e-12));
    }
}
