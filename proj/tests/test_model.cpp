#include "doctest.h"

#include "heston/params.hpp"
#include "heston/payoff.hpp"

#include <cmath>
#include <random>

using namespace heston;

namespace {

HestonParams base_params() {
    HestonParams p;
    p.r = 0.05;
    p.delta = 0.0;
    p.a = 0.02;
    p.b = 0.5;
    p.sigma = 0.3;
    p.rho = -0.7;
    return p;
}

}  // namespace

TEST_CASE("parameter validation and Feller reporting") {
    HestonParams p = base_params();
    CHECK_NOTHROW(p.validate());
    CHECK_FALSE(p.feller_satisfied());  // 0.09 > 0.04

    p.sigma = 0.15;
    CHECK(p.feller_satisfied());  // 0.0225 <= 0.04

    HestonParams bad = base_params();
    bad.a = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = base_params();
    bad.sigma = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = base_params();
    bad.rho = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    // b <= 0 is allowed (general mean-reversion sign).
    HestonParams neg_b = base_params();
    neg_b.b = -0.1;
    CHECK_NOTHROW(neg_b.validate());
}

TEST_CASE("coordinate transform") {
    HestonParams p = base_params();

    SUBCASE("rho = 0 kills the shift") {
        p.rho = 0.0;
        CHECK(to_transformed(1.0, 0.04, p) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(from_transformed(std::log(100.0), 0.04, p) == doctest::Approx(100.0).epsilon(1e-14));
    }

    SUBCASE("hand value") {
        p.rho = -0.5;
        p.sigma = 1.0;
        // x = 1 - (-0.5)(2) = 2
        CHECK(to_transformed(std::exp(1.0), 2.0, p) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(from_transformed(2.0, 2.0, p) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    }

    SUBCASE("identity at origin") {
        CHECK(from_transformed(0.0, 0.0, p) == 1.0);
    }

    SUBCASE("round-trip") {
        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> us(0.01, 500.0);
        std::uniform_real_distribution<double> uy(0.0, 2.0);
        for (int i = 0; i < 100; ++i) {
            const double s = us(rng);
            const double y = uy(rng);
            const double back = from_transformed(to_transformed(s, y, p), y, p);
            CHECK(std::abs(back - s) <= 1e-12 * s);
        }
    }

    SUBCASE("nonpositive price rejected") {
        CHECK_THROWS_AS(to_transformed(0.0, 0.1, p), std::domain_error);
        CHECK_THROWS_AS(to_transformed(-1.0, 0.1, p), std::domain_error);
    }
}

TEST_CASE("transformed drift") {
    SUBCASE("rho = 0 hand value") {
        HestonParams p = base_params();
        p.rho = 0.0;
        // 0.05 - 0.5 * 0.04 = 0.03
        CHECK(drift_x(0.04, p) == doctest::Approx(0.03).epsilon(1e-14));
    }

    SUBCASE("all terms vanish") {
        HestonParams p = base_params();
        p.rho = 0.0;
        p.r = 0.02;
        p.delta = 0.02;
        CHECK(drift_x(0.0, p) == 0.0);
    }

    SUBCASE("correlated hand value") {
        HestonParams p = base_params();
        p.r = 0.0;
        // -rho a / sigma + (rho b / sigma - 1/2) y
        //   = 0.7*0.02/0.3 + (-0.7*0.5/0.3 - 0.5) * 0.04 = -0.02
        CHECK(drift_x(0.04, p) == doctest::Approx(-0.02).epsilon(1e-12));
    }

    SUBCASE("affine in y") {
        const HestonParams p = base_params();
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> uy(0.0, 3.0);
        for (int i = 0; i < 50; ++i) {
            const double y1 = uy(rng);
            const double y2 = uy(rng);
            CHECK(std::abs(drift_x(y1, p) + drift_x(y2, p) - drift_x(0.0, p) -
                           drift_x(y1 + y2, p)) <= 1e-14);
        }
    }
}

TEST_CASE("variance drift") {
    HestonParams p = base_params();
    p.a = 0.02;
    p.b = 0.5;
    CHECK(drift_y(0.04, p) == 0.0);  // stationary mean a/b
    CHECK(drift_y(0.0, p) == doctest::Approx(0.02));
    CHECK(drift_y(0.1, p) == doctest::Approx(-0.03).epsilon(1e-14));
}

TEST_CASE("payoff evaluation") {
    const HestonParams p = [] {
        HestonParams q = base_params();
        q.rho = 0.0;
        return q;
    }();

    SUBCASE("constant") {
        const Payoff f = Payoff::constant(7.0);
        CHECK(payoff_transformed(f, 1.23, 0.5, p) == 7.0);
        CHECK(f(50.0, 0.0) == 7.0);
    }

    SUBCASE("put at rho = 0") {
        const Payoff f = Payoff::put(100.0);
        CHECK(payoff_transformed(f, std::log(90.0), 0.0, p) == doctest::Approx(10.0).epsilon(1e-12));
    }

    SUBCASE("digital includes the lower boundary") {
        const Payoff f = Payoff::digital(100.0);
        CHECK(payoff_transformed(f, std::log(100.0), 0.04, p) == 1.0);
        CHECK(f(100.0, 0.0) == 1.0);
        CHECK(f(99.999999, 0.0) == 0.0);
    }

    SUBCASE("digital upper boundary excluded") {
        const Payoff f = Payoff::digital(90.0, 110.0);
        CHECK(f(110.0, 0.0) == 0.0);
        CHECK(f(109.999999, 0.0) == 1.0);
        CHECK(f(89.999999, 0.0) == 0.0);
    }

    SUBCASE("digital requires lo < hi") {
        CHECK_THROWS_AS(Payoff::digital(100.0, 100.0), std::invalid_argument);
        CHECK_THROWS_AS(Payoff::digital(-1.0, 100.0), std::invalid_argument);
    }

    SUBCASE("identity asset") {
        const Payoff f = Payoff::identity_asset();
        CHECK(f(123.5, 0.2) == 123.5);
    }

    SUBCASE("table interpolation and extrapolation") {
        const Payoff f = Payoff::table({{50.0, 1.0}, {100.0, 3.0}, {150.0, 2.0}});
        CHECK(f(75.0, 0.0) == doctest::Approx(2.0));
        CHECK(f(10.0, 0.0) == 1.0);
        CHECK(f(500.0, 0.0) == 2.0);
        CHECK_THROWS_AS(Payoff::table({{2.0, 1.0}, {1.0, 0.0}}), std::invalid_argument);
    }
}

TEST_CASE("payoff identities") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> us(0.01, 400.0);
    const Payoff call = Payoff::call(100.0);
    const Payoff put = Payoff::put(100.0);
    const Payoff dig = Payoff::digital(80.0, 120.0);
    for (int i = 0; i < 200; ++i) {
        const double s = us(rng);
        const double d = dig(s, 0.0);
        CHECK((d == 0.0 || d == 1.0));
        CHECK(call(s, 0.0) >= 0.0);
        CHECK(put(s, 0.0) >= 0.0);
        // put(s) + s - K = call(s)
        CHECK(put(s, 0.0) + s - 100.0 == doctest::Approx(call(s, 0.0)).epsilon(1e-12));
    }
}
