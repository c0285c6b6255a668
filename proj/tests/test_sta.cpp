#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "vsc/sta.hpp"

using namespace vsc;

namespace {

StaGains baseline_gains() {
    StaGains g;
    g.sqrt_gain = 2.0;
    g.integral_gain = 0.5;
    g.surface_slope = 10.0;
    return g;
}

}  // namespace

TEST_CASE("sliding surface") {
    CHECK(sliding_surface(0.0, 0.0, 3.0) == 0.0);
    CHECK(sliding_surface(1.0, -7.0, 7.0) == doctest::Approx(0.0));
    CHECK(sliding_surface(0.2, 0.1, 10.0) == doctest::Approx(2.1).epsilon(1e-12));
}

TEST_CASE("gain validation") {
    StaGains g = baseline_gains();
    CHECK(validate_gains(g, 0.4).ok());  // 2 > 2 sqrt(0.5) = 1.414..., 0.5 > 0.4

    g.sqrt_gain = 1.0;
    const GainCheck c1 = validate_gains(g, 0.1);
    CHECK_FALSE(c1.ok());
    CHECK_FALSE(c1.sqrt_gain_ok);
    CHECK(c1.integral_gain_ok);

    g = baseline_gains();
    g.sqrt_gain = 3.0;
    g.integral_gain = 0.1;
    const GainCheck c2 = validate_gains(g, 0.2);
    CHECK_FALSE(c2.ok());
    CHECK(c2.sqrt_gain_ok);
    CHECK_FALSE(c2.integral_gain_ok);
    CHECK(c2.integral_margin == doctest::Approx(-0.1));
}

TEST_CASE("control law algebra") {
    SUBCASE("zero surface with a fresh integral returns the equivalent control") {
        StaChannel ch(baseline_gains());
        CHECK(ch.control(0.0, 0.42, 1e-3) == doctest::Approx(0.42));
        CHECK(ch.integral() == 0.0);  // sign(0) = 0 injects nothing
    }
    SUBCASE("first step before the integral accrues") {
        StaChannel ch(baseline_gains());
        CHECK(ch.control(1.0, 0.0, 1e-3) == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(ch.integral() == doctest::Approx(1e-3));
    }
}

TEST_CASE("sign symmetry") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> sig(-2.0, 2.0);
    StaChannel pos(baseline_gains());
    StaChannel neg(baseline_gains());
    for (int i = 0; i < 500; ++i) {
        const double sigma = sig(rng);
        const double weq = sig(rng);
        const double wp = pos.control(sigma, weq, 1e-3);
        const double wn = neg.control(-sigma, -weq, 1e-3);
        CHECK(wp == doctest::Approx(-wn).epsilon(1e-12));
        CHECK(pos.integral() == doctest::Approx(-neg.integral()).epsilon(1e-12));
    }
}

TEST_CASE("double integrator reaches the sliding band in finite time") {
    // baseline gain set; 0.3 sin(t) disturbance (M = 0.3, L = 0.3 < k2 = 0.5)
    StaChannel ch(baseline_gains());
    const auto result = oracles::simulate_double_integrator(
        ch, 10.0, [](double t) { return 0.3 * std::sin(t); }, 0.5, -0.2, 10.0, 1e-3, 1e-3);
    REQUIRE(result.held);
    CHECK(result.band_entry_time < 5.0);
    CHECK(result.max_sigma_after_entry <= 1e-3);
}

TEST_CASE("finite-time sliding over randomized Lipschitz disturbances") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> init(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto dist = oracles::random_lipschitz(rng, 0.3, 0.4);  // within (M, L) class
        StaChannel ch(baseline_gains());
        const auto result = oracles::simulate_double_integrator(
            ch, 10.0, [&](double t) { return dist(t); }, init(rng), init(rng), 10.0, 1e-3, 1e-3);
        REQUIRE(result.held);
        CHECK(result.band_entry_time >= 0.0);
        CHECK(result.band_entry_time < 10.0);
    }
}

TEST_CASE("anti-windup clamps the output and aids recovery") {
    StaGains gains = baseline_gains();
    gains.output_limit = 1.0;

    SUBCASE("output never exceeds the limit") {
        StaChannel ch(gains);
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> sig(-5.0, 5.0);
        for (int i = 0; i < 2000; ++i) {
            const double w = ch.control(sig(rng), sig(rng), 1e-3);
            CHECK(std::abs(w) <= 1.0 + 1e-15);
            CHECK(std::abs(gains.integral_gain * ch.integral()) <= 1.0 + 1e-12);
        }
    }

    SUBCASE("conditional integration recovers without extra overshoot") {
        // drive both channels through a long saturation phase, then drop the
        // disturbance and compare the overshoot of sigma on recovery
        const auto run = [](bool windup_guard) {
            StaGains g;
            g.sqrt_gain = 2.0;
            g.integral_gain = 0.5;
            g.surface_slope = 10.0;
            if (windup_guard) g.output_limit = 1.0;
            StaChannel ch(g);
            double z1 = 0.0, z2 = 0.0;
            double overshoot = 0.0;
            const double dt = 1e-3;
            for (int k = 0; k < 20000; ++k) {
                const double t = k * dt;
                const double disturbance = t < 10.0 ? 3.0 : 0.0;  // far beyond the clamp
                const double sigma = z2 + 10.0 * z1;
                double w = ch.control(sigma, -10.0 * z2, dt);
                if (!windup_guard) w = saturate(w, 1.0);  // plain clamp, integral keeps running
                const auto f = [&](double, const std::array<double, 2>& x) -> std::array<double, 2> {
                    return {x[1], w + disturbance};
                };
                const auto next = oracles::rk4<2>({z1, z2}, t, dt, f);
                z1 = next[0];
                z2 = next[1];
                if (t > 10.0) overshoot = std::max(overshoot, -(z2 + 10.0 * z1));
            }
            return overshoot;
        };
        const double guarded = run(true);
        const double unguarded = run(false);
        CHECK(guarded <= unguarded + 1e-9);
    }
}
