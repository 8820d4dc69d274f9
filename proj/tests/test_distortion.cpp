#include "evar/distortion.hpp"

#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using evar::DiscreteDistribution;
using evar::DistortionFunction;
using evar::LambdaCurve;
using evar::RiskLevel;
using evar::ScenarioDensity;

namespace {

DiscreteDistribution random_law(std::mt19937_64& rng, int max_atoms, double lo = -10.0,
                                double hi = 10.0) {
    std::uniform_int_distribution<int> count(2, max_atoms);
    std::uniform_real_distribution<double> val(lo, hi);
    std::uniform_real_distribution<double> wgt(0.05, 1.0);
    std::vector<std::pair<double, double>> pairs;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) pairs.emplace_back(val(rng), wgt(rng));
    return DiscreteDistribution::from_weighted(pairs);
}

}  // namespace

TEST_CASE("distortion kinds evaluate correctly") {
    auto id = DistortionFunction::identity();
    CHECK(id(0.0) == 0.0);
    CHECK(id(0.37) == 0.37);
    CHECK(id(1.0) == 1.0);

    auto c = DistortionFunction::cvar(0.25);
    CHECK(c(0.5) == 0.0);
    CHECK(c(0.75) == 0.0);
    CHECK(c(0.875) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c(1.0) == 1.0);

    auto tab = DistortionFunction::tabulated({{0.0, 0.0}, {0.5, 0.1}, {1.0, 1.0}});
    CHECK(tab(0.25) == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(tab(0.75) == doctest::Approx(0.55).epsilon(1e-14));

    CHECK_THROWS_AS(id(-0.1), std::domain_error);
    CHECK_THROWS_AS(id(1.1), std::domain_error);
    CHECK_THROWS_AS(DistortionFunction::cvar(0.0), std::invalid_argument);
    CHECK_THROWS_AS(DistortionFunction::cvar(1.5), std::invalid_argument);
    // concave table rejected
    CHECK_THROWS_AS(DistortionFunction::tabulated({{0.0, 0.0}, {0.5, 0.9}, {1.0, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DistortionFunction::tabulated({{0.0, 0.1}, {1.0, 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("shipped distortion kinds stay below the diagonal") {
    RiskLevel level(0.4);
    LambdaCurve curve(level);
    for (const auto& f : {DistortionFunction::identity(), DistortionFunction::cvar(0.4),
                          DistortionFunction::lambda(curve)}) {
        for (int k = 0; k <= 100; ++k) {
            const double x = k / 100.0;
            CHECK(f(x) <= x + 1e-12);
            CHECK(f(x) >= 0.0);
        }
        CHECK(f(0.0) == 0.0);
        CHECK(f(1.0) == 1.0);
    }
}

TEST_CASE("choquet utility pinned cases") {
    auto uniform = DiscreteDistribution::from_weighted({{0.0, 0.5}, {1.0, 0.5}});
    CHECK(evar::choquet_utility(uniform, DistortionFunction::identity()) ==
          doctest::Approx(uniform.mean()).epsilon(1e-15));
    CHECK(evar::choquet_utility(uniform, DistortionFunction::cvar(0.5)) == 0.0);

    // two-point law against the implicit curve: the step sum collapses to
    // Lambda(a)
    RiskLevel level(1.0 / std::exp(1.0));
    LambdaCurve curve(level);
    auto law = DiscreteDistribution::from_weighted({{0.0, 0.1}, {1.0, 0.9}});
    CHECK(evar::choquet_utility(law, DistortionFunction::lambda(curve)) ==
          doctest::Approx(curve.value(0.9)).epsilon(1e-12));
}

TEST_CASE("cvar pinned cases and the two evaluation routes") {
    auto c = DiscreteDistribution::from_samples({3.5});
    CHECK(evar::cvar(c, 0.37) == 3.5);

    auto uniform = DiscreteDistribution::from_weighted({{0.0, 0.5}, {1.0, 0.5}});
    CHECK(evar::cvar(uniform, 0.5) == 0.0);

    auto skew = DiscreteDistribution::from_weighted({{0.0, 0.25}, {1.0, 0.75}});
    CHECK(evar::cvar(skew, 0.5) == doctest::Approx(0.5).epsilon(1e-15));

    // level 1 recovers the mean
    std::mt19937_64 rng(808);
    auto d = random_law(rng, 9);
    CHECK(evar::cvar(d, 1.0) == doctest::Approx(d.mean()).epsilon(1e-13));

    CHECK_THROWS_AS(evar::cvar(d, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(evar::cvar(d, 1.0001), std::invalid_argument);
}

TEST_CASE("lambda utility pinned cases") {
    RiskLevel level(1.0 / std::exp(1.0));
    auto law = DiscreteDistribution::from_weighted({{0.0, 0.1}, {1.0, 0.9}});
    CHECK(evar::lambda_utility(law, level) ==
          doctest::Approx(0.3107827734550418).epsilon(1e-12));

    auto c = DiscreteDistribution::from_samples({-2.0});
    CHECK(evar::lambda_utility(c, level) == -2.0);

    // nested indicator sum: comonotone additivity makes the utility exactly
    // Lambda(a) + Lambda(b)
    RiskLevel half(0.5);
    LambdaCurve curve(half);
    const double a = 0.6, b = 0.8;
    auto nested = DiscreteDistribution::from_weighted({{0.0, 1 - b}, {1.0, b - a}, {2.0, a}});
    CHECK(evar::lambda_utility(nested, curve) ==
          doctest::Approx(curve.value(a) + curve.value(b)).epsilon(1e-13));
}

TEST_CASE("scenario set membership") {
    auto p = DiscreteDistribution::from_weighted({{0.0, 0.5}, {1.0, 0.5}});

    CHECK(evar::in_scenario_set(ScenarioDensity({0.5, 0.5}), p, DistortionFunction::cvar(0.5)));
    CHECK(evar::in_scenario_set(ScenarioDensity({0.5, 0.5}), p, DistortionFunction::identity()));

    // conditional-on-the-minimum distorts the reference measure
    CHECK_FALSE(
        evar::in_scenario_set(ScenarioDensity({1.0, 0.0}), p, DistortionFunction::identity()));

    // the dual optimizer lives in the lambda scenario set
    std::mt19937_64 rng(909);
    for (int trial = 0; trial < 10; ++trial) {
        auto d = random_law(rng, 8);
        RiskLevel level(0.35);
        auto sol = evar::evar_dual(d, level);
        LambdaCurve curve(level);
        CHECK(evar::in_scenario_set(sol.scenario, d, DistortionFunction::lambda(curve), 1e-9));
    }

    auto big = DiscreteDistribution::from_samples(
        {1,  2,  3,  4,  5,  6,  7,  8,  9,  10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21});
    CHECK_THROWS_AS(
        evar::in_scenario_set(ScenarioDensity(std::vector<double>(21, 1.0 / 21)), big,
                              DistortionFunction::identity()),
        std::invalid_argument);
}

TEST_CASE("sandwich ordering and pinned gaps") {
    RiskLevel half(0.5);

    auto c = DiscreteDistribution::from_samples({1.25});
    auto rc = evar::sandwich(c, half);
    CHECK(rc.cvar_value == 1.25);
    CHECK(rc.evar_value == 1.25);
    CHECK(rc.ulambda_value == 1.25);

    // two-point laws: the floor is tight
    auto two = DiscreteDistribution::from_weighted({{0.0, 0.2}, {1.0, 0.8}});
    auto r2 = evar::sandwich(two, half);
    CHECK(std::abs(r2.gap_evar_ulambda) <= 1e-8);
    CHECK(r2.gap_cvar_evar >= 0.0);

    // three-point support splits the floor strictly
    auto three = DiscreteDistribution::from_weighted({{0.0, 0.2}, {1.0, 0.2}, {2.0, 0.6}});
    auto r3 = evar::sandwich(three, half);
    CHECK(r3.gap_evar_ulambda > 1e-6);

    std::mt19937_64 rng(1010);
    for (int trial = 0; trial < 40; ++trial) {
        auto d = random_law(rng, 12);
        for (double alpha : {0.2, 0.5, 0.8}) {
            auto r = evar::sandwich(d, RiskLevel(alpha));
            CHECK(r.gap_cvar_evar >= -1e-9);
            CHECK(r.gap_evar_ulambda >= -1e-9);
        }
    }
}

TEST_CASE("comonotone additivity of the choquet utility") {
    std::mt19937_64 rng(1111);
    std::uniform_real_distribution<double> wgt(0.1, 1.0);
    std::uniform_real_distribution<double> step(0.0, 2.0);

    for (int trial = 0; trial < 25; ++trial) {
        // common partition of (0,1] with two nondecreasing step functions on it
        const int k = 6;
        std::vector<double> probs(k);
        double total = 0.0;
        for (auto& w : probs) total += (w = wgt(rng));
        for (auto& w : probs) w /= total;

        std::vector<double> g(k), h(k);
        double gal = -3.0, hal = 5.0;
        for (int i = 0; i < k; ++i) {
            gal += step(rng);
            hal += step(rng);
            g[i] = gal;
            h[i] = hal;
        }

        std::vector<std::pair<double, double>> pg, ph, ps;
        for (int i = 0; i < k; ++i) {
            pg.emplace_back(g[i], probs[i]);
            ph.emplace_back(h[i], probs[i]);
            ps.emplace_back(g[i] + h[i], probs[i]);
        }
        auto dg = DiscreteDistribution::from_weighted(pg);
        auto dh = DiscreteDistribution::from_weighted(ph);
        auto ds = DiscreteDistribution::from_weighted(ps);

        for (const auto& f : {DistortionFunction::cvar(0.35),
                              DistortionFunction::lambda(LambdaCurve(RiskLevel(0.35))),
                              DistortionFunction::tabulated({{0, 0}, {0.6, 0.2}, {1, 1}})}) {
            const double sum = evar::choquet_utility(ds, f);
            const double parts = evar::choquet_utility(dg, f) + evar::choquet_utility(dh, f);
            CHECK(std::abs(sum - parts) <= 1e-10);
        }
    }
}

TEST_CASE("choquet utility is coherent and law driven") {
    std::mt19937_64 rng(1212);
    std::uniform_real_distribution<double> shift(-4.0, 4.0);
    std::uniform_real_distribution<double> scale(0.2, 5.0);

    for (int trial = 0; trial < 20; ++trial) {
        auto d = random_law(rng, 10);
        auto f = DistortionFunction::cvar(0.4);
        const double base = evar::choquet_utility(d, f);

        const double c = shift(rng);
        std::vector<std::pair<double, double>> shifted, scaled, raised;
        for (const auto& at : d.atoms()) shifted.emplace_back(at.value + c, at.prob);
        // translation
        CHECK(evar::choquet_utility(DiscreteDistribution::from_weighted(shifted), f) ==
              doctest::Approx(base + c).epsilon(1e-12));
        // positive homogeneity
        const double lam = scale(rng);
        for (const auto& at : d.atoms()) scaled.emplace_back(at.value * lam, at.prob);
        CHECK(evar::choquet_utility(DiscreteDistribution::from_weighted(scaled), f) ==
              doctest::Approx(lam * base).epsilon(1e-12));
        // monotonicity
        for (const auto& at : d.atoms()) {
            raised.emplace_back(at.value + std::abs(shift(rng)), at.prob);
        }
        CHECK(evar::choquet_utility(DiscreteDistribution::from_weighted(raised), f) >=
              base - 1e-10);
    }
}

TEST_CASE("step sum equals stepwise quantile integration") {
    std::mt19937_64 rng(1313);
    std::uniform_real_distribution<double> alpha_draw(0.1, 0.95);
    for (int trial = 0; trial < 100; ++trial) {
        auto d = random_law(rng, 14);
        const double alpha = alpha_draw(rng);
        auto f = (trial % 2 == 0)
                     ? DistortionFunction::cvar(alpha)
                     : DistortionFunction::tabulated({{0, 0}, {alpha, 0.4 * alpha}, {1, 1}});

        // integral over (0,1] of q_{1-a} f'(a) da, pieced together over the
        // rectangle grid made by the cdf breakpoints (f' constant between
        // distorted tail masses on each piece, q constant across each atom)
        double integral = 0.0;
        double prev_cdf = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double tail_hi = 1.0 - prev_cdf;
            const double tail_lo = 1.0 - d.cdf()[i];
            integral += d.value(i) * (f(tail_hi) - f(tail_lo));
            prev_cdf = d.cdf()[i];
        }
        CHECK(std::abs(integral - evar::choquet_utility(d, f)) <= 1e-12);
    }
}

TEST_CASE("feasible scenarios never undercut the choquet value") {
    std::mt19937_64 rng(1414);
    std::exponential_distribution<double> expo(1.0);
    for (int trial = 0; trial < 8; ++trial) {
        auto d = random_law(rng, 6);
        RiskLevel level(0.45);
        LambdaCurve curve(level);
        auto f = DistortionFunction::lambda(curve);
        const double floor = evar::lambda_utility(d, curve);

        // comonotone-extreme scenario attains the value and is feasible
        std::vector<double> extreme(d.size());
        double prev = 0.0;
        double attained = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            extreme[i] = f(1.0 - prev) - f(1.0 - d.cdf()[i]);
            attained += extreme[i] * d.value(i);
            prev = d.cdf()[i];
        }
        ScenarioDensity qe(extreme);
        CHECK(evar::in_scenario_set(qe, d, f, 1e-9));
        CHECK(std::abs(attained - floor) <= 1e-12);

        // random feasible scenarios sit above the floor
        int found = 0;
        for (int draw = 0; draw < 200 && found < 20; ++draw) {
            std::vector<double> w(d.size());
            double total = 0.0;
            for (auto& x : w) total += (x = expo(rng));
            for (auto& x : w) x /= total;
            ScenarioDensity q(w);
            if (!evar::in_scenario_set(q, d, f, 1e-12)) continue;
            ++found;
            double e = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i) e += q[i] * d.value(i);
            CHECK(e >= floor - 2e-3);
        }
    }
}

TEST_CASE("noncomonotone witness") {
    RiskLevel half(0.5);
    auto w = evar::noncomonotone_witness(half, 0.6, 0.8);

    CHECK(w.lambda_a == doctest::Approx(0.05130536369135741).epsilon(1e-11));
    CHECK(w.lambda_b == doctest::Approx(0.2529802405477045).epsilon(1e-11));
    CHECK(w.ulambda_value == doctest::Approx(w.lambda_a + w.lambda_b).epsilon(1e-13));
    CHECK(w.evar_value == doctest::Approx(0.4000606320605914).epsilon(1e-9));
    CHECK(w.gap > 1e-6);

    // the contradiction splits: a single two-block scenario cannot price both
    CHECK(w.ratio_split > 1e-9);
    CHECK(w.complement_split > 1e-9);
    CHECK(w.dominance_margin > 1e-9);

    CHECK_THROWS_AS(evar::noncomonotone_witness(half, 0.6, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(evar::noncomonotone_witness(half, 0.4, 0.8), std::invalid_argument);
    CHECK_THROWS_AS(evar::noncomonotone_witness(half, 0.6, 1.0), std::invalid_argument);
}
