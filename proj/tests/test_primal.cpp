#include "evar/primal.hpp"

#include "evar/entropy_dual.hpp"

#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using evar::DiscreteDistribution;
using evar::PrimalOptions;
using evar::RiskLevel;

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

// Product law of two independent discrete laws.
DiscreteDistribution independent_sum(const DiscreteDistribution& a,
                                     const DiscreteDistribution& b) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            pairs.emplace_back(a.value(i) + b.value(j), a.prob(i) * b.prob(j));
        }
    }
    return DiscreteDistribution::from_weighted(pairs);
}

}  // namespace

TEST_CASE("objective pinned values") {
    auto uniform = DiscreteDistribution::from_weighted({{0.0, 0.5}, {1.0, 0.5}});
    RiskLevel half(0.5);

    // -(1/log 3) * log((0.5 + 0.5/3)/0.5) = -log(4/3)/log(3)
    CHECK(evar::primal_objective(uniform, half, std::log(3.0)) ==
          doctest::Approx(-0.2618595071429148).epsilon(1e-14));

    // constant law: objective = c + log(alpha)/z, below c everywhere
    auto c = DiscreteDistribution::from_samples({2.0});
    for (double z : {0.5, 1.0, 8.0}) {
        CHECK(evar::primal_objective(c, half, z) ==
              doctest::Approx(2.0 + std::log(0.5) / z).epsilon(1e-13));
        CHECK(evar::primal_objective(c, half, z) < 2.0);
    }
    CHECK(evar::primal_objective(c, half, 1e8) == doctest::Approx(2.0).epsilon(1e-7));

    // z -> 0+ : the budget term dominates and the objective dives
    CHECK(evar::primal_objective(uniform, half, 1e-8) < -1e6);

    CHECK_THROWS_AS(evar::primal_objective(uniform, half, 0.0), std::domain_error);
    CHECK_THROWS_AS(evar::primal_objective(uniform, half, -1.0), std::domain_error);
}

TEST_CASE("primal boundary cases") {
    auto c = DiscreteDistribution::from_samples({5.0});
    auto sol = evar::evar_primal(c, RiskLevel(0.3));
    CHECK(sol.value == 5.0);
    CHECK(sol.boundary);

    auto d = DiscreteDistribution::from_weighted({{0.0, 0.6}, {1.0, 0.4}});
    auto zero = evar::evar_primal(d, RiskLevel(0.5));
    CHECK(zero.value == 0.0);
    CHECK(zero.boundary);
}

TEST_CASE("primal agrees with dual on random laws") {
    std::mt19937_64 rng(513);
    for (int trial = 0; trial < 30; ++trial) {
        auto d = random_law(rng, 10);
        RiskLevel level(0.25);
        const double primal = evar::evar_primal(d, level).value;
        const double dual = evar::evar_dual(d, level).value;
        CHECK(std::abs(primal - dual) <= 1e-7);
    }
}

TEST_CASE("stationarity: the maximizer's tilt entropy meets the budget") {
    std::mt19937_64 rng(524);
    for (int trial = 0; trial < 20; ++trial) {
        auto d = random_law(rng, 12);
        RiskLevel level(0.35);
        auto sol = evar::evar_primal(d, level);
        if (sol.boundary) continue;  // interior condition applies off the boundary regime
        const double h = evar::relative_entropy(evar::gibbs_tilt(d, sol.z_star), d);
        CHECK(std::abs(h - level.entropy_budget()) <= 1e-6);
    }
}

TEST_CASE("primal solution stays within [ess_inf, mean]") {
    std::mt19937_64 rng(535);
    for (int trial = 0; trial < 20; ++trial) {
        auto d = random_law(rng, 20);
        for (double alpha : {0.05, 0.5, 0.95}) {
            auto sol = evar::evar_primal(d, RiskLevel(alpha));
            CHECK(sol.value >= d.ess_inf() - 1e-9);
            CHECK(sol.value <= d.mean() + 1e-9);
        }
    }
}

TEST_CASE("coherence axioms hold for the primal value") {
    std::mt19937_64 rng(546);
    std::uniform_real_distribution<double> shift(-5.0, 5.0);
    std::uniform_real_distribution<double> scale(0.1, 10.0);

    for (int trial = 0; trial < 25; ++trial) {
        auto d = random_law(rng, 8);
        RiskLevel level(0.4);
        const double base = evar::evar_primal(d, level).value;

        // translation equivariance
        const double c = shift(rng);
        std::vector<std::pair<double, double>> shifted;
        for (const auto& a : d.atoms()) shifted.emplace_back(a.value + c, a.prob);
        const double translated =
            evar::evar_primal(DiscreteDistribution::from_weighted(shifted), level).value;
        CHECK(std::abs(translated - (base + c)) <= 1e-9);

        // positive homogeneity
        const double lam = scale(rng);
        std::vector<std::pair<double, double>> scaled;
        for (const auto& a : d.atoms()) scaled.emplace_back(lam * a.value, a.prob);
        const double homogeneous =
            evar::evar_primal(DiscreteDistribution::from_weighted(scaled), level).value;
        CHECK(std::abs(homogeneous - lam * base) <= 1e-9 * std::max(1.0, lam));

        // monotonicity under pointwise-dominating quantiles
        std::vector<std::pair<double, double>> raised;
        for (const auto& a : d.atoms()) {
            raised.emplace_back(a.value + std::abs(shift(rng)), a.prob);
        }
        const double dominated =
            evar::evar_primal(DiscreteDistribution::from_weighted(raised), level).value;
        CHECK(dominated >= base - 1e-9);

        // superadditivity on independent sums
        auto e = random_law(rng, 8);
        const double joint = evar::evar_primal(independent_sum(d, e), level).value;
        const double separate = base + evar::evar_primal(e, level).value;
        CHECK(joint >= separate - 1e-9);
    }
}

TEST_CASE("level limits") {
    std::mt19937_64 rng(557);
    for (int trial = 0; trial < 10; ++trial) {
        auto d = random_law(rng, 10, 0.0, 1.0);
        const double near_one = evar::evar_primal(d, RiskLevel(1.0 - 1e-6)).value;
        CHECK(std::abs(near_one - d.mean()) <= 1e-3);

        const double range = d.ess_sup() - d.ess_inf();
        const double near_zero = evar::evar_primal(d, RiskLevel(1e-8)).value;
        CHECK(std::abs(near_zero - d.ess_inf()) <= 1e-3 * std::max(range, 1e-12));
    }
}

TEST_CASE("trace recording") {
    auto d = DiscreteDistribution::from_weighted({{0.0, 0.25}, {1.0, 0.75}});
    PrimalOptions opts;
    opts.record_trace = true;
    auto sol = evar::evar_primal(d, RiskLevel(0.3), opts);
    CHECK_FALSE(sol.trace.empty());
    double best = -1e300;
    for (auto [z, v] : sol.trace) best = std::max(best, v);
    CHECK(sol.value >= best - 1e-15);
}
