#pragma once

#include "evar/distribution.hpp"

#include <utility>
#include <vector>

namespace evar {

// Alternative probability over the atoms of a reference distribution. The
// density dQ/dP lives only on P's support, so absolute continuity holds by
// construction.
class ScenarioDensity {
public:
    ScenarioDensity() = default;
    explicit ScenarioDensity(std::vector<double> probs);

    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }

private:
    std::vector<double> probs_;
};

// Kullback-Leibler divergence sum_i q_i log(q_i / p_i), with 0 log 0 = 0.
double relative_entropy(const ScenarioDensity& q, const DiscreteDistribution& p);

// Exponential reweighting q_i proportional to p_i exp(-z v_i), normalized.
// z = 0 returns p itself; growing z concentrates mass on the lowest atom.
// Exponents are shifted by their maximum before exponentiation, so overflow
// cannot occur for any z >= 0.
ScenarioDensity gibbs_tilt(const DiscreteDistribution& p, double z);

struct DualSolution {
    double value = 0.0;        // attained E_Q[xi]
    ScenarioDensity scenario;  // the minimizing Q
    double z_star = 0.0;       // tilt parameter; 0 in the degenerate regime
    bool degenerate = false;   // entropy constraint slack, minimum at the lowest atom
    double entropy = 0.0;      // H(Q|P) at the optimum
    int iterations = 0;
};

struct DualOptions {
    double entropy_tol = 1e-12;
    int max_iterations = 200;
};

// Minimum of E_Q[xi] over the entropy ball H(Q|P) <= -log(alpha).
//
// Outside the degenerate regime the constraint binds and the optimizer is the
// unique Gibbs tilt whose entropy matches the budget; the tilt parameter is
// found by bracket doubling followed by bisection (the entropy of the tilt is
// nondecreasing in z, so bisection is globally convergent).
DualSolution evar_dual(const DiscreteDistribution& d, const RiskLevel& level,
                       const DualOptions& opts = {});

// (z, H(gibbs_tilt(p, z) | p)) samples along a nonnegative increasing grid.
// Solver diagnostics; also handy for monotonicity tests.
std::vector<std::pair<double, double>> entropy_profile(const DiscreteDistribution& d,
                                                       const std::vector<double>& z_grid);

}  // namespace evar
