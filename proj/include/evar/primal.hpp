#pragma once

#include "evar/distribution.hpp"

#include <utility>
#include <vector>

namespace evar {

struct PrimalSolution {
    double value = 0.0;
    double z_star = 0.0;  // maximizer; 0 when the boundary regime applies
    bool boundary = false;
    int iterations = 0;
    std::vector<std::pair<double, double>> trace;  // (z, objective) probes when recorded
};

struct PrimalOptions {
    double log_z_tol = 1e-11;
    int max_iterations = 400;
    bool record_trace = false;
};

// The objective -(1/z) log(E[exp(-z xi)] / alpha) at a fixed z > 0, evaluated
// through a max-shifted log-sum-exp over the atoms.
double primal_objective(const DiscreteDistribution& d, const RiskLevel& level, double z);

// Supremum of the objective over z > 0, by golden-section search in log z after
// growing a bracket around the peak. Kept independent of the dual solver so the
// two can cross-check each other; for constant laws and in the degenerate
// regime the supremum is not attained in the interior and the analytic boundary
// value is returned instead.
PrimalSolution evar_primal(const DiscreteDistribution& d, const RiskLevel& level,
                           const PrimalOptions& opts = {});

}  // namespace evar
