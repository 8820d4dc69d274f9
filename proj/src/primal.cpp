#include "evar/primal.hpp"

#include "evar/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace evar {

namespace {

double objective_impl(const DiscreteDistribution& d, double beta, double z) {
    std::vector<double> args(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        args[i] = std::log(d.prob(i)) - z * d.value(i);
    }
    const double cumulant = num::log_sum_exp(args);
    return -(cumulant + beta) / z;
}

}  // namespace

double primal_objective(const DiscreteDistribution& d, const RiskLevel& level, double z) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw std::domain_error("primal objective requires z > 0");
    }
    return objective_impl(d, level.entropy_budget(), z);
}

PrimalSolution evar_primal(const DiscreteDistribution& d, const RiskLevel& level,
                           const PrimalOptions& opts) {
    PrimalSolution sol;
    if (degenerate_regime(d, level)) {
        sol.value = d.ess_inf();
        sol.boundary = true;
        return sol;
    }

    const double beta = level.entropy_budget();
    int iterations = 0;

    auto phi = [&](double t) {
        ++iterations;
        const double value = objective_impl(d, beta, std::exp(t));
        if (!std::isfinite(value)) {
            throw std::runtime_error("evar_primal: objective not finite at log z = " +
                                     std::to_string(t));
        }
        if (opts.record_trace) sol.trace.emplace_back(std::exp(t), value);
        return value;
    };

    // Grow a bracket in t = log z. The objective rises to a unique interior
    // peak and falls off toward ess_inf afterwards, so marching each end until
    // the local slope points inward encloses the maximizer.
    const double range = d.ess_sup() - d.ess_inf();
    double a = std::log(1.0 / range) - 1.0;
    double b = std::log(1.0 / range) + 1.0;
    double step = 1.0;
    while (phi(b) >= phi(b - 0.5)) {
        b += step;
        step *= 2.0;
        if (iterations > opts.max_iterations) {
            throw std::runtime_error("evar_primal: right bracket expansion stalled");
        }
    }
    step = 1.0;
    while (phi(a) >= phi(a + 0.5)) {
        a -= step;
        step *= 2.0;
        if (iterations > opts.max_iterations) {
            throw std::runtime_error("evar_primal: left bracket expansion stalled");
        }
    }

    // Golden-section on [a, b].
    const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_gr * (b - a);
    double e = a + inv_gr * (b - a);
    double fc = phi(c);
    double fe = phi(e);
    while (b - a > opts.log_z_tol) {
        if (iterations > opts.max_iterations) {
            throw std::runtime_error("evar_primal: golden-section search stalled");
        }
        if (fc >= fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - inv_gr * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + inv_gr * (b - a);
            fe = phi(e);
        }
    }

    const double t_star = fc >= fe ? c : e;
    sol.value = std::max(fc, fe);
    sol.z_star = std::exp(t_star);
    sol.boundary = false;
    sol.iterations = iterations;
    return sol;
}

}  // namespace evar
