#include "evar/entropy_dual.hpp"

#include "evar/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace evar {

namespace {

// Tilted state evaluated against the value offsets du_i = v_i - ess_inf, which
// keeps every intermediate finite for arbitrarily large z:
//   S(z)   = sum_i p_i exp(-z du_i)            (in (0, 1])
//   q_i    = p_i exp(-z du_i) / S(z)
//   E_Q    = ess_inf + sum_i q_i du_i
//   H(Q|P) = -z sum_i q_i du_i - log S(z)
struct TiltState {
    std::vector<double> q;
    double mean;
    double entropy;
};

TiltState tilt_state(const DiscreteDistribution& p, double z) {
    const std::size_t n = p.size();
    const double lo = p.ess_inf();

    std::vector<double> w(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = p.prob(i) * std::exp(-z * (p.value(i) - lo));
        sum += w[i];
    }

    double residual = -1.0;
    std::size_t heaviest = 0;
    double shifted_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] /= sum;
        residual += w[i];
        if (w[i] > w[heaviest]) heaviest = i;
        shifted_mean += w[i] * (p.value(i) - lo);
    }
    // keep the unit sum exact at machine precision for any atom count
    w[heaviest] -= residual;

    return TiltState{std::move(w), lo + shifted_mean, -z * shifted_mean - std::log(sum)};
}

DualSolution degenerate_solution(const DiscreteDistribution& d) {
    std::vector<double> q(d.size(), 0.0);
    q[0] = 1.0;
    DualSolution s;
    s.value = d.ess_inf();
    s.scenario = ScenarioDensity(std::move(q));
    s.z_star = 0.0;
    s.degenerate = true;
    s.entropy = -std::log(d.min_mass()) + 0.0;  // +0.0 normalizes -0.0 on constant laws
    s.iterations = 0;
    return s;
}

}  // namespace

ScenarioDensity::ScenarioDensity(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw std::invalid_argument("scenario density must have at least one entry");
    }
    num::CompensatedSum total;
    for (double q : probs_) {
        if (!(q >= 0.0)) {
            throw std::invalid_argument("scenario density entries must be nonnegative");
        }
        total.add(q);
    }
    if (std::abs(total.value() - 1.0) > 1e-12) {
        throw std::invalid_argument("scenario density must sum to one");
    }
}

double relative_entropy(const ScenarioDensity& q, const DiscreteDistribution& p) {
    if (q.size() != p.size()) {
        throw std::invalid_argument("scenario density not aligned with distribution atoms");
    }
    double h = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] > 0.0) h += q[i] * std::log(q[i] / p.prob(i));
    }
    return std::max(h, 0.0);
}

ScenarioDensity gibbs_tilt(const DiscreteDistribution& p, double z) {
    if (!(z >= 0.0) || !std::isfinite(z)) {
        throw std::domain_error("tilt parameter must be finite and nonnegative");
    }
    return ScenarioDensity(tilt_state(p, z).q);
}

DualSolution evar_dual(const DiscreteDistribution& d, const RiskLevel& level,
                       const DualOptions& opts) {
    if (degenerate_regime(d, level)) {
        return degenerate_solution(d);
    }

    const double beta = level.entropy_budget();
    const double range = d.ess_sup() - d.ess_inf();
    int iterations = 0;

    // Bracket: H(0) = 0 < beta and sup_z H = -log(min_mass) > beta here, so
    // doubling the upper end must cross the budget.
    double z_lo = 0.0;
    double z_hi = 1.0 / range;
    while (tilt_state(d, z_hi).entropy < beta) {
        z_hi *= 2.0;
        if (++iterations > opts.max_iterations) {
            throw std::runtime_error("evar_dual: entropy bracket did not close at z = " +
                                     std::to_string(z_hi));
        }
    }

    double z_mid = z_hi;
    TiltState st = tilt_state(d, z_mid);
    while (std::abs(st.entropy - beta) > opts.entropy_tol) {
        if (++iterations > opts.max_iterations) {
            throw std::runtime_error("evar_dual: entropy matching stalled, residual " +
                                     std::to_string(st.entropy - beta));
        }
        z_mid = 0.5 * (z_lo + z_hi);
        st = tilt_state(d, z_mid);
        if (st.entropy < beta) {
            z_lo = z_mid;
        } else {
            z_hi = z_mid;
        }
    }

    DualSolution s;
    s.value = st.mean;
    s.scenario = ScenarioDensity(std::move(st.q));
    s.z_star = z_mid;
    s.degenerate = false;
    s.entropy = st.entropy;
    s.iterations = iterations;
    return s;
}

std::vector<std::pair<double, double>> entropy_profile(const DiscreteDistribution& d,
                                                       const std::vector<double>& z_grid) {
    double prev = -1.0;
    for (double z : z_grid) {
        if (!(z >= 0.0) || z <= prev) {
            throw std::invalid_argument("z grid must be nonnegative and increasing");
        }
        prev = z;
    }
    std::vector<std::pair<double, double>> profile;
    profile.reserve(z_grid.size());
    for (double z : z_grid) {
        profile.emplace_back(z, tilt_state(d, z).entropy);
    }
    return profile;
}

}  // namespace evar
