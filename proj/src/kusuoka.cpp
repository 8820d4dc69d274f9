#include "evar/kusuoka.hpp"

#include "evar/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace evar {

DecreasingDensity::DecreasingDensity(std::vector<Step> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) {
        throw std::invalid_argument("decreasing density must have at least one step");
    }
    double left = 0.0;
    num::CompensatedSum integral;
    double prev_height = std::numeric_limits<double>::infinity();
    for (const Step& s : steps_) {
        if (!(s.right > left) || s.right > 1.0) {
            throw std::invalid_argument("step endpoints must increase within (0, 1]");
        }
        if (!(s.height >= 0.0) || s.height > prev_height) {
            throw std::invalid_argument("step heights must be nonnegative and nonincreasing");
        }
        integral.add(s.height * (s.right - left));
        left = s.right;
        prev_height = s.height;
    }
    if (steps_.back().right != 1.0) {
        throw std::invalid_argument("step endpoints must reach 1");
    }
    if (std::abs(integral.value() - 1.0) > 1e-12) {
        throw std::invalid_argument("density must integrate to one");
    }
}

double DecreasingDensity::operator()(double x) const {
    if (!(x >= 0.0) || x > 1.0) {
        throw std::domain_error("density argument must lie in [0, 1]");
    }
    for (const Step& s : steps_) {
        if (x <= s.right) return s.height;
    }
    return steps_.back().height;
}

KusuokaMeasure::KusuokaMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) {
        throw std::invalid_argument("mixing measure must have at least one atom");
    }
    num::CompensatedSum total;
    for (const Atom& a : atoms_) {
        if (!(a.x > 0.0) || a.x > 1.0 || !(a.mass > 0.0)) {
            throw std::invalid_argument("mixing atoms need x in (0,1] and positive mass");
        }
        total.add(a.mass);
    }
    if (std::abs(total.value() - 1.0) > 1e-12) {
        throw std::invalid_argument("mixing masses must sum to one");
    }
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.x < b.x; });
    // Coincident levels combine.
    std::vector<Atom> merged;
    merged.reserve(atoms_.size());
    for (const Atom& a : atoms_) {
        if (!merged.empty() && merged.back().x == a.x) {
            merged.back().mass += a.mass;
        } else {
            merged.push_back(a);
        }
    }
    atoms_ = std::move(merged);
}

DecreasingDensity decreasing_rearrangement(const ScenarioDensity& q,
                                           const DiscreteDistribution& p) {
    if (q.size() != p.size()) {
        throw std::invalid_argument("scenario density not aligned with distribution atoms");
    }
    const std::size_t n = p.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return q[i] / p.prob(i) > q[j] / p.prob(j);
    });

    std::vector<DecreasingDensity::Step> steps;
    steps.reserve(n);
    double right = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = order[k];
        const double h = q[i] / p.prob(i);
        right += p.prob(i);
        if (k + 1 == n) right = 1.0;
        if (!steps.empty() && steps.back().height == h) {
            steps.back().right = right;
        } else {
            steps.push_back({right, h});
        }
    }
    return DecreasingDensity(std::move(steps));
}

double density_entropy(const DecreasingDensity& eta) {
    double acc = 0.0;
    double left = 0.0;
    for (const auto& s : eta.steps()) {
        acc += num::xlogx(s.height) * (s.right - left);
        left = s.right;
    }
    return acc;
}

KusuokaMeasure density_to_measure(const DecreasingDensity& eta) {
    const auto& steps = eta.steps();
    std::vector<KusuokaMeasure::Atom> atoms;
    atoms.reserve(steps.size());
    for (std::size_t j = 0; j < steps.size(); ++j) {
        const double next = j + 1 < steps.size() ? steps[j + 1].height : 0.0;
        const double drop = steps[j].height - next;
        if (drop > 0.0) {
            atoms.push_back({steps[j].right, steps[j].right * drop});
        }
    }
    return KusuokaMeasure(std::move(atoms));
}

DecreasingDensity measure_to_density(const KusuokaMeasure& nu) {
    const auto& atoms = nu.atoms();
    std::vector<DecreasingDensity::Step> steps(atoms.size());

    // Suffix sums back to front so that consecutive differences reproduce the
    // individual mass/x terms at full precision.
    double tail = 0.0;
    for (std::size_t k = atoms.size(); k-- > 0;) {
        tail += atoms[k].mass / atoms[k].x;
        steps[k] = {atoms[k].x, tail};
    }
    if (steps.back().right < 1.0) {
        steps.push_back({1.0, 0.0});
    }
    return DecreasingDensity(std::move(steps));
}

double cvar_mixture(const DiscreteDistribution& d, const KusuokaMeasure& nu) {
    // One pass builds the exact step integral I(x) of the quantile over (0, x];
    // each mixing atom then contributes mass * I(x)/x in O(log n). Same sum as
    // calling cvar per atom, without the quadratic blowup on long mixtures.
    const auto& cdf = d.cdf();
    std::vector<double> prefix(d.size() + 1, 0.0);
    double prev = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        prefix[i + 1] = prefix[i] + d.value(i) * (cdf[i] - prev);
        prev = cdf[i];
    }

    num::CompensatedSum acc;
    for (const auto& a : nu.atoms()) {
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), a.x);
        const std::size_t i = static_cast<std::size_t>(it - cdf.begin());
        const double below = i == 0 ? 0.0 : cdf[i - 1];
        const double integral = prefix[i] + d.value(i) * (a.x - below);
        acc.add(a.mass * (integral / a.x));
    }
    return acc.value();
}

}  // namespace evar
