#include "evar/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace evar {

namespace {

constexpr double kMergeTolerance = 1e-12;

void check_finite(const std::vector<std::pair<double, double>>& pairs) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!std::isfinite(pairs[i].first)) {
            throw std::invalid_argument("non-finite value at index " + std::to_string(i));
        }
        if (!std::isfinite(pairs[i].second) || pairs[i].second <= 0.0) {
            throw std::invalid_argument("weight must be positive and finite at index " +
                                        std::to_string(i));
        }
    }
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    cdf_.resize(atoms_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        acc += atoms_[i].prob;
        cdf_[i] = std::min(acc, 1.0);
    }
    cdf_.back() = 1.0;
}

DiscreteDistribution DiscreteDistribution::from_samples(const std::vector<double>& values) {
    if (values.empty()) {
        throw std::invalid_argument("empty sample list");
    }
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw std::invalid_argument("non-finite value at index " + std::to_string(i));
        }
        pairs.emplace_back(values[i], 1.0);
    }
    return from_weighted(pairs);
}

DiscreteDistribution DiscreteDistribution::from_weighted(
    const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.empty()) {
        throw std::invalid_argument("empty atom list");
    }
    check_finite(pairs);

    std::vector<std::pair<double, double>> sorted = pairs;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    double total = 0.0;
    for (const auto& [v, w] : sorted) total += w;
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw std::invalid_argument("total weight must be positive and finite");
    }

    // Merge values equal within tolerance of the group anchor; the anchor (the
    // smallest value of the group) is the representative.
    std::vector<Atom> merged;
    merged.reserve(sorted.size());
    for (const auto& [v, w] : sorted) {
        if (!merged.empty() && v - merged.back().value <= kMergeTolerance) {
            merged.back().prob += w;
        } else {
            merged.push_back(Atom{v, w});
        }
    }

    double norm = 0.0;
    for (const Atom& a : merged) norm += a.prob;
    for (Atom& a : merged) a.prob /= norm;

    // Absorb the normalization rounding residual into the heaviest atom so the
    // unit-sum invariant holds at machine precision regardless of atom count.
    double residual = -1.0;
    std::size_t heaviest = 0;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        residual += merged[i].prob;
        if (merged[i].prob > merged[heaviest].prob) heaviest = i;
    }
    merged[heaviest].prob -= residual;

    return DiscreteDistribution(std::move(merged));
}

double DiscreteDistribution::quantile(double u) const {
    if (!(u > 0.0) || u > 1.0) {
        throw std::domain_error("quantile argument must lie in (0, 1]");
    }
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    return atoms_[static_cast<std::size_t>(it - cdf_.begin())].value;
}

double DiscreteDistribution::mean() const {
    double acc = 0.0;
    for (const Atom& a : atoms_) acc += a.value * a.prob;
    return acc;
}

RiskLevel::RiskLevel(double alpha) : alpha_(alpha), budget_(-std::log(alpha)) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("risk level alpha must lie strictly inside (0, 1)");
    }
}

bool degenerate_regime(const DiscreteDistribution& d, const RiskLevel& level) {
    // The relative guard keeps boundary laws (alpha equal to the minimum mass up
    // to rounding of 1 - alpha) in the analytic branch.
    const double guard = 64.0 * std::numeric_limits<double>::epsilon();
    return d.is_constant() || level.alpha() <= d.min_mass() * (1.0 + guard);
}

}  // namespace evar
