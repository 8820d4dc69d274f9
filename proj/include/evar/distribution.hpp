#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace evar {

// One support point of a discrete law.
struct Atom {
    double value;
    double prob;
};

// Discrete law of a bounded random variable: finitely many atoms with strictly
// increasing values and strictly positive probabilities summing to one.
//
// Every risk functional in this library is law-invariant, so this type is the
// universal input. Construction canonicalizes: values are sorted, duplicates
// (within absolute tolerance 1e-12) are merged by summing their weights, and
// weights are normalized to unit total.
class DiscreteDistribution {
public:
    static DiscreteDistribution from_samples(const std::vector<double>& values);
    static DiscreteDistribution from_weighted(const std::vector<std::pair<double, double>>& pairs);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double value(std::size_t i) const { return atoms_[i].value; }
    double prob(std::size_t i) const { return atoms_[i].prob; }

    // Cumulative probabilities F_1..F_n; the final entry is exactly 1.
    const std::vector<double>& cdf() const { return cdf_; }

    // Left-continuous generalized inverse: smallest value v with P[xi <= v] >= u.
    // Defined for u in (0, 1].
    double quantile(double u) const;

    double mean() const;
    double ess_inf() const { return atoms_.front().value; }
    double ess_sup() const { return atoms_.back().value; }

    // Probability of the lowest atom. Values within the merge tolerance of the
    // essential infimum already form a single atom after canonicalization.
    double min_mass() const { return atoms_.front().prob; }

    bool is_constant() const { return atoms_.size() == 1; }

private:
    explicit DiscreteDistribution(std::vector<Atom> atoms);

    std::vector<Atom> atoms_;
    std::vector<double> cdf_;
};

// Left-continuous quantile view over a distribution. Non-owning; the referenced
// distribution must outlive the view.
class QuantileFunction {
public:
    explicit QuantileFunction(const DiscreteDistribution& dist) : dist_(&dist) {}

    double operator()(double u) const { return dist_->quantile(u); }
    const DiscreteDistribution& distribution() const { return *dist_; }

private:
    const DiscreteDistribution* dist_;
};

// Confidence level alpha in (0,1) paired with the entropy budget -log(alpha).
class RiskLevel {
public:
    explicit RiskLevel(double alpha);

    double alpha() const { return alpha_; }
    double entropy_budget() const { return budget_; }

private:
    double alpha_;
    double budget_;
};

// True when the entropy ball at this level is wide enough to move all mass onto
// the lowest atom, i.e. alpha <= P[xi = ess inf] up to machine rounding. In this
// regime the entropic value-at-risk equals the essential infimum exactly.
bool degenerate_regime(const DiscreteDistribution& d, const RiskLevel& level);

}  // namespace evar
