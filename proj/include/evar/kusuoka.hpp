#pragma once

#include "evar/distribution.hpp"
#include "evar/entropy_dual.hpp"

#include <vector>

namespace evar {

// Nonincreasing step density on [0,1]: each step holds its right endpoint and
// height. Endpoints increase strictly to 1, heights are nonincreasing and
// nonnegative, and the integral is one.
class DecreasingDensity {
public:
    struct Step {
        double right;
        double height;
    };

    explicit DecreasingDensity(std::vector<Step> steps);

    const std::vector<Step>& steps() const { return steps_; }

    // Height of the step whose half-open interval (left, right] contains x.
    double operator()(double x) const;

private:
    std::vector<Step> steps_;
};

// Atomic probability on (0,1] that mixes tail-average levels.
class KusuokaMeasure {
public:
    struct Atom {
        double x;
        double mass;
    };

    explicit KusuokaMeasure(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }

private:
    std::vector<Atom> atoms_;
};

// Sorts the density ratios q_i/p_i in nonincreasing order, carrying the atom
// probabilities as interval lengths. Rearrangement preserves the relative
// entropy; paired against the quantile function it turns E_Q[xi] into the
// anti-monotone integral that the mixture identity rests on.
DecreasingDensity decreasing_rearrangement(const ScenarioDensity& q,
                                           const DiscreteDistribution& p);

// integral of eta log(eta) with 0 log 0 = 0; equals H(Q|P) for rearranged
// scenario densities.
double density_entropy(const DecreasingDensity& eta);

// Writes eta(x) = integral over (x,1] of (1/a) nu(da): every step drop at x_j
// contributes an atom of mass x_j * (eta_j - eta_{j+1}). For step densities
// this atomic measure is the unique solution of the transform.
KusuokaMeasure density_to_measure(const DecreasingDensity& eta);

// The transform read the other way: eta(x) = sum over atoms with x_j > x of
// mass_j / x_j, a nonincreasing step function by construction.
DecreasingDensity measure_to_density(const KusuokaMeasure& nu);

// sum_j mass_j * cvar(d, x_j).
double cvar_mixture(const DiscreteDistribution& d, const KusuokaMeasure& nu);

}  // namespace evar
