#pragma once

#include "evar/distribution.hpp"

#include <cstddef>
#include <vector>

namespace evar {

// Entropy of the two-block density that places weight lam uniformly on an event
// of probability a and the rest on its complement:
//
//   F(lam, a) = lam log lam + (1-lam) log(1-lam) - lam log a - (1-lam) log(1-a)
//
// Nonnegative, zero exactly at lam = a, extended continuously to lam in {0,1}
// where it equals -log(1-a) and -log(a).
double indicator_entropy(double lam, double a);

struct IndicatorEntropyDerivatives {
    double d_lam;      // log(lam/(1-lam)) - log(a/(1-a)); negative for lam < a
    double d_a;        // (a - lam) / (a(1-a)); positive for lam < a
    double d2_lam_lam; // 1/lam + 1/(1-lam)
    double d2_lam_a;   // -1/a - 1/(1-a)
    double d2_a_a;     // lam/a^2 + (1-lam)/(1-a)^2
};

// First and second partials at a strictly interior point (boundary arguments
// are rejected; the first partial in lam is unbounded there).
IndicatorEntropyDerivatives indicator_entropy_partials(double lam, double a);

// Event mass a together with the dual weight lam attained on the event.
struct IndicatorPoint {
    double a;
    double lam;  // in [0, a)
};

// The implicit convex distortion of the entropic value-at-risk: value(a) is the
// level-alpha entropic value-at-risk of an indicator with event probability a.
// It is 0 on [0, 1-alpha], 1 at a = 1, and in between the unique root
// lam < a of F(lam, a) = -log(alpha). Strictly convex and strictly increasing
// on (1-alpha, 1), with derivative growing without bound as a -> 1.
//
// value() always solves the root directly. An optional uniform grid over
// [1-alpha, 1] with monotone-cubic interpolation can be built eagerly at
// construction for fast curve export; the cache is immutable afterwards and
// never consulted by value().
class LambdaCurve {
public:
    static constexpr std::size_t kDefaultCachePoints = 4096;

    explicit LambdaCurve(RiskLevel level, double root_tol = 1e-12);
    LambdaCurve(RiskLevel level, std::size_t cache_points, double root_tol = 1e-12);

    const RiskLevel& level() const { return level_; }

    double value(double a) const;
    IndicatorPoint point(double a) const;

    // dLambda/da on the open interval (1-alpha, 1), via the implicit function
    // theorem at the solved root. Strictly positive there.
    double derivative(double a) const;

    // d^2 Lambda / da^2 on the same interval: the quadratic form of the
    // entropy Hessian in the direction (derivative, 1), divided by the
    // negative lam-partial. Strictly positive.
    double second_derivative(double a) const;

    bool has_cache() const { return !cache_a_.empty(); }
    double interpolated(double a) const;

private:
    double solve(double a) const;
    void build_cache(std::size_t points);

    RiskLevel level_;
    double root_tol_;
    std::vector<double> cache_a_;
    std::vector<double> cache_v_;
    std::vector<double> cache_m_;  // Fritsch-Carlson tangents
};

}  // namespace evar
