#pragma once

#include "evar/distribution.hpp"
#include "evar/entropy_dual.hpp"
#include "evar/lambda_curve.hpp"

#include <utility>
#include <variant>
#include <vector>

namespace evar {

// Convex distortion f : [0,1] -> [0,1] with f(0) = 0 and f(1) = 1. Such an f
// defines the scenario set S_f = { Q : Q[A] >= f(P[A]) for every event A } and
// the comonotone (Choquet) utility u_f = inf over S_f of E_Q[xi].
class DistortionFunction {
public:
    static DistortionFunction identity();

    // The tail distortion: 0 up to 1-alpha, then linear with slope 1/alpha.
    // Its utility is the average of the worst alpha-tail. alpha in (0, 1];
    // alpha = 1 degenerates to the identity (plain expectation).
    static DistortionFunction cvar(double alpha);

    // The implicit indicator distortion at the curve's level.
    static DistortionFunction lambda(LambdaCurve curve);

    // Piecewise-linear through (x, f(x)) knots; knots must start at (0,0), end
    // at (1,1), increase strictly in x, and have nondecreasing slopes. Linear
    // interpolation keeps the convexity that was checked at construction.
    static DistortionFunction tabulated(std::vector<std::pair<double, double>> knots);

    double operator()(double x) const;

private:
    struct Identity {};
    struct Cvar {
        double alpha;
    };
    struct Tabulated {
        std::vector<std::pair<double, double>> knots;
    };
    using Impl = std::variant<Identity, Cvar, LambdaCurve, Tabulated>;

    explicit DistortionFunction(Impl impl) : impl_(std::move(impl)) {}

    Impl impl_;
};

// Choquet integral of the distortion as an exact step sum over the atoms
// v_1 < ... < v_n with cdf values F_0 = 0, F_i:
//
//   u_f = sum_i v_i (f(1 - F_{i-1}) - f(1 - F_i))
//
// No quadrature is involved; on discrete laws this equals the quantile
// integral of f' exactly.
double choquet_utility(const DiscreteDistribution& d, const DistortionFunction& f);

// Average of the worst alpha-tail. Evaluated twice, as the Choquet integral of
// the tail distortion and as the exact tail average of the quantile function;
// the two routes must agree to 1e-12 or a logic_error is thrown.
double cvar(const DiscreteDistribution& d, double alpha);

// Choquet utility of the implicit indicator distortion. The greatest comonotone
// utility dominated by the entropic value-at-risk at the same level; the two
// agree on two-point laws and differ strictly on wider supports.
double lambda_utility(const DiscreteDistribution& d, const LambdaCurve& curve);
double lambda_utility(const DiscreteDistribution& d, const RiskLevel& level);

// Exhaustive membership oracle for S_f: checks Q[A] >= f(P[A]) - slack over all
// 2^n events. Desk scale only; n > 20 is rejected.
bool in_scenario_set(const ScenarioDensity& q, const DiscreteDistribution& p,
                     const DistortionFunction& f, double slack = 1e-12);

struct SandwichReport {
    double cvar_value;
    double evar_value;
    double ulambda_value;
    double gap_cvar_evar;      // >= 0 up to 1e-9 slack
    double gap_evar_ulambda;   // >= 0 up to 1e-9 slack
};

// The two-sided comonotone envelope at one level: tail average above, implicit
// indicator distortion utility below. An ordering violation beyond 1e-9 is an
// implementation bug and throws logic_error.
SandwichReport sandwich(const DiscreteDistribution& d, const RiskLevel& level);

struct NoncomonotoneWitness {
    DiscreteDistribution law;  // three-point law of a nested indicator sum
    double evar_value;
    double ulambda_value;      // Lambda(a) + Lambda(b), exact by comonotone additivity
    double gap;                // evar_value - ulambda_value, strictly positive
    double lambda_a;
    double lambda_b;
    double ratio_a;            // Lambda(a)/a
    double ratio_b;            // Lambda(b)/b
    double ratio_complement;   // (1 - Lambda(a))/(1 - a)
    double ratio_split;        // ratio_b - ratio_a, strictly positive
    double complement_split;   // ratio_complement - ratio_b, strictly positive
    double dominance_margin;   // a - Lambda(a), strictly positive
};

// Builds the law of the sum of nested indicators with event masses a and b
// (1 - alpha < a < b < 1) and evaluates the failure of comonotone additivity:
// the entropic value-at-risk exceeds Lambda(a) + Lambda(b) strictly, and no
// single two-block scenario can price both indicators at their curve values
// (the ratio splits are strictly positive unless Lambda(a) = a, which the
// dominance margin rules out).
NoncomonotoneWitness noncomonotone_witness(const RiskLevel& level, double a, double b);

}  // namespace evar
