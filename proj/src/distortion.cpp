#include "evar/distortion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace evar {

DistortionFunction DistortionFunction::identity() { return DistortionFunction(Impl{Identity{}}); }

DistortionFunction DistortionFunction::cvar(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::invalid_argument("cvar distortion level must lie in (0, 1]");
    }
    return DistortionFunction(Impl{Cvar{alpha}});
}

DistortionFunction DistortionFunction::lambda(LambdaCurve curve) {
    return DistortionFunction(Impl{std::move(curve)});
}

DistortionFunction DistortionFunction::tabulated(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) {
        throw std::invalid_argument("tabulated distortion needs at least two knots");
    }
    if (knots.front() != std::pair{0.0, 0.0} || knots.back() != std::pair{1.0, 1.0}) {
        throw std::invalid_argument("tabulated distortion must run from (0,0) to (1,1)");
    }
    double prev_slope = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < knots.size(); ++i) {
        const double dx = knots[i].first - knots[i - 1].first;
        if (!(dx > 0.0)) {
            throw std::invalid_argument("tabulated distortion knots must increase in x");
        }
        const double slope = (knots[i].second - knots[i - 1].second) / dx;
        if (slope < prev_slope - 1e-12) {
            throw std::invalid_argument("tabulated distortion is not convex");
        }
        prev_slope = slope;
    }
    return DistortionFunction(Impl{Tabulated{std::move(knots)}});
}

double DistortionFunction::operator()(double x) const {
    if (!(x >= 0.0) || !(x <= 1.0)) {
        throw std::domain_error("distortion argument must lie in [0, 1]");
    }
    struct Eval {
        double x;
        double operator()(const Identity&) const { return x; }
        double operator()(const Cvar& c) const {
            return x <= 1.0 - c.alpha ? 0.0 : (x - 1.0 + c.alpha) / c.alpha;
        }
        double operator()(const LambdaCurve& curve) const { return curve.value(x); }
        double operator()(const Tabulated& t) const {
            const auto& k = t.knots;
            auto it = std::lower_bound(k.begin(), k.end(), x,
                                       [](const auto& knot, double v) { return knot.first < v; });
            if (it == k.begin()) return k.front().second;
            const auto hi = it;
            const auto lo = it - 1;
            const double w = (x - lo->first) / (hi->first - lo->first);
            return lo->second + w * (hi->second - lo->second);
        }
    };
    return std::visit(Eval{x}, impl_);
}

double choquet_utility(const DiscreteDistribution& d, const DistortionFunction& f) {
    const auto& cdf = d.cdf();
    double total = 0.0;
    double f_prev = f(1.0);  // tail probability above the lowest atom is 1
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double f_next = f(1.0 - cdf[i]);
        total += d.value(i) * (f_prev - f_next);
        f_prev = f_next;
    }
    return total;
}

namespace {

// (1/alpha) * integral of the quantile over (0, alpha], as the exact step sum.
double tail_average(const DiscreteDistribution& d, double alpha) {
    const auto& cdf = d.cdf();
    double acc = 0.0;
    double below = 0.0;  // cdf mass already consumed
    for (std::size_t i = 0; i < d.size() && below < alpha; ++i) {
        const double take = std::min(cdf[i], alpha) - below;
        acc += d.value(i) * take;
        below = std::min(cdf[i], alpha);
    }
    return acc / alpha;
}

}  // namespace

double cvar(const DiscreteDistribution& d, double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::invalid_argument("cvar level must lie in (0, 1]");
    }
    const double via_choquet = choquet_utility(d, DistortionFunction::cvar(alpha));
    const double via_tail = tail_average(d, alpha);
    const double scale = std::max(1.0, std::max(std::abs(d.ess_inf()), std::abs(d.ess_sup())));
    if (std::abs(via_choquet - via_tail) > 1e-12 * scale) {
        throw std::logic_error("cvar: distortion and tail-average routes disagree by " +
                               std::to_string(via_choquet - via_tail));
    }
    return via_tail;
}

double lambda_utility(const DiscreteDistribution& d, const LambdaCurve& curve) {
    return choquet_utility(d, DistortionFunction::lambda(curve));
}

double lambda_utility(const DiscreteDistribution& d, const RiskLevel& level) {
    return lambda_utility(d, LambdaCurve(level));
}

bool in_scenario_set(const ScenarioDensity& q, const DiscreteDistribution& p,
                     const DistortionFunction& f, double slack) {
    const std::size_t n = p.size();
    if (q.size() != n) {
        throw std::invalid_argument("scenario density not aligned with distribution atoms");
    }
    if (n > 20) {
        throw std::invalid_argument("in_scenario_set enumerates 2^n events; n > 20 rejected");
    }

    // Subset sums by peeling the lowest set bit.
    const std::size_t m = std::size_t{1} << n;
    std::vector<double> qa(m, 0.0);
    std::vector<double> pa(m, 0.0);
    for (std::size_t mask = 1; mask < m; ++mask) {
        const std::size_t low = mask & (~mask + 1);
        const std::size_t idx = static_cast<std::size_t>(std::countr_zero(mask));
        qa[mask] = qa[mask ^ low] + q[idx];
        pa[mask] = pa[mask ^ low] + p.prob(idx);
        if (qa[mask] < f(std::min(pa[mask], 1.0)) - slack) return false;
    }
    return true;
}

SandwichReport sandwich(const DiscreteDistribution& d, const RiskLevel& level) {
    SandwichReport r;
    r.cvar_value = cvar(d, level.alpha());
    r.evar_value = evar_dual(d, level).value;
    r.ulambda_value = lambda_utility(d, level);
    r.gap_cvar_evar = r.cvar_value - r.evar_value;
    r.gap_evar_ulambda = r.evar_value - r.ulambda_value;
    if (r.gap_cvar_evar < -1e-9 || r.gap_evar_ulambda < -1e-9) {
        throw std::logic_error("sandwich ordering violated: gaps " +
                               std::to_string(r.gap_cvar_evar) + ", " +
                               std::to_string(r.gap_evar_ulambda));
    }
    return r;
}

NoncomonotoneWitness noncomonotone_witness(const RiskLevel& level, double a, double b) {
    if (!(a > 1.0 - level.alpha()) || !(a < b) || !(b < 1.0)) {
        throw std::invalid_argument("witness requires 1 - alpha < a < b < 1");
    }

    // Law of the sum of nested indicators: 2 on the inner event (mass a),
    // 1 on the ring (mass b - a), 0 outside (mass 1 - b).
    auto law = DiscreteDistribution::from_weighted({{0.0, 1.0 - b}, {1.0, b - a}, {2.0, a}});

    LambdaCurve curve(level);
    const double la = curve.value(a);
    const double lb = curve.value(b);

    NoncomonotoneWitness w{
        .law = law,
        .evar_value = evar_dual(law, level).value,
        .ulambda_value = lambda_utility(law, curve),
        .gap = 0.0,
        .lambda_a = la,
        .lambda_b = lb,
        .ratio_a = la / a,
        .ratio_b = lb / b,
        .ratio_complement = (1.0 - la) / (1.0 - a),
        .ratio_split = 0.0,
        .complement_split = 0.0,
        .dominance_margin = a - la,
    };
    w.gap = w.evar_value - w.ulambda_value;
    w.ratio_split = w.ratio_b - w.ratio_a;
    w.complement_split = w.ratio_complement - w.ratio_b;
    return w;
}

}  // namespace evar
