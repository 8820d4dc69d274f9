#include "evar/lambda_curve.hpp"

#include "evar/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evar {

double indicator_entropy(double lam, double a) {
    if (!(lam >= 0.0) || !(lam <= 1.0)) {
        throw std::domain_error("indicator_entropy: lam must lie in [0, 1]");
    }
    if (!(a > 0.0) || !(a < 1.0)) {
        throw std::domain_error("indicator_entropy: a must lie in (0, 1)");
    }
    return num::xlogx(lam) + num::xlogx(1.0 - lam) - lam * std::log(a) -
           (1.0 - lam) * std::log(1.0 - a);
}

IndicatorEntropyDerivatives indicator_entropy_partials(double lam, double a) {
    if (!(lam > 0.0) || !(lam < 1.0) || !(a > 0.0) || !(a < 1.0)) {
        throw std::domain_error("indicator_entropy_partials: arguments must be interior");
    }
    IndicatorEntropyDerivatives g;
    g.d_lam = std::log(lam / (1.0 - lam)) - std::log(a / (1.0 - a));
    g.d_a = (a - lam) / (a * (1.0 - a));
    g.d2_lam_lam = 1.0 / lam + 1.0 / (1.0 - lam);
    g.d2_lam_a = -1.0 / a - 1.0 / (1.0 - a);
    g.d2_a_a = lam / (a * a) + (1.0 - lam) / ((1.0 - a) * (1.0 - a));
    return g;
}

LambdaCurve::LambdaCurve(RiskLevel level, double root_tol)
    : level_(level), root_tol_(root_tol) {}

LambdaCurve::LambdaCurve(RiskLevel level, std::size_t cache_points, double root_tol)
    : level_(level), root_tol_(root_tol) {
    if (cache_points < 2) {
        throw std::invalid_argument("LambdaCurve cache needs at least two points");
    }
    build_cache(cache_points);
}

double LambdaCurve::solve(double a) const {
    const double beta = level_.entropy_budget();

    // F(., a) decreases from -log(1-a) > beta toward F(a, a) = 0 < beta on
    // (0, a), so the root is unique. Shrink the bracket margin until both ends
    // straddle the budget, then bisect.
    double eps = std::min(1e-3, 0.125 * a);
    while (indicator_entropy(eps, a) <= beta && eps > 1e-300) eps /= 16.0;
    double lo = eps;
    double hi = a;

    double mid = 0.5 * (lo + hi);
    double res = indicator_entropy(mid, a) - beta;
    for (int it = 0; it < 200 && std::abs(res) > root_tol_; ++it) {
        if (res > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
        res = indicator_entropy(mid, a) - beta;
    }

    // Two Newton steps once safely interior; F is smooth there and the bisected
    // iterate is already close, so this lands at ~1e-15 residuals.
    if (mid > 1e-6 && a - mid > 1e-6) {
        for (int k = 0; k < 2; ++k) {
            const double slope = indicator_entropy_partials(mid, a).d_lam;
            double next = mid - (indicator_entropy(mid, a) - beta) / slope;
            if (next > lo && next < hi) mid = next;
        }
    }
    return mid;
}

double LambdaCurve::value(double a) const {
    if (!(a >= 0.0) || !(a <= 1.0)) {
        throw std::domain_error("LambdaCurve::value: a must lie in [0, 1]");
    }
    if (a <= 1.0 - level_.alpha()) return 0.0;
    if (a == 1.0) return 1.0;
    return solve(a);
}

IndicatorPoint LambdaCurve::point(double a) const {
    if (!(a > 0.0) || !(a < 1.0)) {
        throw std::domain_error("LambdaCurve::point: a must lie strictly inside (0, 1)");
    }
    return IndicatorPoint{a, value(a)};
}

double LambdaCurve::derivative(double a) const {
    if (!(a > 1.0 - level_.alpha()) || !(a < 1.0)) {
        throw std::domain_error("LambdaCurve::derivative: a outside (1-alpha, 1)");
    }
    const auto g = indicator_entropy_partials(solve(a), a);
    return -g.d_a / g.d_lam;
}

double LambdaCurve::second_derivative(double a) const {
    if (!(a > 1.0 - level_.alpha()) || !(a < 1.0)) {
        throw std::domain_error("LambdaCurve::second_derivative: a outside (1-alpha, 1)");
    }
    const auto g = indicator_entropy_partials(solve(a), a);
    const double d1 = -g.d_a / g.d_lam;
    const double quad = g.d2_a_a + 2.0 * g.d2_lam_a * d1 + g.d2_lam_lam * d1 * d1;
    return quad / (-g.d_lam);
}

void LambdaCurve::build_cache(std::size_t points) {
    const double lo = 1.0 - level_.alpha();
    const double h = level_.alpha() / static_cast<double>(points - 1);

    cache_a_.resize(points);
    cache_v_.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        cache_a_[i] = i + 1 == points ? 1.0 : lo + h * static_cast<double>(i);
        cache_v_[i] = value(cache_a_[i]);
    }

    // Fritsch-Carlson tangents: monotone data stays monotone under the
    // resulting cubic Hermite interpolant.
    const std::size_t m = points - 1;
    std::vector<double> sec(m);
    for (std::size_t i = 0; i < m; ++i) {
        sec[i] = (cache_v_[i + 1] - cache_v_[i]) / (cache_a_[i + 1] - cache_a_[i]);
    }
    cache_m_.resize(points);
    cache_m_[0] = sec.front();
    cache_m_[m] = sec.back();
    for (std::size_t i = 1; i < m; ++i) {
        cache_m_[i] = sec[i - 1] * sec[i] <= 0.0 ? 0.0 : 0.5 * (sec[i - 1] + sec[i]);
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (sec[i] == 0.0) {
            cache_m_[i] = cache_m_[i + 1] = 0.0;
            continue;
        }
        const double u = cache_m_[i] / sec[i];
        const double v = cache_m_[i + 1] / sec[i];
        const double s = u * u + v * v;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            cache_m_[i] = tau * u * sec[i];
            cache_m_[i + 1] = tau * v * sec[i];
        }
    }
}

double LambdaCurve::interpolated(double a) const {
    if (!has_cache()) {
        throw std::logic_error("LambdaCurve::interpolated: curve built without a cache");
    }
    if (!(a >= 0.0) || !(a <= 1.0)) {
        throw std::domain_error("LambdaCurve::interpolated: a must lie in [0, 1]");
    }
    if (a <= cache_a_.front()) return 0.0;
    if (a >= 1.0) return 1.0;

    const auto it = std::lower_bound(cache_a_.begin(), cache_a_.end(), a);
    const std::size_t hi = static_cast<std::size_t>(it - cache_a_.begin());
    const std::size_t lo = hi - 1;
    const double h = cache_a_[hi] - cache_a_[lo];
    const double t = (a - cache_a_[lo]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return cache_v_[lo] * (2.0 * t3 - 3.0 * t2 + 1.0) + cache_m_[lo] * h * (t3 - 2.0 * t2 + t) +
           cache_v_[hi] * (-2.0 * t3 + 3.0 * t2) + cache_m_[hi] * h * (t3 - t2);
}

}  // namespace evar
