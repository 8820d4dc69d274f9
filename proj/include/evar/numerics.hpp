#pragma once

#include <algorithm>
#include <cmath>
#include <span>

namespace evar::num {

// x log(x), extended continuously by 0 at x = 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// log(sum_i exp(args[i])) with max-shift stabilization.
inline double log_sum_exp(std::span<const double> args) {
    const double m = *std::max_element(args.begin(), args.end());
    double sum = 0.0;
    for (double a : args) sum += std::exp(a - m);
    return m + std::log(sum);
}

// Neumaier-compensated accumulator; rounding error stays O(eps) regardless of
// the number of terms, so unit-sum invariants can be checked at 1e-12 even for
// very long atom lists.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace evar::num
