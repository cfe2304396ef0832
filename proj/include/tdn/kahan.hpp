#pragma once

#include <cmath>

namespace tdn {

// Neumaier-compensated accumulator. Keeps long sums stable to ~1 ulp so
// that metric values do not depend on contributor iteration order.
class KahanSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace tdn
