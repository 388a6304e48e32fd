#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace hsum {

/// Neumaier-compensated running sum. Deterministic for a fixed term order.
class CompensatedSum {
public:
    void add(double term) noexcept {
        const double t = sum_ + term;
        if (std::fabs(sum_) >= std::fabs(term)) {
            comp_ += (sum_ - t) + term;
        } else {
            comp_ += (term - t) + sum_;
        }
        sum_ = t;
        abs_total_ += std::fabs(term);
        ++count_;
    }

    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }
    [[nodiscard]] double abs_total() const noexcept { return abs_total_; }
    [[nodiscard]] std::uint64_t count() const noexcept { return count_; }

    // Bound on the summation error alone: 2u|S| + 4 n u^2 sum|t_i|, with
    // |S| <= sum|t_i|.
    [[nodiscard]] double rounding_bound() const noexcept {
        constexpr double u = std::numeric_limits<double>::epsilon() / 2;
        return (2 * u + 4 * static_cast<double>(count_) * u * u) * abs_total_;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_total_ = 0.0;
    std::uint64_t count_ = 0;
};

}  // namespace hsum
