#pragma once

#include <cmath>
#include <cstdint>

#include "pcm/error.hpp"

namespace pcm::detail {

__extension__ using int128 = __int128;

/// Fixed-point accumulator (quantum 2^-50). Integer addition is associative, so
/// partial sums can be merged in any order and still produce identical bits.
class ExactSum {
public:
    static constexpr int kFractionBits = 50;

    void add(double v) {
        if (!std::isfinite(v) || std::abs(v) >= 0x1.0p70) {
            throw Error("value outside the exact accumulator range");
        }
        sum_ += static_cast<int128>(std::nearbyint(std::ldexp(v, kFractionBits)));
    }

    ExactSum& operator+=(const ExactSum& other) noexcept {
        sum_ += other.sum_;
        return *this;
    }

    double value() const noexcept {
        return std::ldexp(static_cast<double>(static_cast<long double>(sum_)), -kFractionBits);
    }

    double mean(std::uint64_t count) const noexcept {
        return count == 0 ? 0.0
                          : static_cast<double>(std::ldexp(static_cast<long double>(sum_),
                                                           -kFractionBits) /
                                                static_cast<long double>(count));
    }

    friend bool operator==(const ExactSum&, const ExactSum&) = default;

private:
    int128 sum_ = 0;
};

}  // namespace pcm::detail
