#ifndef TSKSTREAM_QUANTILE_HPP
#define TSKSTREAM_QUANTILE_HPP

#include <array>
#include <cstdint>

namespace tsk {

/// Streaming quantile estimate via the P-square algorithm: five markers
/// tracking (0, p/2, p, (1+p)/2, 1) with parabolic height adjustment.
/// Deterministic, O(1) per observation.
class P2Quantile {
public:
    explicit P2Quantile(double p = 0.99) : p_(p) {}

    void add(double x);

    /// Current estimate; before five observations, the running maximum.
    double value() const noexcept;

    std::uint64_t count() const noexcept { return count_; }

private:
    double p_;
    std::uint64_t count_ = 0;
    std::array<double, 5> heights_{};
    std::array<double, 5> positions_{};
    std::array<double, 5> desired_{};
    std::array<double, 5> increments_{};
};

} // namespace tsk

#endif
