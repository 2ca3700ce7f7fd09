#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>

namespace trustgraph::detail {

__extension__ using int128 = __int128;

/**
 * Sum of non-negative finite values whose result does not depend on the order
 * of the terms. Each term is truncated onto a fixed-point grid 2^-100 below the
 * largest term and accumulated exactly in 128-bit integers; the grid depends
 * only on the multiset of values, never on their order.
 */
template <typename ValueAt>
double order_invariant_sum(std::size_t count, ValueAt &&value_at) {
    double peak = 0.0;
    for (std::size_t i = 0; i < count; ++i)
        peak = std::max(peak, value_at(i));
    if (!(peak > 0.0))
        return 0.0;

    const int exponent = std::ilogb(peak); // peak < 2^(exponent + 1)
    const int headroom = static_cast<int>(std::bit_width(count));
    const int shift = 124 - headroom - (exponent + 1);

    int128 acc = 0;
    if (shift > -1000 && shift < 1000) {
        const double scale = std::ldexp(1.0, shift);
        for (std::size_t i = 0; i < count; ++i)
            acc += static_cast<int128>(value_at(i) * scale);
    } else {
        for (std::size_t i = 0; i < count; ++i)
            acc += static_cast<int128>(std::ldexp(value_at(i), shift));
    }
    return std::ldexp(static_cast<double>(acc), -shift);
}

} // namespace trustgraph::detail
