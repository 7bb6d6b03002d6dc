#pragma once

#include <bit>
#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace catgraph {

using BigInt = boost::multiprecision::cpp_int;

/// ceil(log2(x)) for x >= 1; 0 for x <= 1.
constexpr unsigned ceil_log2(std::uint64_t x) noexcept
{
    return x <= 1 ? 0u : static_cast<unsigned>(std::bit_width(x - 1));
}

/// Bits needed to store any value in [0, range): ceil(log2(range)), at least 1.
constexpr unsigned bits_for_range(std::uint64_t range) noexcept
{
    const unsigned b = ceil_log2(range);
    return b == 0 ? 1u : b;
}

/// ceil(log2(x)) for arbitrary-precision x >= 1.
inline unsigned ceil_log2(const BigInt& x)
{
    if (x <= 1)
        return 0;
    const BigInt y = x - 1;
    return static_cast<unsigned>(boost::multiprecision::msb(y)) + 1;
}

constexpr std::uint64_t low_mask(unsigned bits) noexcept
{
    return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

} // namespace catgraph
