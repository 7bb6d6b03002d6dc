#pragma once

#include <cmath>
#include <cstdint>

namespace catgraph {

/// Regression-pinned ratio between a driver's metered peak workspace and
/// log2(n + m + T + ceil(1/eps) + 2), measured over the acceptance matrix.
/// A run above it is a regression.
inline constexpr double kWorkspaceConstant = 32.0;

/// log2(n + m + T + inv_eps + 2), where inv_eps is ceil(1/eps) (0 when the
/// driver has no accuracy parameter).
inline double workspace_scale(std::uint64_t n, std::uint64_t m, std::uint64_t T, std::uint64_t inv_eps)
{
    return std::log2(static_cast<double>(n + m + T + inv_eps + 2));
}

inline bool within_workspace_bound(std::size_t peak_bits, std::uint64_t n, std::uint64_t m, std::uint64_t T,
                                   std::uint64_t inv_eps)
{
    return static_cast<double>(peak_bits) <= kWorkspaceConstant * workspace_scale(n, m, T, inv_eps);
}

} // namespace catgraph
