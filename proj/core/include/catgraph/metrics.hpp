#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace catgraph {

enum class Verdict { Path, NoPath, Abort };

std::string_view to_string(Verdict verdict);

/// Per-run accounting shared by every driver.
struct RunMetrics {
    std::optional<Verdict> verdict;
    std::optional<double> estimate;
    /// Primitive register operations plus walk steps.
    std::uint64_t elapsed_steps = 0;
    double wall_time_ms = 0.0;
    std::size_t workspace_peak_bits = 0;
    /// Catalytic bits the run may touch (the span of its registers).
    std::size_t catalytic_bits = 0;
    /// Initial and final tape digests compared; never assumed.
    bool tape_restored = false;
    bool aborted = false;
    std::vector<std::string> normalizations;
};

/// Wall-clock stopwatch for RunMetrics::wall_time_ms.
class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace catgraph
