#include "catgraph/rng.hpp"

#include "catgraph/bits.hpp"

#include <cstdlib>
#include <stdexcept>

namespace catgraph {

Rng::Rng(std::uint64_t seed, Stream stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    engine_.seed(seq);
}

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi)
{
    if (lo > hi)
        throw std::invalid_argument("Rng::uniform: empty range");
    const std::uint64_t span = hi - lo;
    if (span == ~std::uint64_t{0})
        return next();
    const std::uint64_t range = span + 1;
    // 2^64 mod range; values below it form the biased partial block.
    const std::uint64_t threshold = (0 - range) % range;
    std::uint64_t x;
    do {
        x = next();
    } while (x < threshold);
    return lo + x % range;
}

std::uint64_t Rng::bits(unsigned count)
{
    return count == 0 ? 0 : next() & low_mask(count);
}

double Rng::unit()
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::optional<std::uint64_t> seed_from_environment()
{
    const char* raw = std::getenv("CATGRAPH_SEED");
    if (!raw || !*raw)
        return std::nullopt;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0')
        return std::nullopt;
    return static_cast<std::uint64_t>(v);
}

} // namespace catgraph
