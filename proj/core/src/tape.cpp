#include "catgraph/tape.hpp"

#include "catgraph/bits.hpp"
#include "catgraph/rng.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

namespace catgraph {

std::string Digest::hex() const
{
    std::ostringstream out;
    out << std::hex << std::setfill('0');
    for (auto b : bytes)
        out << std::setw(2) << static_cast<unsigned>(b);
    return out.str();
}

std::string_view to_string(TapeProfile profile)
{
    switch (profile) {
    case TapeProfile::Zeros:
        return "zeros";
    case TapeProfile::Ones:
        return "ones";
    case TapeProfile::Random:
        return "random";
    }
    return "random";
}

TapeProfile parse_tape_profile(std::string_view name)
{
    if (name == "zeros")
        return TapeProfile::Zeros;
    if (name == "ones")
        return TapeProfile::Ones;
    if (name == "random")
        return TapeProfile::Random;
    throw std::invalid_argument("unknown tape profile: " + std::string(name));
}

CatalyticTape::CatalyticTape(std::size_t size_bits)
    : size_bits_(size_bits), words_((size_bits + 63) / 64, 0)
{
}

CatalyticTape CatalyticTape::make(std::size_t size_bits, TapeProfile profile, std::uint64_t seed)
{
    CatalyticTape tape(size_bits);
    switch (profile) {
    case TapeProfile::Zeros:
        break;
    case TapeProfile::Ones:
        for (auto& w : tape.words_)
            w = ~std::uint64_t{0};
        break;
    case TapeProfile::Random: {
        Rng rng(seed, Rng::Stream::Tape);
        for (auto& w : tape.words_)
            w = rng.next();
        break;
    }
    }
    // Bits past the end stay zero so that digests depend only on real bits.
    if (size_bits % 64 != 0 && !tape.words_.empty())
        tape.words_.back() &= low_mask(static_cast<unsigned>(size_bits % 64));
    return tape;
}

void CatalyticTape::check_range(std::size_t offset, unsigned count) const
{
    if (count > 64)
        throw std::invalid_argument("tape access wider than 64 bits");
    if (offset > size_bits_ || count > size_bits_ - offset)
        throw std::out_of_range("tape access out of range");
}

bool CatalyticTape::bit(std::size_t index) const
{
    if (index >= size_bits_)
        throw std::out_of_range("tape bit index out of range");
    return (words_[index / 64] >> (index % 64)) & 1u;
}

void CatalyticTape::set_bit(std::size_t index, bool value)
{
    if (index >= size_bits_)
        throw std::out_of_range("tape bit index out of range");
    const std::uint64_t m = std::uint64_t{1} << (index % 64);
    if (value)
        words_[index / 64] |= m;
    else
        words_[index / 64] &= ~m;
}

std::uint64_t CatalyticTape::read(std::size_t offset, unsigned count) const
{
    check_range(offset, count);
    if (count == 0)
        return 0;
    const std::size_t word = offset / 64;
    const unsigned shift = offset % 64;
    std::uint64_t value = words_[word] >> shift;
    if (shift != 0 && shift + count > 64)
        value |= words_[word + 1] << (64 - shift);
    return value & low_mask(count);
}

void CatalyticTape::write(std::size_t offset, unsigned count, std::uint64_t value)
{
    check_range(offset, count);
    if (count == 0)
        return;
    const std::uint64_t mask = low_mask(count);
    value &= mask;
    const std::size_t word = offset / 64;
    const unsigned shift = offset % 64;
    words_[word] = (words_[word] & ~(mask << shift)) | (value << shift);
    if (shift != 0 && shift + count > 64) {
        const unsigned spill = 64 - shift;
        words_[word + 1] = (words_[word + 1] & ~(mask >> spill)) | (value >> spill);
    }
}

Digest CatalyticTape::digest() const
{
    Digest d;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 initialisation failed");
    std::uint8_t header[8];
    for (int i = 0; i < 8; ++i)
        header[i] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(size_bits_) >> (8 * i));
    EVP_DigestUpdate(ctx.get(), header, sizeof header);
    // Serialise words little-endian so the digest is host independent.
    std::uint8_t buf[8];
    for (auto w : words_) {
        for (int i = 0; i < 8; ++i)
            buf[i] = static_cast<std::uint8_t>(w >> (8 * i));
        EVP_DigestUpdate(ctx.get(), buf, sizeof buf);
    }
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx.get(), d.bytes.data(), &len);
    return d;
}

CatalyticTape::Snapshot CatalyticTape::snapshot() const
{
    return Snapshot{size_bits_, words_};
}

void CatalyticTape::restore(const Snapshot& snapshot)
{
    if (snapshot.size_bits != size_bits_)
        throw std::invalid_argument("snapshot length does not match tape");
    words_ = snapshot.words;
}

void CatalyticTape::dump_hex(std::ostream& out) const
{
    const auto flags = out.flags();
    out << std::hex << std::setfill('0');
    for (auto w : words_)
        out << std::setw(16) << w << '\n';
    out.flags(flags);
}

void WorkspaceMeter::charge(std::size_t bits)
{
    in_use_ += bits;
    if (in_use_ > peak_)
        peak_ = in_use_;
    if (budget_ && in_use_ > *budget_) {
        ++violations_;
        if (policy_ == BudgetPolicy::Throw) {
            const std::size_t attempted = in_use_;
            in_use_ -= bits;
            throw WorkspaceBudgetExceeded("workspace budget of " + std::to_string(*budget_) +
                                          " bits exceeded (" + std::to_string(attempted) + " requested)");
        }
    }
}

void WorkspaceMeter::release(std::size_t bits)
{
    if (bits > in_use_)
        throw std::logic_error("workspace release exceeds bits in use");
    in_use_ -= bits;
}

} // namespace catgraph
