#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace catgraph {

/// SHA-256 of a tape's bit contents (and its length).
struct Digest {
    std::array<std::uint8_t, 32> bytes{};

    friend bool operator==(const Digest&, const Digest&) = default;
    std::string hex() const;
};

enum class TapeProfile { Zeros, Ones, Random };

std::string_view to_string(TapeProfile profile);
TapeProfile parse_tape_profile(std::string_view name);

/// The catalytic tape: a fixed-length bit array whose initial contents are
/// arbitrary and must be bit-exactly restored by every catalytic algorithm.
///
/// Bits are stored little-endian in 64-bit words: bit i lives in word i/64 at
/// position i%64. Multi-bit reads and writes are little-endian as well, so a
/// value written at offset o with width w occupies bits o..o+w-1 with its
/// least significant bit at o.
class CatalyticTape {
public:
    /// Full copy of the tape contents, for debugging and out-of-band restore.
    struct Snapshot {
        std::size_t size_bits = 0;
        std::vector<std::uint64_t> words;
        friend bool operator==(const Snapshot&, const Snapshot&) = default;
    };

    explicit CatalyticTape(std::size_t size_bits);

    /// Tape of the given length filled according to a profile. The seed is
    /// only consulted for TapeProfile::Random.
    static CatalyticTape make(std::size_t size_bits, TapeProfile profile, std::uint64_t seed = 0);

    std::size_t size_bits() const noexcept { return size_bits_; }

    bool bit(std::size_t index) const;
    void set_bit(std::size_t index, bool value);

    /// Reads `count` (<= 64) bits starting at `offset`.
    std::uint64_t read(std::size_t offset, unsigned count) const;
    /// Writes the low `count` (<= 64) bits of `value` starting at `offset`.
    void write(std::size_t offset, unsigned count, std::uint64_t value);

    Digest digest() const;
    Snapshot snapshot() const;
    void restore(const Snapshot& snapshot);

    /// Debug dump: one line of 16 hex digits per 64-bit word, word 0 first,
    /// most significant nibble first within a line.
    void dump_hex(std::ostream& out) const;

private:
    void check_range(std::size_t offset, unsigned count) const;

    std::size_t size_bits_;
    std::vector<std::uint64_t> words_;
};

class WorkspaceBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Meters the ordinary (non-catalytic) workspace an algorithm holds.
///
/// Algorithms charge one entry per named scalar variable, sized as
/// ceil(log2(range)) bits, for as long as the variable is live. The meter only
/// accounts; it never allocates.
class WorkspaceMeter {
public:
    enum class BudgetPolicy { Record, Throw };

    WorkspaceMeter() = default;
    explicit WorkspaceMeter(std::size_t budget_bits, BudgetPolicy policy = BudgetPolicy::Record)
        : budget_(budget_bits), policy_(policy)
    {
    }

    void charge(std::size_t bits);
    void release(std::size_t bits);

    std::size_t bits_in_use() const noexcept { return in_use_; }
    std::size_t peak_bits() const noexcept { return peak_; }
    std::optional<std::size_t> budget() const noexcept { return budget_; }
    std::size_t violations() const noexcept { return violations_; }

private:
    std::size_t in_use_ = 0;
    std::size_t peak_ = 0;
    std::optional<std::size_t> budget_;
    BudgetPolicy policy_ = BudgetPolicy::Record;
    std::size_t violations_ = 0;
};

/// RAII charge for one workspace variable. A null meter is accepted so that
/// unmetered callers can share code paths.
class ScopedCharge {
public:
    ScopedCharge(WorkspaceMeter* meter, std::size_t bits) : meter_(meter), bits_(bits)
    {
        if (meter_)
            meter_->charge(bits_);
    }
    ~ScopedCharge()
    {
        if (meter_)
            meter_->release(bits_);
    }
    ScopedCharge(const ScopedCharge&) = delete;
    ScopedCharge& operator=(const ScopedCharge&) = delete;

private:
    WorkspaceMeter* meter_;
    std::size_t bits_;
};

} // namespace catgraph
