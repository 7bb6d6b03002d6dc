#pragma once

#include "catgraph/bits.hpp"
#include "catgraph/tape.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace catgraph {

class RegisterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an arithmetic operation meets a register whose value is not
/// below q*d, i.e. whose residue part is undefined.
class InvalidRegister : public RegisterError {
public:
    using RegisterError::RegisterError;
};

/// An l-bit value held in workspace, stored as little-endian 64-bit limbs.
/// Used for shifts and for reading wide registers limb by limb.
using WideValue = std::vector<std::uint64_t>;

/// A run of `count` equal-width registers packed end to end on a catalytic
/// tape starting at bit `base`. Register k occupies bits
/// [base + k*width, base + (k+1)*width), little-endian.
///
/// Each register is read as an element of Z/(q*d) where d = floor(2^width / q).
/// A register is valid when its value v < q*d; a valid value decomposes as
/// v = a*q + b, and modular arithmetic touches only b. Validity is therefore
/// preserved by every modular operation.
///
/// Moduli below 2^64 are supported at any width. The power-of-two modulus
/// q = 2^width (every register valid, d = 1) is supported at any width via
/// RegisterFile::full_width.
///
/// All arithmetic streams over the register one 64-bit limb at a time and
/// keeps only a carry and a residue, so the workspace it needs is
/// O(log q) bits regardless of the width.
///
/// The file is a non-owning view; the tape must outlive it.
class RegisterFile {
public:
    RegisterFile(CatalyticTape& tape, std::size_t base, std::size_t count, unsigned width,
                 std::uint64_t modulus);

    /// Registers with modulus 2^width.
    static RegisterFile full_width(CatalyticTape& tape, std::size_t base, std::size_t count,
                                   unsigned width);

    std::size_t base() const noexcept { return base_; }
    std::size_t count() const noexcept { return count_; }
    unsigned width() const noexcept { return width_; }
    std::size_t span_bits() const noexcept { return count_ * width_; }
    std::size_t end_bit() const noexcept { return base_ + span_bits(); }
    std::size_t offset_of(std::size_t idx) const noexcept { return base_ + idx * width_; }

    bool is_full_width() const noexcept { return full_width_; }
    /// q; only meaningful when !is_full_width() or width < 64.
    std::uint64_t modulus() const;
    BigInt modulus_big() const;
    /// d = floor(2^width / q).
    BigInt multiplier() const;
    /// 2^width mod q, the number of invalid values.
    std::uint64_t invalid_slack() const noexcept { return slack_; }

    bool is_valid(std::size_t idx) const;
    bool all_valid() const;

    /// b in value = a*q + b. Requires a valid register and a modulus below 2^64.
    std::uint64_t residue(std::size_t idx) const;

    /// b <- (b + amount) mod q, a fixed. Requires validity and amount < q.
    void add_mod(std::size_t idx, std::uint64_t amount);
    void sub_mod(std::size_t idx, std::uint64_t amount);

    /// Edge push (sign +1) or reverse edge push (sign -1): dst's residue moves
    /// by src's residue. src is unchanged.
    void add_reg(std::size_t dst, std::size_t src, int sign);

    /// value <- (value + beta) mod 2^width on one register / all registers.
    /// beta has ceil(width/64) limbs (missing limbs are zero).
    void shift(std::size_t idx, std::span<const std::uint64_t> beta);
    void unshift(std::size_t idx, std::span<const std::uint64_t> beta);
    void shift_all(std::span<const std::uint64_t> beta);
    void unshift_all(std::span<const std::uint64_t> beta);
    void shift_all(std::uint64_t beta) { shift_all(std::span<const std::uint64_t>(&beta, 1)); }
    void unshift_all(std::uint64_t beta) { unshift_all(std::span<const std::uint64_t>(&beta, 1)); }

    /// Raw access for registers no wider than 64 bits.
    std::uint64_t load(std::size_t idx) const;
    void store(std::size_t idx, std::uint64_t value);
    /// value <- (value +/- 1) mod 2^width, any width.
    void increment(std::size_t idx);
    void decrement(std::size_t idx);

    /// Limb-wise access for wide registers.
    std::size_t limb_count() const noexcept { return limbs_; }
    std::uint64_t limb(std::size_t idx, std::size_t k) const;
    void set_limb(std::size_t idx, std::size_t k, std::uint64_t value);
    WideValue value(std::size_t idx) const;

    /// Number of primitive register operations performed through this file.
    std::uint64_t operations() const noexcept { return ops_; }

    CatalyticTape& tape() const noexcept { return *tape_; }

private:
    RegisterFile(CatalyticTape& tape, std::size_t base, std::size_t count, unsigned width);

    void check_index(std::size_t idx) const;
    unsigned limb_bits(std::size_t k) const noexcept;
    void require_valid(std::size_t idx) const;
    std::uint64_t residue_unchecked(std::size_t idx) const;
    void add_small(std::size_t idx, std::uint64_t amount, bool subtract);
    void add_wide(std::size_t idx, std::span<const std::uint64_t> other, bool subtract);
    void add_register_raw(std::size_t dst, std::size_t src, bool subtract);

    CatalyticTape* tape_;
    std::size_t base_;
    std::size_t count_;
    unsigned width_;
    std::size_t limbs_;
    bool full_width_ = false;
    std::uint64_t q_ = 0;
    std::uint64_t slack_ = 0;
    mutable std::uint64_t ops_ = 0;
};

/// Uniform l-bit value, limb by limb.
template <class Generator>
WideValue random_wide(Generator& rng, unsigned width)
{
    WideValue v((width + 63) / 64, 0);
    for (std::size_t k = 0; k < v.size(); ++k) {
        const unsigned bits = (k + 1) * 64 <= width ? 64u : width - static_cast<unsigned>(k * 64);
        v[k] = rng.bits(bits);
    }
    return v;
}

} // namespace catgraph
