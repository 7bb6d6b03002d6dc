#include "catgraph/registers.hpp"

#include <string>

namespace catgraph {

namespace {

__extension__ using u128 = unsigned __int128;

// 2^width mod q, by repeated doubling over 64-bit chunks.
std::uint64_t pow2_mod(unsigned width, std::uint64_t q)
{
    std::uint64_t r = 1 % q;
    unsigned remaining = width;
    while (remaining > 0) {
        const unsigned step = remaining >= 32 ? 32u : remaining;
        r = static_cast<std::uint64_t>((static_cast<u128>(r) << step) % q);
        remaining -= step;
    }
    return r;
}

} // namespace

RegisterFile::RegisterFile(CatalyticTape& tape, std::size_t base, std::size_t count, unsigned width)
    : tape_(&tape), base_(base), count_(count), width_(width), limbs_((width + 63) / 64)
{
    if (width == 0)
        throw std::invalid_argument("register width must be positive");
    if (count != 0 && (base > tape.size_bits() || count > (tape.size_bits() - base) / width))
        throw std::out_of_range("register span [" + std::to_string(base) + ", +" +
                                std::to_string(count) + "x" + std::to_string(width) +
                                ") exceeds tape of " + std::to_string(tape.size_bits()) + " bits");
}

RegisterFile::RegisterFile(CatalyticTape& tape, std::size_t base, std::size_t count, unsigned width,
                           std::uint64_t modulus)
    : RegisterFile(tape, base, count, width)
{
    if (modulus < 2)
        throw std::invalid_argument("modulus must be at least 2");
    if (width < 64 && modulus > (std::uint64_t{1} << width))
        throw std::invalid_argument("modulus " + std::to_string(modulus) + " too large for " +
                                    std::to_string(width) + "-bit registers");
    q_ = modulus;
    slack_ = pow2_mod(width, modulus);
    if (width < 64 && modulus == (std::uint64_t{1} << width))
        full_width_ = true;
}

RegisterFile RegisterFile::full_width(CatalyticTape& tape, std::size_t base, std::size_t count,
                                      unsigned width)
{
    RegisterFile file(tape, base, count, width);
    file.full_width_ = true;
    file.q_ = width < 64 ? (std::uint64_t{1} << width) : 0;
    file.slack_ = 0;
    return file;
}

std::uint64_t RegisterFile::modulus() const
{
    if (full_width_ && width_ >= 64)
        throw RegisterError("modulus 2^" + std::to_string(width_) + " does not fit in 64 bits");
    return q_;
}

BigInt RegisterFile::modulus_big() const
{
    if (full_width_)
        return BigInt(1) << width_;
    return BigInt(q_);
}

BigInt RegisterFile::multiplier() const
{
    return (BigInt(1) << width_) / modulus_big();
}

void RegisterFile::check_index(std::size_t idx) const
{
    if (idx >= count_)
        throw std::out_of_range("register index " + std::to_string(idx) + " out of range (count " +
                                std::to_string(count_) + ")");
}

unsigned RegisterFile::limb_bits(std::size_t k) const noexcept
{
    return (k + 1) * 64 <= width_ ? 64u : width_ - static_cast<unsigned>(k * 64);
}

std::uint64_t RegisterFile::limb(std::size_t idx, std::size_t k) const
{
    return tape_->read(offset_of(idx) + k * 64, limb_bits(k));
}

void RegisterFile::set_limb(std::size_t idx, std::size_t k, std::uint64_t value)
{
    tape_->write(offset_of(idx) + k * 64, limb_bits(k), value);
}

WideValue RegisterFile::value(std::size_t idx) const
{
    check_index(idx);
    WideValue v(limbs_);
    for (std::size_t k = 0; k < limbs_; ++k)
        v[k] = limb(idx, k);
    return v;
}

std::uint64_t RegisterFile::load(std::size_t idx) const
{
    check_index(idx);
    if (width_ > 64)
        throw RegisterError("load() on a register wider than 64 bits");
    return tape_->read(offset_of(idx), width_);
}

void RegisterFile::store(std::size_t idx, std::uint64_t value)
{
    check_index(idx);
    if (width_ > 64)
        throw RegisterError("store() on a register wider than 64 bits");
    tape_->write(offset_of(idx), width_, value);
}

bool RegisterFile::is_valid(std::size_t idx) const
{
    check_index(idx);
    ++ops_;
    if (full_width_ || slack_ == 0)
        return true;
    // v < q*d  <=>  v + (2^width mod q) < 2^width.
    if (width_ <= 64) {
        const u128 sum = static_cast<u128>(tape_->read(offset_of(idx), width_)) + slack_;
        return sum < (static_cast<u128>(1) << width_);
    }
    std::uint64_t carry = slack_;
    for (std::size_t k = 0; k < limbs_; ++k) {
        const unsigned bits = limb_bits(k);
        const u128 sum = static_cast<u128>(limb(idx, k)) + carry;
        carry = static_cast<std::uint64_t>(sum >> bits);
        if (carry == 0)
            return true;
    }
    return carry == 0;
}

bool RegisterFile::all_valid() const
{
    for (std::size_t i = 0; i < count_; ++i)
        if (!is_valid(i))
            return false;
    return true;
}

void RegisterFile::require_valid(std::size_t idx) const
{
    if (!is_valid(idx))
        throw InvalidRegister("register " + std::to_string(idx) + " is not valid for modulus " +
                              std::to_string(q_));
}

std::uint64_t RegisterFile::residue_unchecked(std::size_t idx) const
{
    if (width_ <= 64)
        return tape_->read(offset_of(idx), width_) % q_;
    std::uint64_t rem = 0;
    for (std::size_t k = limbs_; k-- > 0;) {
        const unsigned bits = limb_bits(k);
        rem = static_cast<std::uint64_t>(((static_cast<u128>(rem) << bits) | limb(idx, k)) % q_);
    }
    return rem;
}

std::uint64_t RegisterFile::residue(std::size_t idx) const
{
    check_index(idx);
    if (full_width_ && width_ >= 64)
        throw RegisterError("residue() needs a modulus below 2^64");
    require_valid(idx);
    return residue_unchecked(idx);
}

void RegisterFile::add_small(std::size_t idx, std::uint64_t amount, bool subtract)
{
    if (width_ <= 64) {
        const std::uint64_t v = tape_->read(offset_of(idx), width_);
        tape_->write(offset_of(idx), width_, subtract ? v - amount : v + amount);
        return;
    }
    std::uint64_t carry = amount;
    for (std::size_t k = 0; k < limbs_ && carry != 0; ++k) {
        const unsigned bits = limb_bits(k);
        const std::uint64_t mask = low_mask(bits);
        const std::uint64_t cur = limb(idx, k);
        std::uint64_t next;
        if (subtract) {
            next = (cur - carry) & mask;
            carry = cur < carry ? 1 : 0;
        } else {
            const u128 sum = static_cast<u128>(cur) + carry;
            next = static_cast<std::uint64_t>(sum) & mask;
            carry = static_cast<std::uint64_t>(sum >> bits);
        }
        set_limb(idx, k, next);
    }
}

void RegisterFile::add_wide(std::size_t idx, std::span<const std::uint64_t> other, bool subtract)
{
    std::uint64_t carry = 0;
    for (std::size_t k = 0; k < limbs_; ++k) {
        const unsigned bits = limb_bits(k);
        const std::uint64_t mask = low_mask(bits);
        const std::uint64_t cur = limb(idx, k);
        const std::uint64_t rhs = (k < other.size() ? other[k] : 0) & mask;
        std::uint64_t next;
        if (subtract) {
            const u128 sub = static_cast<u128>(rhs) + carry;
            next = static_cast<std::uint64_t>(static_cast<u128>(cur) - sub) & mask;
            carry = static_cast<u128>(cur) < sub ? 1 : 0;
        } else {
            const u128 sum = static_cast<u128>(cur) + rhs + carry;
            next = static_cast<std::uint64_t>(sum) & mask;
            carry = static_cast<std::uint64_t>(sum >> bits);
        }
        set_limb(idx, k, next);
    }
}

void RegisterFile::add_mod(std::size_t idx, std::uint64_t amount)
{
    check_index(idx);
    ++ops_;
    if (full_width_) {
        if (width_ < 64 && amount >= q_)
            throw std::invalid_argument("add_mod amount must be below the modulus");
        add_small(idx, amount, false);
        return;
    }
    if (amount >= q_)
        throw std::invalid_argument("add_mod amount must be below the modulus");
    require_valid(idx);
    const std::uint64_t b = residue_unchecked(idx);
    const std::uint64_t room = q_ - b;
    if (amount < room)
        add_small(idx, amount, false);
    else
        add_small(idx, q_ - amount, true); // wraps: b + amount - q
}

void RegisterFile::sub_mod(std::size_t idx, std::uint64_t amount)
{
    check_index(idx);
    ++ops_;
    if (full_width_) {
        if (width_ < 64 && amount >= q_)
            throw std::invalid_argument("sub_mod amount must be below the modulus");
        add_small(idx, amount, true);
        return;
    }
    if (amount >= q_)
        throw std::invalid_argument("sub_mod amount must be below the modulus");
    require_valid(idx);
    const std::uint64_t b = residue_unchecked(idx);
    if (amount <= b)
        add_small(idx, amount, true);
    else
        add_small(idx, q_ - amount, false); // wraps: b - amount + q
}

void RegisterFile::add_register_raw(std::size_t dst, std::size_t src, bool subtract)
{
    if (width_ <= 64) {
        const std::uint64_t a = tape_->read(offset_of(src), width_);
        const std::uint64_t v = tape_->read(offset_of(dst), width_);
        tape_->write(offset_of(dst), width_, subtract ? v - a : v + a);
        return;
    }
    std::uint64_t carry = 0;
    for (std::size_t k = 0; k < limbs_; ++k) {
        const unsigned bits = limb_bits(k);
        const std::uint64_t mask = low_mask(bits);
        const std::uint64_t cur = limb(dst, k);
        const std::uint64_t rhs = limb(src, k);
        std::uint64_t next;
        if (subtract) {
            const u128 sub = static_cast<u128>(rhs) + carry;
            next = static_cast<std::uint64_t>(static_cast<u128>(cur) - sub) & mask;
            carry = static_cast<u128>(cur) < sub ? 1 : 0;
        } else {
            const u128 sum = static_cast<u128>(cur) + rhs + carry;
            next = static_cast<std::uint64_t>(sum) & mask;
            carry = static_cast<std::uint64_t>(sum >> bits);
        }
        set_limb(dst, k, next);
    }
}

void RegisterFile::add_reg(std::size_t dst, std::size_t src, int sign)
{
    check_index(dst);
    check_index(src);
    if (dst == src)
        throw std::invalid_argument("add_reg needs distinct registers");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("add_reg sign must be +1 or -1");
    ++ops_;
    if (full_width_) {
        add_register_raw(dst, src, sign < 0);
        return;
    }
    require_valid(src);
    require_valid(dst);
    const std::uint64_t a = residue_unchecked(src);
    const std::uint64_t b = residue_unchecked(dst);
    if (sign > 0) {
        if (a < q_ - b)
            add_small(dst, a, false);
        else
            add_small(dst, q_ - a, true);
    } else {
        if (a <= b)
            add_small(dst, a, true);
        else
            add_small(dst, q_ - a, false);
    }
}

void RegisterFile::shift(std::size_t idx, std::span<const std::uint64_t> beta)
{
    check_index(idx);
    ++ops_;
    if (width_ <= 64) {
        add_small(idx, beta.empty() ? 0 : beta[0] & low_mask(width_), false);
        return;
    }
    add_wide(idx, beta, false);
}

void RegisterFile::unshift(std::size_t idx, std::span<const std::uint64_t> beta)
{
    check_index(idx);
    ++ops_;
    if (width_ <= 64) {
        add_small(idx, beta.empty() ? 0 : beta[0] & low_mask(width_), true);
        return;
    }
    add_wide(idx, beta, true);
}

void RegisterFile::shift_all(std::span<const std::uint64_t> beta)
{
    for (std::size_t i = 0; i < count_; ++i)
        shift(i, beta);
}

void RegisterFile::unshift_all(std::span<const std::uint64_t> beta)
{
    for (std::size_t i = 0; i < count_; ++i)
        unshift(i, beta);
}

void RegisterFile::increment(std::size_t idx)
{
    check_index(idx);
    ++ops_;
    add_small(idx, 1, false);
}

void RegisterFile::decrement(std::size_t idx)
{
    check_index(idx);
    ++ops_;
    add_small(idx, 1, true);
}

} // namespace catgraph
