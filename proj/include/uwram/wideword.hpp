#pragma once

// Wide-word value type of the ultra-wide word RAM and its register-level
// primitives.  A WideWord is one (k*w)-bit integer split into k blocks of w
// bits; block j holds bits [j*w, (j+1)*w).  ALU operations ignore block
// boundaries, only compress/spread and the memory operations look at them.
//
// Shift direction names follow significance, not drawing direction:
//
//   to_high(a, i)  == a * 2^i mod 2^(kw)   (drawn as `>>` when block 0 is on the right)
//   to_low(a, i)   == floor(a / 2^i)       (drawn as `<<` when block 0 is on the right)

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uwram/error.hpp"

namespace uwram {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct WideConfig {
    unsigned w = 64;   ///< block width in bits: power of two in [8, 64]
    std::size_t k = 64; ///< number of blocks in [1, 1024]

    constexpr std::size_t bits() const noexcept { return static_cast<std::size_t>(w) * k; }
    constexpr u64 block_mask() const noexcept { return w >= 64 ? ~u64{0} : (u64{1} << w) - 1; }

    void validate() const {
        if (w < 8 || w > 64 || !std::has_single_bit(w))
            throw config_error("block width w=" + std::to_string(w) +
                               " must be a power of two in [8, 64]");
        if (k < 1 || k > 1024)
            throw config_error("block count k=" + std::to_string(k) + " must be in [1, 1024]");
    }

    friend constexpr bool operator==(const WideConfig&, const WideConfig&) = default;
};

/// How field/compress/spread operations react to inputs outside their contract.
enum class strictness { strict, permissive };

class WideWord {
public:
    WideWord() : WideWord(WideConfig{}) {}

    explicit WideWord(const WideConfig& cfg) : cfg_(cfg), limbs_(cfg.k, 0) { cfg.validate(); }

    static WideWord zero(const WideConfig& cfg) { return WideWord(cfg); }

    static WideWord from_limbs(const WideConfig& cfg, std::span<const u64> limbs) {
        WideWord r(cfg);
        if (limbs.size() > cfg.k)
            throw config_error("from_limbs: " + std::to_string(limbs.size()) +
                               " limbs exceed k=" + std::to_string(cfg.k));
        for (std::size_t j = 0; j < limbs.size(); ++j) {
            if (limbs[j] & ~cfg.block_mask())
                throw config_error("from_limbs: limb " + std::to_string(j) + " value " +
                                   std::to_string(limbs[j]) + " does not fit in w=" +
                                   std::to_string(cfg.w) + " bits");
            r.limbs_[j] = limbs[j];
        }
        return r;
    }

    static WideWord from_limbs(const WideConfig& cfg, std::initializer_list<u64> limbs) {
        return from_limbs(cfg, std::span<const u64>(limbs.begin(), limbs.size()));
    }

    /// Same value in every block.
    static WideWord broadcast(const WideConfig& cfg, u64 value) {
        WideWord r(cfg);
        if (value & ~cfg.block_mask())
            throw config_error("broadcast: value does not fit in one block");
        std::fill(r.limbs_.begin(), r.limbs_.end(), value);
        return r;
    }

    const WideConfig& config() const noexcept { return cfg_; }
    std::size_t blocks() const noexcept { return limbs_.size(); }
    std::size_t bits() const noexcept { return cfg_.bits(); }
    std::span<const u64> limbs() const noexcept { return limbs_; }
    u64 limb(std::size_t j) const { return limbs_.at(j); }

    void set_limb(std::size_t j, u64 v) {
        if (v & ~cfg_.block_mask()) throw config_error("set_limb: value exceeds block width");
        limbs_.at(j) = v;
    }

    bool bit(std::size_t i) const {
        return (limbs_[i / cfg_.w] >> (i % cfg_.w)) & 1u;
    }

    void set_bit(std::size_t i, bool v = true) {
        u64& l = limbs_.at(i / cfg_.w);
        u64 m = u64{1} << (i % cfg_.w);
        l = v ? (l | m) : (l & ~m);
    }

    /// Reads len <= 64 bits starting at bit pos; bits past the end read as zero.
    u64 get_bits(std::size_t pos, unsigned len) const {
        u64 out = 0;
        unsigned got = 0;
        while (got < len && pos < bits()) {
            std::size_t li = pos / cfg_.w;
            unsigned off = static_cast<unsigned>(pos % cfg_.w);
            unsigned take = std::min(len - got, cfg_.w - off);
            u64 chunk = (limbs_[li] >> off) & low_mask(take);
            out |= chunk << got;
            got += take;
            pos += take;
        }
        return out;
    }

    /// Writes the low len bits of v at bit pos; bits past the end are dropped.
    void set_bits(std::size_t pos, unsigned len, u64 v) {
        unsigned done = 0;
        while (done < len && pos < bits()) {
            std::size_t li = pos / cfg_.w;
            unsigned off = static_cast<unsigned>(pos % cfg_.w);
            unsigned take = std::min(len - done, cfg_.w - off);
            u64 m = low_mask(take) << off;
            limbs_[li] = (limbs_[li] & ~m) | (((v >> done) & low_mask(take)) << off);
            done += take;
            pos += take;
        }
    }

    bool is_zero() const noexcept {
        return std::all_of(limbs_.begin(), limbs_.end(), [](u64 x) { return x == 0; });
    }

    std::size_t popcount() const noexcept {
        std::size_t c = 0;
        for (u64 x : limbs_) c += static_cast<std::size_t>(std::popcount(x));
        return c;
    }

    friend bool operator==(const WideWord& a, const WideWord& b) {
        return a.cfg_ == b.cfg_ && a.limbs_ == b.limbs_;
    }

    static constexpr u64 low_mask(unsigned n) noexcept {
        return n >= 64 ? ~u64{0} : (u64{1} << n) - 1;
    }

private:
    WideConfig cfg_;
    std::vector<u64> limbs_;

    friend WideWord bitwise_and(const WideWord&, const WideWord&);
    friend WideWord bitwise_or(const WideWord&, const WideWord&);
    friend WideWord bitwise_xor(const WideWord&, const WideWord&);
    friend WideWord bitwise_not(const WideWord&);
    friend WideWord add(const WideWord&, const WideWord&);
    friend WideWord sub(const WideWord&, const WideWord&);
    friend WideWord to_high(const WideWord&, std::size_t);
    friend WideWord to_low(const WideWord&, std::size_t);
};

namespace detail {

inline void require_same(const WideWord& a, const WideWord& b, const char* op) {
    if (!(a.config() == b.config()))
        throw config_error(std::string(op) + ": operands have different wide configs (w=" +
                           std::to_string(a.config().w) + ",k=" + std::to_string(a.config().k) +
                           " vs w=" + std::to_string(b.config().w) +
                           ",k=" + std::to_string(b.config().k) + ")");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Bitwise, arithmetic, shifts.

inline WideWord bitwise_and(const WideWord& a, const WideWord& b) {
    detail::require_same(a, b, "AND");
    WideWord r = a;
    for (std::size_t j = 0; j < r.limbs_.size(); ++j) r.limbs_[j] &= b.limbs_[j];
    return r;
}

inline WideWord bitwise_or(const WideWord& a, const WideWord& b) {
    detail::require_same(a, b, "OR");
    WideWord r = a;
    for (std::size_t j = 0; j < r.limbs_.size(); ++j) r.limbs_[j] |= b.limbs_[j];
    return r;
}

inline WideWord bitwise_xor(const WideWord& a, const WideWord& b) {
    detail::require_same(a, b, "XOR");
    WideWord r = a;
    for (std::size_t j = 0; j < r.limbs_.size(); ++j) r.limbs_[j] ^= b.limbs_[j];
    return r;
}

inline WideWord bitwise_not(const WideWord& a) {
    WideWord r = a;
    const u64 m = a.config().block_mask();
    for (u64& l : r.limbs_) l = ~l & m;
    return r;
}

/// a + b mod 2^(kw); carries cross block boundaries.
inline WideWord add(const WideWord& a, const WideWord& b) {
    detail::require_same(a, b, "ADD");
    WideWord r = a;
    const unsigned w = a.config().w;
    const u64 m = a.config().block_mask();
    u128 carry = 0;
    for (std::size_t j = 0; j < r.limbs_.size(); ++j) {
        u128 s = u128{a.limbs_[j]} + b.limbs_[j] + carry;
        r.limbs_[j] = static_cast<u64>(s) & m;
        carry = s >> w;
    }
    return r;
}

/// a - b mod 2^(kw); borrows cross block boundaries.
inline WideWord sub(const WideWord& a, const WideWord& b) {
    detail::require_same(a, b, "SUB");
    WideWord r = a;
    const unsigned w = a.config().w;
    const u64 m = a.config().block_mask();
    u64 borrow = 0;
    for (std::size_t j = 0; j < r.limbs_.size(); ++j) {
        u128 d = (u128{1} << w) + a.limbs_[j] - b.limbs_[j] - borrow;
        r.limbs_[j] = static_cast<u64>(d) & m;
        borrow = (d >> w) ? 0 : 1;
    }
    return r;
}

/// Multiply by 2^i modulo 2^(kw).
inline WideWord to_high(const WideWord& a, std::size_t i) {
    const WideConfig& c = a.config();
    if (i > c.bits())
        throw config_error("shift of " + std::to_string(i) + " bits exceeds word width " +
                           std::to_string(c.bits()));
    WideWord r(c);
    const std::size_t q = i / c.w;
    const unsigned s = static_cast<unsigned>(i % c.w);
    const u64 m = c.block_mask();
    for (std::size_t j = c.k; j-- > q;) {
        u64 v = (a.limbs_[j - q] << s) & m;
        if (s != 0 && j > q) v |= a.limbs_[j - q - 1] >> (c.w - s);
        r.limbs_[j] = v;
    }
    return r;
}

/// Floor division by 2^i.
inline WideWord to_low(const WideWord& a, std::size_t i) {
    const WideConfig& c = a.config();
    if (i > c.bits())
        throw config_error("shift of " + std::to_string(i) + " bits exceeds word width " +
                           std::to_string(c.bits()));
    WideWord r(c);
    const std::size_t q = i / c.w;
    const unsigned s = static_cast<unsigned>(i % c.w);
    const u64 m = c.block_mask();
    for (std::size_t j = 0; j + q < c.k; ++j) {
        u64 v = a.limbs_[j + q] >> s;
        if (s != 0 && j + q + 1 < c.k) v |= (a.limbs_[j + q + 1] << (c.w - s)) & m;
        r.limbs_[j] = v;
    }
    return r;
}

inline WideWord operator&(const WideWord& a, const WideWord& b) { return bitwise_and(a, b); }
inline WideWord operator|(const WideWord& a, const WideWord& b) { return bitwise_or(a, b); }
inline WideWord operator^(const WideWord& a, const WideWord& b) { return bitwise_xor(a, b); }
inline WideWord operator~(const WideWord& a) { return bitwise_not(a); }
inline WideWord operator+(const WideWord& a, const WideWord& b) { return add(a, b); }
inline WideWord operator-(const WideWord& a, const WideWord& b) { return sub(a, b); }

// ---------------------------------------------------------------------------
// compress / spread.

/// Gathers bit 0 of every block into the low k bits of the result.
inline WideWord compress(const WideWord& a, strictness mode = strictness::strict) {
    const WideConfig& c = a.config();
    WideWord r(c);
    for (std::size_t j = 0; j < c.k; ++j) {
        u64 l = a.limb(j);
        if (mode == strictness::strict && (l & ~u64{1}))
            throw precondition_error("compress: block " + std::to_string(j) +
                                     " has bits set above bit 0");
        if (l & 1u) r.set_bit(j);
    }
    return r;
}

/// Inverse of compress: bit j of the input goes to bit 0 of block j.
inline WideWord spread(const WideWord& a, strictness mode = strictness::strict) {
    const WideConfig& c = a.config();
    if (mode == strictness::strict) {
        for (std::size_t j = 1; j < c.k; ++j)
            if (a.limb(j) != 0)
                throw precondition_error("spread: set bits outside block 0 (block " +
                                         std::to_string(j) + ")");
        if (c.k < c.w && (a.limb(0) >> c.k) != 0)
            throw precondition_error("spread: block 0 has bits at positions >= k");
    }
    WideWord r(c);
    const std::size_t n = std::min<std::size_t>(c.k, c.bits());
    for (std::size_t j = 0; j < n; ++j)
        if (a.bit(j)) r.set_limb(j, 1);
    return r;
}

// ---------------------------------------------------------------------------
// Field-partitioned view.

/// f-bit fields tiling the word from bit 0; bit f-1 of each field is its test bit.
struct FieldLayout {
    unsigned f = 2;
    std::size_t count = 0;

    static FieldLayout make(const WideConfig& cfg, unsigned f) {
        if (f < 2 || f > cfg.bits() || f > 64)
            throw config_error("field width f=" + std::to_string(f) + " out of range");
        return FieldLayout{f, cfg.bits() / f};
    }

    unsigned test_bit_position() const noexcept { return f - 1; }
    unsigned payload_bits() const noexcept { return f - 1; }

    friend bool operator==(const FieldLayout&, const FieldLayout&) = default;
};

inline u64 field_get(const WideWord& a, const FieldLayout& l, std::size_t i) {
    return a.get_bits(i * l.f, l.f);
}

inline void field_set(WideWord& a, const FieldLayout& l, std::size_t i, u64 v) {
    a.set_bits(i * l.f, l.f, v);
}

/// Packs values (each < 2^f) into consecutive fields starting at field 0.
inline WideWord pack_fields(const WideConfig& cfg, const FieldLayout& l, std::span<const u64> values) {
    if (values.size() > l.count) throw config_error("pack_fields: too many values");
    WideWord r(cfg);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (l.f < 64 && (values[i] >> l.f) != 0) throw config_error("pack_fields: value wider than field");
        field_set(r, l, i, values[i]);
    }
    return r;
}

inline std::vector<u64> unpack_fields(const WideWord& a, const FieldLayout& l) {
    std::vector<u64> out(l.count);
    for (std::size_t i = 0; i < l.count; ++i) out[i] = field_get(a, l, i);
    return out;
}

/// Same value in every field.
inline WideWord field_broadcast(const WideConfig& cfg, const FieldLayout& l, u64 v) {
    WideWord r(cfg);
    for (std::size_t i = 0; i < l.count; ++i) field_set(r, l, i, v);
    return r;
}

/// Test bit (f-1) of every field.
inline WideWord field_test_bits(const WideConfig& cfg, const FieldLayout& l) {
    return field_broadcast(cfg, l, u64{1} << (l.f - 1));
}

/// Bits 0..f-2 of every field.
inline WideWord field_payload_bits(const WideConfig& cfg, const FieldLayout& l) {
    return field_broadcast(cfg, l, WideWord::low_mask(l.f - 1));
}

/// Payload sign bit (f-2) of every field, for two's-complement payloads.
inline WideWord field_sign_bits(const WideConfig& cfg, const FieldLayout& l) {
    return field_broadcast(cfg, l, u64{1} << (l.f - 2));
}

/// Every bit covered by a field (payload and test bits).
inline WideWord field_all_bits(const WideConfig& cfg, const FieldLayout& l) {
    return field_broadcast(cfg, l, WideWord::low_mask(l.f));
}

namespace detail {

inline void check_test_bits_clear(const WideWord& a, const WideWord& tests, const char* op) {
    if (!bitwise_and(a, tests).is_zero())
        throw precondition_error(std::string(op) + ": input has a field test bit set");
}

inline void check_outside_fields_clear(const WideWord& a, const WideWord& all, const char* op) {
    if (!bitwise_and(a, bitwise_not(all)).is_zero())
        throw precondition_error(std::string(op) + ": input has bits beyond the last field");
}

} // namespace detail

/// Mask with every payload bit of field i set iff F_i >= G_i (unsigned payloads).
inline WideWord field_compare_ge(const WideWord& F, const WideWord& G, const FieldLayout& l,
                                 strictness mode = strictness::strict) {
    detail::require_same(F, G, "field_compare_ge");
    const WideConfig& c = F.config();
    const WideWord T = field_test_bits(c, l);
    const WideWord P = field_payload_bits(c, l);
    WideWord f = F, g = G;
    if (mode == strictness::strict) {
        const WideWord all = field_all_bits(c, l);
        detail::check_test_bits_clear(F, T, "field_compare_ge");
        detail::check_test_bits_clear(G, T, "field_compare_ge");
        detail::check_outside_fields_clear(F, all, "field_compare_ge");
        detail::check_outside_fields_clear(G, all, "field_compare_ge");
    } else {
        f = bitwise_and(f, P);
        g = bitwise_and(g, P);
    }
    WideWord h = sub(bitwise_or(f, T), g);
    h = bitwise_and(h, T);
    return sub(h, to_low(h, l.f - 1));
}

/// Per-field (F_i - G_i) mod 2^(f-1); test bits of the result are clear.
inline WideWord field_sub(const WideWord& F, const WideWord& G, const FieldLayout& l,
                          strictness mode = strictness::strict) {
    detail::require_same(F, G, "field_sub");
    const WideConfig& c = F.config();
    const WideWord T = field_test_bits(c, l);
    const WideWord P = field_payload_bits(c, l);
    WideWord f = F, g = G;
    if (mode == strictness::strict) {
        detail::check_test_bits_clear(F, T, "field_sub");
        detail::check_test_bits_clear(G, T, "field_sub");
    } else {
        f = bitwise_and(f, P);
        g = bitwise_and(g, P);
    }
    return bitwise_and(sub(bitwise_or(f, T), g), P);
}

/// Per-field maximum.  With is_signed, payloads are (f-1)-bit two's complement.
inline WideWord field_max(const WideWord& F, const WideWord& G, const FieldLayout& l,
                          bool is_signed, strictness mode = strictness::strict) {
    detail::require_same(F, G, "field_max");
    const WideConfig& c = F.config();
    const WideWord P = field_payload_bits(c, l);
    WideWord f = F, g = G;
    if (mode == strictness::permissive) {
        f = bitwise_and(f, P);
        g = bitwise_and(g, P);
    }
    if (is_signed) {
        // Flipping the sign bit maps two's complement order onto unsigned order.
        const WideWord S = field_sign_bits(c, l);
        f = bitwise_xor(f, S);
        g = bitwise_xor(g, S);
        WideWord m = field_compare_ge(f, g, l, mode);
        WideWord r = bitwise_or(bitwise_and(f, m), bitwise_and(g, bitwise_and(bitwise_not(m), P)));
        return bitwise_xor(r, S);
    }
    WideWord m = field_compare_ge(f, g, l, mode);
    return bitwise_or(bitwise_and(f, m), bitwise_and(g, bitwise_and(bitwise_not(m), P)));
}

/// Payload-bit mask of fields where F_i == G_i.
inline WideWord field_equal(const WideWord& F, const WideWord& G, const FieldLayout& l,
                            strictness mode = strictness::strict) {
    return bitwise_and(field_compare_ge(F, G, l, mode), field_compare_ge(G, F, l, mode));
}

} // namespace uwram
