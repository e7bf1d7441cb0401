#pragma once

// Static rank over a packed bit row held in machine memory.
//
// Bit q of the row is bit q%w of cell q/w.  Construction counts the ones of
// every cell (a SWAR popcount over whole wide words), then turns the count
// array A into prefix sums A' in two phases:
//   1. A is cut into subarrays of k entries; k subarrays are advanced together,
//      block i walking subarray i, so k steps finish k*k entries.
//   2. Subarrays are fixed up left to right by adding the last entry of the
//      previous one to every entry, one wide add per subarray.
// A' is stored after a leading zero, so cell c of `prefix` is the number of
// ones strictly before row cell c.

#include <bit>
#include <cstddef>
#include <vector>

#include "uwram/error.hpp"
#include "uwram/machine.hpp"

namespace uwram {

/// Ones in every block of W, each block's count left in that block.
inline WideWord popcount_blocks(Machine& m, WideWord x) {
    const WideConfig& c = m.config();
    for (unsigned s = 1; s < c.w; s *= 2) {
        u64 pattern = 0;
        for (unsigned b = 0; b < c.w; ++b)
            if (b % (2 * s) < s) pattern |= u64{1} << b;
        const WideWord mask = WideWord::broadcast(c, pattern);
        x = m.add(m.and_(x, mask), m.and_(m.to_low(x, s), mask));
    }
    return x;
}

/// Block j holds `start + j*step` (host-side constant).
inline WideWord lane_ramp(const WideConfig& c, u64 start, u64 step) {
    WideWord r(c);
    for (std::size_t j = 0; j < c.k; ++j) r.set_limb(j, (start + j * step) & c.block_mask());
    return r;
}

class StaticPrefixSums {
public:
    /// Cells a row of `length` bits must occupy so whole wide words can be read.
    static std::size_t row_cells(const WideConfig& c, std::size_t length) {
        const std::size_t cells = (length + c.w - 1) / c.w;
        return std::max<std::size_t>(1, (cells + c.k - 1) / c.k) * c.k;
    }

    /// Cells this structure allocates besides the row itself.
    static std::size_t cells_needed(const WideConfig& c, std::size_t length) {
        const std::size_t padded = group_cells(c, length);
        return padded + 1 + padded + 2 * c.w;
    }

    /// `row` must have row_cells(length) cells; bits at positions >= length must be zero.
    StaticPrefixSums(Machine& m, address row, std::size_t length)
        : m_(&m), row_(row), length_(length) {
        if (length == 0) throw domain_error("prefix sums: empty row");
        const WideConfig& c = m.config();
        if (c.w < 64 && length >= (u64{1} << c.w))
            throw domain_error("prefix sums: counts up to " + std::to_string(length) +
                               " do not fit in w bits");
        cells_ = (length + c.w - 1) / c.w;
        const std::size_t padded = group_cells(c, length);
        counts_ = m.allocate(padded);
        prefix_ = m.allocate(1 + padded);
        masks_ = m.allocate(2 * c.w);
        for (unsigned r = 0; r < c.w; ++r) {
            m.poke(masks_ + r, WideWord::low_mask(r + 1));
            m.poke(masks_ + c.w + r, u64{1} << r);
        }
        log_w_ = static_cast<unsigned>(std::countr_zero(c.w));
        ones_ = WideWord::broadcast(c, 1);
        stride_ = lane_ramp(c, 0, c.k);
    }

    std::size_t length() const noexcept { return length_; }
    address row() const noexcept { return row_; }
    /// Exclusive per-cell prefix: cell c holds ones before row cell c.
    address prefix_base() const noexcept { return prefix_; }

    void build() {
        const WideConfig& c = m_->config();
        const std::size_t k = c.k;
        const std::size_t words = (cells_ + k - 1) / k;
        for (std::size_t q = 0; q < words; ++q)
            m_->write_word(popcount_blocks(*m_, m_->read_word(row_ + q * k)), counts_ + q * k);

        const address out = prefix_ + 1;
        const std::size_t groups = (cells_ + k * k - 1) / (k * k);
        for (std::size_t g = 0; g < groups; ++g) {
            WideWord pos = m_->add(stride_, m_->broadcast(g * k * k));
            WideWord acc(c);
            for (std::size_t step = 0; step < k; ++step) {
                acc = m_->add(acc, m_->read_content(pos, counts_));
                m_->write_content(acc, pos, out);
                pos = m_->add(pos, ones_);
            }
        }

        const std::size_t subarrays = (cells_ + k - 1) / k;
        for (std::size_t i = 1; i < subarrays; ++i) {
            const WideWord carry = m_->broadcast(m_->load(out + i * k - 1));
            m_->write_word(m_->add(m_->read_word(out + i * k), carry), out + i * k);
        }
    }

    /// Ones in bits [0, q].
    u64 rank(std::size_t q) {
        if (q >= length_)
            throw memory_fault(access_kind::scalar, 0, u128{row_} * m_->config().w + q,
                               m_->memory_size());
        const std::size_t cell = q >> log_w_;
        const u64 bits = m_->load(row_ + cell) & WideWord::low_mask(static_cast<unsigned>(q % m_->config().w) + 1);
        m_->tick(3);
        return static_cast<u64>(std::popcount(bits)) + m_->load(prefix_ + cell);
    }

    /// Lane-wise rank: block j of the result is rank(J_j).  Lanes must be < length.
    WideWord rank_word(const WideWord& J) {
        const WideConfig& c = m_->config();
        const WideWord cell = m_->and_(m_->to_low(J, log_w_),
                                       WideWord::broadcast(c, WideWord::low_mask(c.w - log_w_)));
        const WideWord within = m_->and_(J, WideWord::broadcast(c, c.w - 1));
        WideWord bits = m_->and_(m_->read_content(cell, row_), m_->read_content(within, masks_));
        return m_->add(popcount_blocks(*m_, bits), m_->read_content(cell, prefix_));
    }

    /// Lane-wise bit test: block j is 1 where bit J_j is set.
    WideWord bit_word(const WideWord& J) {
        const WideConfig& c = m_->config();
        const WideWord cell = m_->and_(m_->to_low(J, log_w_),
                                       WideWord::broadcast(c, WideWord::low_mask(c.w - log_w_)));
        const WideWord within = m_->and_(J, WideWord::broadcast(c, c.w - 1));
        const WideWord hit = m_->and_(m_->read_content(cell, row_), m_->read_content(within, masks_ + c.w));
        return popcount_blocks(*m_, hit);
    }

    std::vector<u64> block_counts() const {
        std::vector<u64> out(cells_);
        for (std::size_t i = 0; i < cells_; ++i) out[i] = m_->peek(counts_ + i);
        return out;
    }

    /// Inclusive prefix of the block counts.
    std::vector<u64> block_prefix() const {
        std::vector<u64> out(cells_);
        for (std::size_t i = 0; i < cells_; ++i) out[i] = m_->peek(prefix_ + 1 + i);
        return out;
    }

private:
    Machine* m_;
    address row_;
    std::size_t length_;
    std::size_t cells_ = 0;
    address counts_ = 0, prefix_ = 0, masks_ = 0;
    unsigned log_w_ = 0;
    WideWord ones_, stride_;

    static std::size_t group_cells(const WideConfig& c, std::size_t length) {
        const std::size_t cells = (length + c.w - 1) / c.w;
        const std::size_t kk = c.k * c.k;
        return std::max<std::size_t>(1, (cells + kk - 1) / kk) * kk;
    }
};

} // namespace uwram
