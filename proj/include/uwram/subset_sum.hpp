#pragma once

// Bit-parallel subset sum: C_i = C_{i-1} | (C_{i-1} shifted up by a_i).
//
// Row C lives in machine memory, bit j at bit j%w of cell j/w, preceded by
// k+1 zero cells so shifted reads below the row see zeros.  Each wide word of
// the output is built from two unaligned word reads (the cell-quantized shift)
// and a pair of bit shifts (the residual), then ORed in place.  Words are
// processed from most to least significant, so every read still sees C_{i-1}.
// With k = 1 this is exactly the word-RAM algorithm.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uwram/error.hpp"
#include "uwram/machine.hpp"

namespace uwram {

class SubsetSum {
public:
    static std::size_t words_for(const WideConfig& c, u64 target) {
        return static_cast<std::size_t>((target + 1 + c.bits() - 1) / c.bits());
    }

    /// Cells needed on config c (scratch cell included).
    static std::size_t cells_needed(const WideConfig& c, u64 target) {
        return 1 + (c.k + 1) + words_for(c, target) * c.k;
    }

    SubsetSum(Machine& m, u64 target) : m_(&m), target_(target) {
        const WideConfig& c = m.config();
        words_ = words_for(c, target);
        pad_ = m.allocate(c.k + 1);
        row_ = m.allocate(words_ * c.k);
        m.poke(row_, 1);
    }

    u64 target() const noexcept { return target_; }
    std::size_t words() const noexcept { return words_; }

    /// Folds one weight into the row.
    void add_item(u64 a) {
        const WideConfig& c = m_->config();
        const std::size_t k = c.k;
        const u64 kw = c.bits();
        if (a > target_) {
            m_->tick();
            return;
        }
        const u64 cells = a / c.w;
        const unsigned r = static_cast<unsigned>(a % c.w);
        m_->tick(2);
        for (std::size_t q = words_; q-- > 0;) {
            if ((q + 1) * kw <= a) break;
            const address at = row_ + q * k;
            const address src = at - cells;
            WideWord shifted = m_->read_word(src);
            if (r != 0)
                shifted = m_->or_(m_->to_high(shifted, r), m_->to_low(m_->read_word(src - 1), c.w - r));
            m_->write_word(m_->or_(m_->read_word(at), shifted), at);
        }
    }

    bool reachable(u64 j) {
        if (j > target_) throw domain_error("subset sum: column beyond target");
        const u64 w = m_->config().w;
        m_->tick(2);
        return (m_->load(row_ + j / w) >> (j % w)) & 1;
    }

    bool answer() { return reachable(target_); }

    /// Uncharged host view of the current row, columns 0..t.
    std::vector<bool> row() const {
        const u64 w = m_->config().w;
        std::vector<bool> out(target_ + 1);
        for (u64 j = 0; j <= target_; ++j) out[j] = (m_->peek(row_ + j / w) >> (j % w)) & 1;
        return out;
    }

private:
    Machine* m_;
    u64 target_;
    std::size_t words_ = 0;
    address pad_ = 0, row_ = 0;
};

inline bool subset_sum(Machine& m, std::span<const u64> weights, u64 target) {
    SubsetSum s(m, target);
    for (u64 a : weights) s.add_item(a);
    return s.answer();
}

} // namespace uwram
