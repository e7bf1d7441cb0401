#pragma once

// 0/1 knapsack over dominance bit rows.
//
// Row i is kept as two packed bit rows: g marks the capacities u where the
// best value C_i(u) steps up, h marks the values reached at those steps.
// C_i(j) is therefore the value of the rank_g(j)-th set bit of h.  Per item:
//   - both rows get static prefix sums (parallel rank),
//   - a select table SEL_h[r] = position of the (r+1)-th one of h is built by
//     one scatter per k columns,
//   - k capacities at a time gather C_{i-1}(j) and C_{i-1}(j - w_i) through
//     rank + select and take the fieldwise max with v_i added,
//   - the new g row comes from comparing neighbouring C_i values, and the new
//     h row from scattering ones at the values where g is set.
// Every step handles k columns per constant number of wide operations.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "uwram/error.hpp"
#include "uwram/machine.hpp"
#include "uwram/oracles.hpp"
#include "uwram/static_prefix_sums.hpp"

namespace uwram {

using oracle::item;

/// Fractional (LP relaxation) bound on the optimum; at most twice the optimum.
inline u64 knapsack_value_bound(std::span<const item> items, u64 capacity) {
    std::vector<item> fit;
    u64 free_value = 0;
    for (const item& it : items) {
        if (it.weight == 0) free_value += it.value;
        else if (it.weight <= capacity) fit.push_back(it);
    }
    std::sort(fit.begin(), fit.end(), [](const item& a, const item& b) {
        return static_cast<unsigned __int128>(a.value) * b.weight >
               static_cast<unsigned __int128>(b.value) * a.weight;
    });
    u64 room = capacity, total = free_value;
    for (const item& it : fit) {
        if (it.weight <= room) {
            room -= it.weight;
            total += it.value;
        } else {
            total += static_cast<u64>(static_cast<unsigned __int128>(it.value) * room / it.weight);
            break;
        }
    }
    return total;
}

class Knapsack {
public:
    /// Columns of the g and h rows: max(capacity, value bound) + 1.
    static std::size_t columns(u64 capacity, u64 value_bound) {
        return static_cast<std::size_t>(std::max(capacity, value_bound)) + 1;
    }

    static std::size_t cells_needed(const WideConfig& c, u64 capacity, u64 value_bound) {
        const std::size_t m = columns(capacity, value_bound);
        const std::size_t len = m + c.k;
        const std::size_t row = StaticPrefixSums::row_cells(c, len);
        return 1 + 2 * (row + StaticPrefixSums::cells_needed(c, len)) + (m + c.k) /* select */ +
               (1 + m + c.k) /* values */ + (m + 2 * c.k) /* unpacked h */ + c.k /* scratch */;
    }

    Knapsack(Machine& m, u64 capacity, u64 value_bound)
        : m_(&m), capacity_(capacity), bound_(value_bound), cols_(columns(capacity, value_bound)),
          g_row_(m.allocate(StaticPrefixSums::row_cells(m.config(), cols_ + m.config().k))),
          h_row_(m.allocate(StaticPrefixSums::row_cells(m.config(), cols_ + m.config().k))),
          g_(m, g_row_, cols_ + m.config().k), h_(m, h_row_, cols_ + m.config().k) {
        const WideConfig& c = m.config();
        if (c.w < 64 && (cols_ + 2 * c.k) >= (u64{1} << (c.w - 1)))
            throw domain_error("knapsack: " + std::to_string(cols_) +
                               " columns overflow w-bit fields; use a wider block");
        select_ = m.allocate(cols_ + c.k);
        values_ = m.allocate(1 + cols_ + c.k);
        unpacked_ = m.allocate(cols_ + 2 * c.k);
        scratch_ = m.allocate(c.k);
        m.poke(g_row_, 1);
        m.poke(h_row_, 1);
        lanes_ = lane_ramp(c, 0, 1);
        ones_ = WideWord::broadcast(c, 1);
        step_ = WideWord::broadcast(c, c.k);
        first_ = WideWord(c);
        first_.set_limb(0, WideWord::low_mask(c.w - 1));
    }

    u64 capacity() const noexcept { return capacity_; }
    std::size_t columns() const noexcept { return cols_; }

    void add_item(const item& it) {
        const WideConfig& c = m_->config();
        const unsigned f = c.w;
        m_->tick();
        if (it.weight > capacity_) return;
        if (it.value > bound_) throw domain_error("knapsack: item value exceeds the value bound");
        const std::size_t k = c.k;
        const address trash_sel = cols_;
        const address trash_h = cols_ + k;

        g_.build();
        h_.build();

        // SEL_h
        WideWord pos = lanes_;
        for (std::size_t s = 0; s < cols_; s += k) {
            const WideWord hit = h_.bit_word(pos);
            const WideWord rank = h_.rank_word(pos);
            const WideWord to = m_->select(lane_masks(hit), m_->sub(rank, hit),
                                           m_->add(lanes_, m_->broadcast(trash_sel)));
            m_->write_content(pos, to, select_);
            pos = m_->add(pos, step_);
        }

        // C_i(j) for j = 0..capacity
        const WideWord wi = m_->broadcast(it.weight);
        const WideWord vi = m_->broadcast(it.value);
        pos = lanes_;
        for (std::size_t s = 0; s <= capacity_; s += k) {
            const WideWord keep = m_->read_content(m_->sub(g_.rank_word(pos), ones_), select_);
            const WideWord room = m_->field_compare_ge(pos, wi, f);
            const WideWord from = m_->sub(pos, m_->and_(wi, room));
            WideWord take = m_->read_content(m_->sub(g_.rank_word(from), ones_), select_);
            take = m_->and_(m_->add(take, vi), room);
            m_->write_word(m_->field_max(keep, take, f, false), values_ + 1 + s);
            pos = m_->add(pos, step_);
        }

        // new g row, ones of the new h row scattered unpacked
        clear_row(g_row_);
        const WideWord last = m_->broadcast(capacity_);
        pos = lanes_;
        for (std::size_t s = 0; s <= capacity_; s += k) {
            const WideWord cur = m_->read_word(values_ + 1 + s);
            const WideWord prev = m_->read_word(values_ + s);
            WideWord up = m_->xor_(m_->field_compare_ge(prev, cur, f), m_->field_masks(f).payload);
            if (s == 0) up = m_->or_(up, first_);
            up = m_->and_(up, m_->field_compare_ge(last, pos, f));
            const WideWord bits = m_->and_(up, ones_);
            insert_bits(g_row_, s, m_->compress(bits));
            const WideWord to = m_->select(lane_masks(bits), cur, m_->add(lanes_, m_->broadcast(trash_h)));
            m_->write_content(bits, to, unpacked_);
            pos = m_->add(pos, step_);
        }

        // pack h, clearing the unpacked buffer behind us
        clear_row(h_row_);
        const WideWord zero(c);
        for (std::size_t s = 0; s < cols_; s += k) {
            insert_bits(h_row_, s, m_->compress(m_->read_word(unpacked_ + s)));
            m_->write_word(zero, unpacked_ + s);
        }
        m_->write_word(zero, unpacked_ + trash_h);
        ++items_;
    }

    /// Best value with weight at most the capacity.
    u64 best() {
        if (items_ == 0) return 0;
        return m_->load(values_ + 1 + capacity_);
    }

    /// Uncharged views of the current dominance rows.
    std::vector<bool> g_row() const { return unpack(g_row_, capacity_ + 1); }
    std::vector<bool> h_row() const { return unpack(h_row_, cols_); }

private:
    Machine* m_;
    u64 capacity_;
    u64 bound_;
    std::size_t cols_;
    address g_row_, h_row_;
    StaticPrefixSums g_, h_;
    address select_ = 0, values_ = 0, unpacked_ = 0, scratch_ = 0;
    std::size_t items_ = 0;
    WideWord lanes_, ones_, step_, first_;

    /// Each block that holds 1 becomes all ones, others zero.
    WideWord lane_masks(const WideWord& bits) {
        return m_->sub(m_->to_high(bits, m_->config().w), bits);
    }

    void clear_row(address row) {
        const WideConfig& c = m_->config();
        const WideWord zero(c);
        const std::size_t cells = StaticPrefixSums::row_cells(c, cols_ + c.k);
        for (std::size_t q = 0; q < cells; q += c.k) m_->write_word(zero, row + q);
    }

    /// ORs the k-bit value held at the bottom of W into the packed row at bit `at`.
    void insert_bits(address row, std::size_t at, const WideWord& W) {
        const WideConfig& c = m_->config();
        m_->write_word(W, scratch_);
        const std::size_t chunks = (c.k + c.w - 1) / c.w;
        for (std::size_t t = 0; t < chunks; ++t) {
            const u64 chunk = m_->load(scratch_ + t);
            if (!chunk) continue;
            const std::size_t p = at + t * c.w;
            const address cell = row + p / c.w;
            const unsigned off = static_cast<unsigned>(p % c.w);
            m_->store(cell, m_->load(cell) | ((chunk << off) & c.block_mask()));
            if (off != 0 && (chunk >> (c.w - off)) != 0)
                m_->store(cell + 1, m_->load(cell + 1) | (chunk >> (c.w - off)));
            m_->tick(4);
        }
    }

    std::vector<bool> unpack(address row, std::size_t n) const {
        const unsigned w = m_->config().w;
        std::vector<bool> out(n);
        for (std::size_t q = 0; q < n; ++q) out[q] = (m_->peek(row + q / w) >> (q % w)) & 1;
        return out;
    }
};

/// Solves a whole instance on `m`; the machine must have Knapsack::cells_needed cells.
inline u64 knapsack(Machine& m, std::span<const item> items, u64 capacity) {
    Knapsack ks(m, capacity, knapsack_value_bound(items, capacity));
    for (const item& it : items) ks.add_item(it);
    return ks.best();
}

inline std::size_t knapsack_cells(const WideConfig& c, std::span<const item> items, u64 capacity) {
    return Knapsack::cells_needed(c, capacity, knapsack_value_bound(items, capacity));
}

} // namespace uwram
