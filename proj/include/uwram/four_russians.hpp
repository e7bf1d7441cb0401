#pragma once

// LCS length with precomputed t x t blocks.
//
// A block of the DP table is fixed by the H values on its top edge, the V
// values on its left edge and the t symbols of X and Y it spans; its outputs
// are the H values of its bottom row and the V values of its right column.
// All blocks are tabulated once, keyed by
//   key = h | v << t | x << 2t | y << (2t + t*b)        (b bits per symbol)
// and the table entry is hb | vb << t.  Blocks on one block anti-diagonal are
// independent, so k of them are advanced per parallel lookup:
//   HB (edge rows, row-major, B_c columns): block (i, j) reads HB[i][j], writes HB[i+1][j]
//   VB (edge columns, row-major, B_c + 1 columns): block (i, j) reads VB[i][j], writes VB[i][j+1]
// On anti-diagonal D both addresses are affine in i, as are XB[i] and the
// reversed YB[B_c - 1 - j].  Rows and columns not covered by whole blocks are
// finished with the scalar recurrence from the block edges.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "uwram/error.hpp"
#include "uwram/lcs.hpp"
#include "uwram/machine.hpp"
#include "uwram/static_prefix_sums.hpp"

namespace uwram {

struct FourRussiansPlan {
    bool fallback = false;
    std::string notice;
    unsigned t = 0;
    unsigned symbol_bits = 0;
    unsigned key_bits = 0;
    std::size_t block_rows = 0, block_cols = 0;
    std::size_t cells = 0;
};

class FourRussians {
public:
    static constexpr std::uint64_t table_budget = std::uint64_t{1} << 22;

    static FourRussiansPlan plan(const WideConfig& c, std::size_t rows, std::size_t cols, std::size_t sigma) {
        FourRussiansPlan p;
        const std::size_t n = std::max(rows, cols);
        const u64 base = 2 * std::max<std::size_t>(sigma, 1);
        // largest t with (2 sigma)^(2t) <= n
        for (u64 reach = 1; reach <= n / (base * base); reach *= base * base) ++p.t;
        p.symbol_bits = std::max(1u, symbol_bits(sigma));
        p.key_bits = 2 * p.t + 2 * p.t * p.symbol_bits;
        auto fall = [&](std::string why) {
            p.fallback = true;
            p.notice = "four russians: " + why + "; using diagonal lcs";
            p.cells = LcsDiagonals::cells_needed(c, rows, cols, sigma, retention::rolling);
            return p;
        };
        if (p.t < 1) return fall("inputs too short for blocks");
        if (2 * p.t > c.w) return fall("block side exceeds w/2");
        if (p.key_bits > c.w) return fall("block key exceeds w bits");
        if ((std::uint64_t{1} << p.key_bits) > table_budget) return fall("block table exceeds budget");
        p.block_rows = rows / p.t;
        p.block_cols = cols / p.t;
        p.cells = 1 + (std::size_t{1} << p.key_bits) + (p.block_rows + 1) * p.block_cols +
                  p.block_rows * (p.block_cols + 1) + p.block_rows + p.block_cols + c.k;
        if (c.w < 64 && p.cells > (std::size_t{1} << c.w)) return fall("block table exceeds the address space");
        return p;
    }

    FourRussians(Machine& m, std::span<const symbol> x, std::span<const symbol> y, std::size_t sigma)
        : m_(&m), x_(x.begin(), x.end()), y_(y.begin(), y.end()), sigma_(sigma),
          plan_(plan(m.config(), x.size(), y.size(), sigma)) {
        check_symbols(x, sigma, "X");
        check_symbols(y, sigma, "Y");
    }

    const FourRussiansPlan& info() const noexcept { return plan_; }

    u64 length() {
        if (plan_.fallback) return lcs_length(*m_, x_, y_, sigma_);
        allocate();
        build_table();
        pack_strings();
        run_blocks();
        return finish();
    }

private:
    Machine* m_;
    std::vector<symbol> x_, y_;
    std::size_t sigma_;
    FourRussiansPlan plan_;
    address table_ = 0, hb_ = 0, vb_ = 0, xb_ = 0, yb_ = 0, trash_ = 0;

    void allocate() {
        const std::size_t br = plan_.block_rows, bc = plan_.block_cols;
        table_ = m_->allocate(std::size_t{1} << plan_.key_bits);
        hb_ = m_->allocate((br + 1) * bc);
        vb_ = m_->allocate(br * (bc + 1));
        xb_ = m_->allocate(br);
        yb_ = m_->allocate(bc);
        trash_ = m_->allocate(m_->config().k);
    }

    /// Every block outcome, by the scalar recurrence; charged as scalar work.
    void build_table() {
        const unsigned t = plan_.t, b = plan_.symbol_bits;
        const u64 entries = u64{1} << plan_.key_bits;
        const u64 tmask = WideWord::low_mask(t), smask = WideWord::low_mask(b);
        std::vector<u64> c((t + 1) * (t + 1));
        auto at = [&](unsigned i, unsigned j) -> u64& { return c[i * (t + 1) + j]; };
        for (u64 key = 0; key < entries; ++key) {
            const u64 h = key & tmask, v = (key >> t) & tmask;
            const u64 xs = key >> (2 * t), ys = key >> (2 * t + t * b);
            at(0, 0) = 0;
            for (unsigned j = 1; j <= t; ++j) at(0, j) = at(0, j - 1) + ((h >> (j - 1)) & 1);
            for (unsigned i = 1; i <= t; ++i) at(i, 0) = at(i - 1, 0) + ((v >> (i - 1)) & 1);
            for (unsigned i = 1; i <= t; ++i)
                for (unsigned j = 1; j <= t; ++j) {
                    const bool eq = ((xs >> ((i - 1) * b)) & smask) == ((ys >> ((j - 1) * b)) & smask);
                    at(i, j) = eq ? at(i - 1, j - 1) + 1 : std::max(at(i - 1, j), at(i, j - 1));
                }
            u64 out = 0;
            for (unsigned s = 0; s < t; ++s) {
                out |= (at(t, s + 1) - at(t, s)) << s;
                out |= (at(s + 1, t) - at(s, t)) << (t + s);
            }
            m_->poke(table_ + key, out);
        }
        m_->tick(entries * t * t);
    }

    void pack_strings() {
        const unsigned t = plan_.t, b = plan_.symbol_bits;
        auto chunk = [&](const std::vector<symbol>& s, std::size_t i) {
            u64 v = 0;
            for (unsigned q = 0; q < t; ++q) v |= u64{s[i * t + q]} << (q * b);
            return v;
        };
        for (std::size_t i = 0; i < plan_.block_rows; ++i) m_->store(xb_ + i, chunk(x_, i));
        for (std::size_t j = 0; j < plan_.block_cols; ++j)
            m_->store(yb_ + plan_.block_cols - 1 - j, chunk(y_, j));
        m_->tick((plan_.block_rows + plan_.block_cols) * t);
    }

    void run_blocks() {
        const WideConfig& c = m_->config();
        const std::size_t k = c.k, br = plan_.block_rows, bc = plan_.block_cols;
        if (br == 0 || bc == 0) return;
        const unsigned t = plan_.t, b = plan_.symbol_bits;
        const WideWord full = WideWord::broadcast(c, c.block_mask());
        const WideWord tmask = WideWord::broadcast(c, WideWord::low_mask(t));
        const WideWord step_h = lane_ramp(c, 0, bc - 1), step_v = lane_ramp(c, 0, bc), step_1 = lane_ramp(c, 0, 1);
        const WideWord trash = lane_ramp(c, trash_, 1);
        for (std::size_t d = 0; d + 1 < br + bc; ++d) {
            const std::size_t first = d >= bc ? d - bc + 1 : 0;
            const std::size_t last = std::min(br - 1, d);
            for (std::size_t i0 = first; i0 <= last; i0 += k) {
                const std::size_t cnt = std::min(k, last - i0 + 1);
                const WideWord valid = m_->to_low(full, (k - cnt) * c.w);
                auto addr = [&](const WideWord& ramp, u64 at) {
                    return m_->select(valid, m_->add(ramp, m_->broadcast(at)), trash);
                };
                const WideWord ha = addr(step_h, hb_ + d + i0 * (bc - 1));
                const WideWord va = addr(step_v, vb_ + d + i0 * bc);
                const WideWord xa = addr(step_1, xb_ + i0);
                const WideWord ya = addr(step_1, yb_ + bc - 1 - d + i0);
                WideWord key = m_->read_content(ha, 0);
                key = m_->or_(key, m_->to_high(m_->read_content(va, 0), t));
                key = m_->or_(key, m_->to_high(m_->read_content(xa, 0), 2 * t));
                key = m_->or_(key, m_->to_high(m_->read_content(ya, 0), 2 * t + t * b));
                key = m_->and_(key, valid);
                const WideWord out = m_->read_content(key, table_);
                m_->write_content(m_->and_(out, tmask), addr(step_h, hb_ + d + i0 * (bc - 1) + bc), 0);
                m_->write_content(m_->and_(m_->to_low(out, t), tmask), addr(step_v, vb_ + d + i0 * bc + 1), 0);
            }
        }
    }

    /// Scalar recurrence over the strips outside the whole blocks.
    u64 finish() {
        const unsigned t = plan_.t;
        const std::size_t rows = x_.size(), cols = y_.size();
        const std::size_t R = plan_.block_rows * t, C = plan_.block_cols * t;
        // c along row R (columns 0..C) and column C (rows 0..R) from the block edges
        std::vector<u64> row(cols + 1, 0), col(R + 1, 0);
        for (std::size_t j = 0; j < plan_.block_cols; ++j) {
            const u64 e = plan_.block_rows ? m_->load(hb_ + plan_.block_rows * plan_.block_cols + j) : 0;
            for (unsigned s = 0; s < t; ++s) row[j * t + s + 1] = row[j * t + s] + ((e >> s) & 1);
        }
        for (std::size_t i = 0; i < plan_.block_rows; ++i) {
            const u64 e = plan_.block_cols ? m_->load(vb_ + i * (plan_.block_cols + 1) + plan_.block_cols) : 0;
            for (unsigned s = 0; s < t; ++s) col[i * t + s + 1] = col[i * t + s] + ((e >> s) & 1);
        }
        m_->tick(R + C);
        // columns C+1..cols for rows 1..R, finishing row R
        std::vector<u64> prev(cols + 1, 0), cur(cols + 1, 0);
        for (std::size_t i = 1; i <= R; ++i) {
            cur[C] = col[i];
            for (std::size_t j = C + 1; j <= cols; ++j)
                cur[j] = x_[i - 1] == y_[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
            prev[C] = col[i];
            for (std::size_t j = C + 1; j <= cols; ++j) prev[j] = cur[j];
        }
        m_->tick(4 * R * (cols - C));
        for (std::size_t j = C + 1; j <= cols; ++j) row[j] = R ? prev[j] : 0;
        // rows R+1..rows, every column
        for (std::size_t i = R + 1; i <= rows; ++i) {
            cur[0] = 0;
            for (std::size_t j = 1; j <= cols; ++j)
                cur[j] = x_[i - 1] == y_[j - 1] ? row[j - 1] + 1 : std::max(row[j], cur[j - 1]);
            row = cur;
        }
        m_->tick(4 * (rows - R) * cols);
        return row[cols];
    }
};

inline u64 lcs_four_russians(Machine& m, std::span<const symbol> x, std::span<const symbol> y,
                             std::size_t sigma) {
    FourRussians run(m, x, y, sigma);
    return run.length();
}

inline std::size_t four_russians_cells(const WideConfig& c, std::size_t rows, std::size_t cols,
                                       std::size_t sigma) {
    return FourRussians::plan(c, rows, cols, sigma).cells;
}

} // namespace uwram
