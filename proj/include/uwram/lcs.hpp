#pragma once

// LCS length by anti-diagonals of the difference tables
//   H[i][j] = c[i][j] - c[i][j-1],  V[i][j] = c[i][j] - c[i-1][j]   (both 0 or 1)
// using
//   H[i][j] = max(eq - V[i][j-1], H[i-1][j] - V[i][j-1], 0)
//   V[i][j] = max(eq - H[i-1][j], V[i][j-1] - H[i-1][j], 0)
// where eq = [x_i == y_j].  A diagonal k = i + j is held in f-bit fields in
// increasing column order, l = floor(kw / f) fields per wide word (segment):
//   H_k covers columns max(1, k-m) .. min(n, k); its last field is the row-0 base cell when k <= n
//   V_k covers columns max(0, k-m) .. min(n, k-1); its first field is the column-0 base cell when k <= m
// X is stored reversed so the symbols x_i, x_{i-1}, ... along a diagonal are
// contiguous, like y_j, y_{j+1}, ... in Y.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "uwram/error.hpp"
#include "uwram/machine.hpp"
#include "uwram/oracles.hpp"

namespace uwram {

using oracle::symbol;

enum class retention { rolling, full };

inline unsigned symbol_bits(std::size_t sigma) {
    unsigned b = 0;
    while ((std::size_t{1} << b) < sigma) ++b;
    return b;
}

inline unsigned lcs_field_bits(std::size_t sigma) { return std::max(symbol_bits(sigma), 2u) + 1; }

inline void check_symbols(std::span<const symbol> s, std::size_t sigma, const char* what) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] >= sigma)
            throw domain_error(std::string(what) + "[" + std::to_string(i) + "] = " +
                               std::to_string(s[i]) + " is not below sigma = " + std::to_string(sigma));
}

class LcsDiagonals {
public:
    static std::size_t cells_needed(const WideConfig& c, std::size_t m, std::size_t n, std::size_t sigma,
                                    retention keep) {
        const unsigned f = lcs_field_bits(sigma);
        const std::size_t ell = c.bits() / f;
        const std::size_t segs = (std::min(m, n) + 1 + ell - 1) / ell + 1;
        const std::size_t slots = keep == retention::full ? 2 * (m + n + 1) : 4;
        return 1 + string_cells(c, m, f) + string_cells(c, n, f) + slots * segs * c.k + 1;
    }

    LcsDiagonals(Machine& machine, std::span<const symbol> x, std::span<const symbol> y, std::size_t sigma,
                 retention keep = retention::rolling)
        : m_(&machine), x_(x.begin(), x.end()), y_(y.begin(), y.end()), sigma_(sigma), keep_(keep),
          rows_(x.size()), cols_(y.size()) {
        if (sigma < 1) throw config_error("lcs: alphabet must be nonempty");
        check_symbols(x, sigma, "X");
        check_symbols(y, sigma, "Y");
        const WideConfig& c = machine.config();
        f_ = lcs_field_bits(sigma);
        if (f_ > c.w) throw config_error("lcs: alphabet too large for w-bit blocks");
        ell_ = c.bits() / f_;
        segs_ = (std::min(rows_, cols_) + 1 + ell_ - 1) / ell_ + 1;
        slot_cells_ = segs_ * c.k;

        xbase_ = machine.allocate(string_cells(c, rows_, f_));
        ybase_ = machine.allocate(string_cells(c, cols_, f_));
        const std::size_t slots = keep == retention::full ? 2 * (rows_ + cols_ + 1) : 4;
        diags_ = machine.allocate(slots * slot_cells_);
        ret_ = machine.allocate(1);

        std::vector<symbol> xr(x_.rbegin(), x_.rend());
        store_string(xbase_, xr);
        store_string(ybase_, y_);

        full_ = WideWord::from_limbs(c, std::vector<u64>(c.k, c.block_mask()));
    }

    std::size_t field_bits() const noexcept { return f_; }
    std::size_t fields_per_word() const noexcept { return ell_; }

    /// Runs every diagonal once; later calls return the cached length.
    u64 length() {
        if (length_) return *length_;
        const WideConfig& c = m_->config();
        const unsigned f = f_;
        const std::size_t k = c.k;
        const std::size_t m = rows_, n = cols_;
        u64 total = 0;
        if (m == 0 || n == 0) return *(length_ = 0);

        const auto& fm = m_->field_masks(f);
        const WideWord zero(c);

        for (std::size_t d = 2; d <= m + n; ++d) {
            const std::size_t lo = d > m + 1 ? d - m : 1;
            const std::size_t hi = std::min(n, d - 1);
            const std::size_t len = hi - lo + 1;
            const std::size_t xpos = m - (d - lo);
            const std::size_t ypos = lo - 1;
            const bool h_offset = d >= m + 2;
            const bool v_base = d <= m;
            const address hp = h_slot(d - 1), vp = v_slot(d - 1), hc = h_slot(d), vc = v_slot(d);
            const std::size_t nseg = (len + ell_ - 1) / ell_;
            m_->tick(8);

            WideWord carry = zero;
            for (std::size_t t = 0; t < nseg; ++t) {
                const std::size_t cnt = std::min(ell_, len - t * ell_);
                const WideWord valid = m_->to_low(full_, c.bits() - cnt * f);
                const WideWord wx = load_fields(xbase_, xpos + t * ell_, valid);
                const WideWord wy = load_fields(ybase_, ypos + t * ell_, valid);
                const WideWord eq = m_->and_(m_->field_equal_ones(wx, wy, f), valid);

                const WideWord vv = m_->and_(m_->read_word(vp + t * k), valid);
                WideWord hh = m_->read_word(hp + t * k);
                if (h_offset)
                    hh = m_->or_(m_->to_low(hh, f), m_->to_high(m_->read_word(hp + (t + 1) * k), (ell_ - 1) * f));
                hh = m_->and_(hh, valid);

                WideWord hn = m_->field_max(m_->field_sub(eq, vv, f), m_->field_sub(hh, vv, f), f, true);
                hn = m_->and_(m_->field_max(hn, zero, f, true), valid);
                WideWord vn = m_->field_max(m_->field_sub(eq, hh, f), m_->field_sub(vv, hh, f), f, true);
                vn = m_->and_(m_->field_max(vn, zero, f, true), valid);

                m_->write_word(hn, hc + t * k);
                if (v_base) {
                    const WideWord out = m_->or_(m_->and_(m_->to_high(vn, f), fm.all), carry);
                    carry = m_->to_low(vn, (ell_ - 1) * f);
                    m_->write_word(out, vc + t * k);
                } else {
                    m_->write_word(vn, vc + t * k);
                }

                if (t == 0 && d >= m + 1) {
                    m_->write_block(hn, 0, ret_);
                    total += m_->load(ret_) & WideWord::low_mask(f);
                    m_->tick();
                }
            }
            m_->write_word(zero, hc + nseg * k);
            m_->write_word(v_base ? carry : zero, vc + nseg * k);
        }
        length_ = total;
        return total;
    }

    /// H[i][j] for 1 <= i <= m, 1 <= j <= n (needs full retention and a finished run).
    int h(std::size_t i, std::size_t j) {
        require_table(i, j);
        const std::size_t d = i + j;
        return static_cast<int>(field_at(h_slot(d), j - h_lo(d)));
    }

    int v(std::size_t i, std::size_t j) {
        require_table(i, j);
        const std::size_t d = i + j;
        return static_cast<int>(field_at(v_slot(d), j - v_lo(d)));
    }

    /// Host view of diagonal H_d in increasing column order, base field included.
    std::vector<u64> h_diagonal(std::size_t d) const { return diagonal(h_slot_checked(d), h_len(d)); }
    std::vector<u64> v_diagonal(std::size_t d) const { return diagonal(v_slot_checked(d), v_len(d)); }

    /// One longest common subsequence, walked back from (m, n).
    std::vector<symbol> recover() {
        if (keep_ != retention::full) throw precondition_error("lcs recover: diagonals were not retained");
        length();
        std::vector<symbol> out;
        std::size_t i = rows_, j = cols_;
        while (i > 0 && j > 0) {
            m_->tick(2);
            if (x_[i - 1] == y_[j - 1]) {
                out.push_back(x_[i - 1]);
                --i;
                --j;
            } else if (v(i, j) == 0) {
                --i;
            } else {
                --j;
            }
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

private:
    Machine* m_;
    std::vector<symbol> x_, y_;
    std::size_t sigma_;
    retention keep_;
    std::size_t rows_, cols_;
    unsigned f_ = 3;
    std::size_t ell_ = 1, segs_ = 1, slot_cells_ = 1;
    address xbase_ = 0, ybase_ = 0, diags_ = 0, ret_ = 0;
    WideWord full_;
    std::optional<u64> length_;

    static std::size_t string_cells(const WideConfig& c, std::size_t len, unsigned f) {
        return (len * f + c.w - 1) / c.w + c.k + 2;
    }

    std::size_t h_lo(std::size_t d) const { return d > rows_ + 1 ? d - rows_ : 1; }
    std::size_t v_lo(std::size_t d) const { return d > rows_ ? d - rows_ : 0; }
    std::size_t h_len(std::size_t d) const {
        const std::size_t hi = std::min(cols_, d), lo = h_lo(d);
        return hi >= lo ? hi - lo + 1 : 0;
    }
    std::size_t v_len(std::size_t d) const {
        if (d == 0) return 0;
        const std::size_t hi = std::min(cols_, d - 1), lo = v_lo(d);
        return hi >= lo ? hi - lo + 1 : 0;
    }

    address h_slot(std::size_t d) const {
        if (keep_ == retention::full) return diags_ + (2 * d) * slot_cells_;
        return diags_ + (d % 2) * slot_cells_;
    }
    address v_slot(std::size_t d) const {
        if (keep_ == retention::full) return diags_ + (2 * d + 1) * slot_cells_;
        return diags_ + (2 + d % 2) * slot_cells_;
    }
    address h_slot_checked(std::size_t d) const {
        check_retained(d);
        return h_slot(d);
    }
    address v_slot_checked(std::size_t d) const {
        check_retained(d);
        return v_slot(d);
    }
    void check_retained(std::size_t d) const {
        if (!length_) throw precondition_error("lcs: diagonals are only available after length()");
        if (d < 1 || d > rows_ + cols_) throw domain_error("lcs: diagonal index out of range");
        if (keep_ != retention::full && d + 1 < rows_ + cols_)
            throw precondition_error("lcs: diagonal " + std::to_string(d) + " was not retained");
    }
    void require_table(std::size_t i, std::size_t j) {
        if (i < 1 || i > rows_ || j < 1 || j > cols_) throw domain_error("lcs: cell out of range");
        check_retained(i + j);
    }

    void store_string(address base, const std::vector<symbol>& s) {
        const unsigned w = m_->config().w;
        std::vector<u64> cells((s.size() * f_ + w - 1) / w, 0);
        for (std::size_t p = 0; p < s.size(); ++p) {
            const std::size_t bit = p * f_;
            cells[bit / w] |= (u64{s[p]} << (bit % w)) & m_->config().block_mask();
            if (bit % w + f_ > w) cells[bit / w + 1] |= u64{s[p]} >> (w - bit % w);
        }
        m_->tick(s.size());
        for (std::size_t i = 0; i < cells.size(); ++i) m_->store(base + i, cells[i]);
    }

    /// Fields first.. of a packed string, masked by `valid`.
    WideWord load_fields(address base, std::size_t first, const WideWord& valid) {
        const unsigned w = m_->config().w;
        const std::size_t bit = first * f_;
        const address cell = base + bit / w;
        const unsigned r = static_cast<unsigned>(bit % w);
        WideWord out = m_->read_word(cell);
        if (r != 0) out = m_->or_(m_->to_low(out, r), m_->to_high(m_->read_word(cell + 1), w - r));
        return m_->and_(out, valid);
    }

    /// Charged scalar read of field r of a stored diagonal.
    u64 field_at(address slot, std::size_t r) {
        const WideConfig& c = m_->config();
        const std::size_t seg = r / ell_, bit = (r % ell_) * f_;
        const address cell = slot + seg * c.k + bit / c.w;
        const unsigned off = static_cast<unsigned>(bit % c.w);
        u64 v = m_->load(cell) >> off;
        if (off + f_ > c.w) v |= m_->load(cell + 1) << (c.w - off);
        m_->tick(2);
        return v & WideWord::low_mask(f_ - 1);
    }

    std::vector<u64> diagonal(address slot, std::size_t len) const {
        const WideConfig& c = m_->config();
        std::vector<u64> out(len);
        for (std::size_t r = 0; r < len; ++r) {
            const std::size_t seg = r / ell_, bit = (r % ell_) * f_;
            const address cell = slot + seg * c.k + bit / c.w;
            const unsigned off = static_cast<unsigned>(bit % c.w);
            u64 v = m_->peek(cell) >> off;
            if (off + f_ > c.w) v |= m_->peek(cell + 1) << (c.w - off);
            out[r] = v & WideWord::low_mask(f_ - 1);
        }
        return out;
    }
};

inline u64 lcs_length(Machine& m, std::span<const symbol> x, std::span<const symbol> y, std::size_t sigma) {
    LcsDiagonals run(m, x, y, sigma, retention::rolling);
    return run.length();
}

inline std::vector<symbol> lcs_recover(Machine& m, std::span<const symbol> x, std::span<const symbol> y,
                                       std::size_t sigma) {
    LcsDiagonals run(m, x, y, sigma, retention::full);
    return run.recover();
}

} // namespace uwram
