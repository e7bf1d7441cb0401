#pragma once

// Exact pattern matching on wide words.
//
//   shift_and_wide      one automaton whose state vector spans ceil(m / kw) wide words
//   shift_and_parallel  k automata of w bits, block j scanning text segment j
//   shift_or            complemented state, wide or parallel
//   bmh_wide            Horspool windows compared kw bits at a time
//
// Inputs are loaded into machine memory uncharged; table construction is
// charged and reported apart from the search itself.  Every matcher returns
// sorted 1-based starting positions.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "uwram/error.hpp"
#include "uwram/lcs.hpp"
#include "uwram/machine.hpp"
#include "uwram/oracles.hpp"
#include "uwram/static_prefix_sums.hpp"

namespace uwram {

struct SearchReport {
    std::vector<std::size_t> occurrences;
    std::size_t occ = 0;
    CostCounter preprocessing;
    CostCounter search;
    std::vector<std::size_t> windows; ///< bmh only: 1-based start of every window examined
};

enum class search_algo { shift_and, shift_and_parallel, shift_or, shift_or_parallel, bmh };

namespace detail {

inline void check_search(std::span<const symbol> text, std::span<const symbol> pattern, std::size_t sigma) {
    if (pattern.empty()) throw domain_error("search: empty pattern");
    check_symbols(text, sigma, "text");
    check_symbols(pattern, sigma, "pattern");
}

inline std::size_t wide_segments(const WideConfig& c, std::size_t m) {
    return std::max<std::size_t>(1, (m + c.bits() - 1) / c.bits());
}

inline std::size_t parallel_segment(const WideConfig& c, std::size_t n) { return (n + c.k - 1) / c.k; }

inline unsigned setbit_key_bits(const WideConfig& c) { return std::min(c.w / 2, 8u); }

inline unsigned bmh_symbol_bits(std::size_t sigma) { return std::max(1u, symbol_bits(sigma)); }

inline std::size_t bmh_text_cells(const WideConfig& c, std::size_t n, std::size_t sigma) {
    return (n * bmh_symbol_bits(sigma) + c.w - 1) / c.w + 2 * c.k;
}

inline std::size_t bmh_segment_symbols(const WideConfig& c, std::size_t sigma) {
    return c.bits() / bmh_symbol_bits(sigma);
}

inline SearchReport finish(SearchReport r, Machine& m, const CostCounter& start, const CostCounter& mid) {
    r.preprocessing = mid - start;
    r.search = m.cost() - mid;
    std::sort(r.occurrences.begin(), r.occurrences.end());
    if (std::adjacent_find(r.occurrences.begin(), r.occurrences.end()) != r.occurrences.end())
        throw precondition_error("search: an occurrence was reported twice");
    r.occ = r.occurrences.size();
    return r;
}

/// Wide single-automaton Shift-And or Shift-Or.
inline SearchReport shift_wide(Machine& m, std::span<const symbol> text, std::span<const symbol> pattern,
                               std::size_t sigma, bool complemented) {
    check_search(text, pattern, sigma);
    const WideConfig& c = m.config();
    const std::size_t n = text.size(), len = pattern.size(), k = c.k;
    const std::size_t S = wide_segments(c, len);
    const CostCounter start = m.cost();
    SearchReport r;

    const address text_at = m.allocate(std::max<std::size_t>(n, 1));
    const address table = m.allocate(sigma * S * k);
    for (std::size_t i = 0; i < n; ++i) m.poke(text_at + i, text[i]);

    // Y[c] has bit j set iff P[j+1] = c; the complemented table is stored for Shift-Or
    if (complemented)
        for (std::size_t q = 0; q < sigma * S * k; ++q) m.store(table + q, c.block_mask());
    for (std::size_t j = 0; j < len; ++j) {
        const address cell = table + pattern[j] * S * k + j / c.w;
        const u64 bit = u64{1} << (j % c.w);
        m.store(cell, complemented ? m.load(cell) & ~bit : m.load(cell) | bit);
        m.tick(2);
    }
    WideWord check(c);
    check.set_bit((len - 1) % c.bits());
    WideWord one(c);
    one.set_limb(0, 1);
    std::vector<WideWord> state(S, complemented ? WideWord::broadcast(c, c.block_mask()) : WideWord(c));
    const CostCounter mid = m.cost();

    const std::size_t kw = c.bits();
    for (std::size_t i = 0; i < n; ++i) {
        const address row = table + m.load(text_at + i) * S * k;
        m.tick(2);
        for (std::size_t s = S; s-- > 0;) {
            const WideWord y = m.read_word(row + s * k);
            WideWord moved = m.to_high(state[s], 1);
            if (s > 0) moved = m.or_(moved, m.to_low(state[s - 1], kw - 1));
            else if (!complemented) moved = m.or_(moved, one);
            state[s] = complemented ? m.or_(moved, y) : m.and_(moved, y);
        }
        const bool hit = m.test(state[S - 1], check) != complemented;
        if (hit && i + 1 >= len) {
            r.occurrences.push_back(i + 2 - len);
            m.tick();
        }
    }
    return finish(std::move(r), m, start, mid);
}

/// k automata of w bits, automaton j scanning positions j*n' + 1 onwards.
inline SearchReport shift_parallel(Machine& m, std::span<const symbol> text, std::span<const symbol> pattern,
                                   std::size_t sigma, bool complemented) {
    check_search(text, pattern, sigma);
    const WideConfig& c = m.config();
    const std::size_t n = text.size(), len = pattern.size(), k = c.k;
    if (len > c.w)
        throw precondition_error("search: pattern of " + std::to_string(len) +
                                 " symbols exceeds w; use the wide matcher");
    const CostCounter start = m.cost();
    SearchReport r;
    if (len > n) return finish(std::move(r), m, start, start);

    const std::size_t seg = parallel_segment(c, n);
    const std::size_t padded = k * seg + len; // positions 1 .. k*seg + len - 1
    if (c.w < 64 && padded >= (u64{1} << c.w))
        throw domain_error("search: text positions do not fit in w bits");
    const symbol sentinel = static_cast<symbol>(sigma);
    const address text_at = m.allocate(padded);
    for (std::size_t p = 1; p < padded; ++p) m.poke(text_at + p, p <= n ? text[p - 1] : sentinel);

    const address table = m.allocate(sigma + 1);
    const u64 outside = c.block_mask() & ~WideWord::low_mask(static_cast<unsigned>(len));
    for (std::size_t s = 0; s < sigma; ++s) m.store(table + s, complemented ? c.block_mask() : 0);
    m.store(table + sigma, complemented ? c.block_mask() : 0);
    for (std::size_t j = 0; j < len; ++j) {
        const address cell = table + pattern[j];
        m.store(cell, complemented ? (m.load(cell) & ~(u64{1} << j)) | outside : m.load(cell) | (u64{1} << j));
        m.tick(2);
    }

    // positions of the set bits of every b-bit key: count, then the positions
    const unsigned b = setbit_key_bits(c);
    const address setbits = m.allocate((std::size_t{1} << b) * (b + 1));
    for (u64 key = 0; key < (u64{1} << b); ++key) {
        const address row = setbits + key * (b + 1);
        u64 cnt = 0;
        for (unsigned q = 0; q < b; ++q)
            if ((key >> q) & 1) m.store(row + 1 + cnt++, q);
        m.store(row, cnt);
        m.tick(b);
    }
    const address scratch = m.allocate(k);

    const WideWord ones = WideWord::broadcast(c, 1);
    const WideWord check = WideWord::broadcast(c, u64{1} << (len - 1));
    const WideWord keep_high = WideWord::broadcast(c, c.block_mask() & ~u64{1});
    WideWord pos = lane_ramp(c, 1, seg);
    WideWord state = complemented ? WideWord::broadcast(c, c.block_mask()) : WideWord(c);
    const CostCounter mid = m.cost();

    const std::size_t chunks = (k + c.w - 1) / c.w;
    for (std::size_t step = 0; step + 1 < seg + len; ++step) {
        const WideWord chars = m.read_content(pos, text_at);
        const WideWord y = m.read_content(chars, table);
        if (complemented)
            state = m.or_(m.and_(m.to_high(state, 1), keep_high), y);
        else
            state = m.and_(m.or_(m.to_high(state, 1), ones), y);
        const WideWord hits = m.and_(complemented ? m.not_(state) : state, check);
        if (m.nonzero(hits)) {
            m.write_word(m.compress(m.to_low(hits, len - 1)), scratch);
            for (std::size_t t = 0; t < chunks; ++t) {
                const u64 word = m.load(scratch + t);
                for (unsigned at = 0; at < c.w && (word >> at) != 0; at += b) {
                    const address row = setbits + ((word >> at) & WideWord::low_mask(b)) * (b + 1);
                    const u64 cnt = m.load(row);
                    m.tick(2);
                    for (u64 q = 0; q < cnt; ++q) {
                        const std::size_t block = t * c.w + at + m.load(row + 1 + q);
                        const std::size_t end = block * seg + 1 + step;
                        m.tick(3);
                        if (end >= len && end <= n) r.occurrences.push_back(end + 1 - len);
                    }
                }
            }
        }
        pos = m.add(pos, ones);
    }
    return finish(std::move(r), m, start, mid);
}

/// Symbol i of a text packed at b bits per symbol.
inline u64 packed_symbol(Machine& m, address base, std::size_t i, unsigned b) {
    const unsigned w = m.config().w;
    const std::size_t bit = i * b;
    const unsigned off = static_cast<unsigned>(bit % w);
    u64 v = m.load(base + bit / w) >> off;
    if (off + b > w) v |= m.load(base + bit / w + 1) << (w - off);
    m.tick(4);
    return v & WideWord::low_mask(b);
}

} // namespace detail

inline SearchReport shift_and_wide(Machine& m, std::span<const symbol> text, std::span<const symbol> pattern,
                                   std::size_t sigma) {
    return detail::shift_wide(m, text, pattern, sigma, false);
}

inline SearchReport shift_and_parallel(Machine& m, std::span<const symbol> text,
                                       std::span<const symbol> pattern, std::size_t sigma) {
    return detail::shift_parallel(m, text, pattern, sigma, false);
}

inline SearchReport shift_or_wide(Machine& m, std::span<const symbol> text, std::span<const symbol> pattern,
                                  std::size_t sigma) {
    return detail::shift_wide(m, text, pattern, sigma, true);
}

inline SearchReport shift_or_parallel(Machine& m, std::span<const symbol> text,
                                      std::span<const symbol> pattern, std::size_t sigma) {
    return detail::shift_parallel(m, text, pattern, sigma, true);
}

/// Horspool with every window compared by segments of floor(kw / b) symbols, last segment first.
inline SearchReport bmh_wide(Machine& m, std::span<const symbol> text, std::span<const symbol> pattern,
                             std::size_t sigma) {
    detail::check_search(text, pattern, sigma);
    const WideConfig& c = m.config();
    const std::size_t n = text.size(), len = pattern.size(), k = c.k;
    const unsigned b = detail::bmh_symbol_bits(sigma);
    const std::size_t per = detail::bmh_segment_symbols(c, sigma);
    const std::size_t S = (len + per - 1) / per;
    const std::size_t kw = c.bits();
    const CostCounter start = m.cost();
    SearchReport r;

    const address text_at = m.allocate(detail::bmh_text_cells(c, n, sigma));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t bit = i * b;
        const address cell = text_at + bit / c.w;
        m.poke(cell, m.peek(cell) | ((u64{text[i]} << (bit % c.w)) & c.block_mask()));
        if (bit % c.w + b > c.w) m.poke(cell + 1, m.peek(cell + 1) | (u64{text[i]} >> (c.w - bit % c.w)));
    }

    const address pat = m.allocate(S * k);
    for (std::size_t j = 0; j < len; ++j) {
        const std::size_t bit = (j / per) * kw + (j % per) * b;
        const address cell = pat + bit / c.w;
        m.store(cell, m.load(cell) | ((u64{pattern[j]} << (bit % c.w)) & c.block_mask()));
        if (bit % c.w + b > c.w) m.store(cell + 1, m.load(cell + 1) | (u64{pattern[j]} >> (c.w - bit % c.w)));
        m.tick(3);
    }
    const address jump = m.allocate(sigma);
    for (std::size_t s = 0; s < sigma; ++s) m.store(jump + s, len);
    for (std::size_t j = 1; j < len; ++j) m.store(jump + pattern[j - 1], len - j);
    m.tick(len);

    const WideWord full = WideWord::broadcast(c, c.block_mask());
    std::vector<WideWord> masks(S);
    for (std::size_t s = 0; s < S; ++s) {
        const std::size_t bits = std::min(per, len - s * per) * b;
        masks[s] = uwram::to_low(full, kw - bits);
    }
    const CostCounter mid = m.cost();

    for (std::size_t i = 0; i + len <= n;) {
        r.windows.push_back(i + 1);
        bool matched = true;
        for (std::size_t s = S; s-- > 0;) {
            const std::size_t bit = (i + s * per) * b;
            const address cell = text_at + bit / c.w;
            const unsigned off = static_cast<unsigned>(bit % c.w);
            m.tick(3);
            WideWord window = m.read_word(cell);
            if (off != 0) window = m.or_(m.to_low(window, off), m.to_high(m.read_word(cell + k), kw - off));
            window = m.and_(window, masks[s]);
            if (m.nonzero(m.sub(window, m.read_word(pat + s * k)))) {
                matched = false;
                break;
            }
        }
        if (matched) r.occurrences.push_back(i + 1);
        i += m.load(jump + detail::packed_symbol(m, text_at, i + len - 1, b));
        m.tick(2);
    }
    return detail::finish(std::move(r), m, start, mid);
}

inline SearchReport search(Machine& m, search_algo algo, std::span<const symbol> text,
                           std::span<const symbol> pattern, std::size_t sigma) {
    switch (algo) {
    case search_algo::shift_and: return shift_and_wide(m, text, pattern, sigma);
    case search_algo::shift_and_parallel: return shift_and_parallel(m, text, pattern, sigma);
    case search_algo::shift_or: return shift_or_wide(m, text, pattern, sigma);
    case search_algo::shift_or_parallel: return shift_or_parallel(m, text, pattern, sigma);
    case search_algo::bmh: return bmh_wide(m, text, pattern, sigma);
    }
    throw config_error("search: unknown algorithm");
}

/// Cells a machine needs for one search (scratch cell included).
inline std::size_t search_cells(const WideConfig& c, search_algo algo, std::size_t n, std::size_t len,
                                std::size_t sigma) {
    switch (algo) {
    case search_algo::shift_and:
    case search_algo::shift_or:
        return 1 + std::max<std::size_t>(n, 1) + sigma * detail::wide_segments(c, len) * c.k;
    case search_algo::shift_and_parallel:
    case search_algo::shift_or_parallel: {
        const unsigned b = detail::setbit_key_bits(c);
        return 1 + c.k * detail::parallel_segment(c, n) + len + sigma + 1 +
               (std::size_t{1} << b) * (b + 1) + c.k;
    }
    case search_algo::bmh: {
        const std::size_t per = detail::bmh_segment_symbols(c, sigma);
        return 1 + detail::bmh_text_cells(c, n, sigma) + (len + per - 1) / per * c.k + sigma;
    }
    }
    return 1;
}

} // namespace uwram
