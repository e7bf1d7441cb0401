#pragma once

// Plain scalar reference implementations.  Nothing in here touches WideWord
// or Machine; these are the independent side of every differential check.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uwram/error.hpp"

namespace uwram::oracle {

using symbol = std::uint32_t;

inline constexpr std::size_t subset_brute_max_items = 22;
inline constexpr std::uint64_t dp_cell_budget = 10'000'000;

/// Exhaustive search over all 2^n subsets.
inline bool subset_sum_brute(std::span<const std::uint64_t> weights, std::uint64_t target) {
    if (weights.size() > subset_brute_max_items)
        throw budget_error("subset_sum_brute: 2^" + std::to_string(weights.size()) +
                           " subsets exceed the 2^22 budget");
    const std::uint64_t n = weights.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::uint64_t s = 0;
        for (std::uint64_t i = 0; i < n; ++i)
            if ((mask >> i) & 1) s += weights[i];
        if (s == target) return true;
    }
    return false;
}

/// Classic reachability table; returns every row C_0..C_n (each of t+1 flags).
inline std::vector<std::vector<bool>> subset_sum_rows(std::span<const std::uint64_t> weights,
                                                      std::uint64_t target) {
    if ((weights.size() + 1) * (target + 1) > dp_cell_budget)
        throw budget_error("subset_sum_dp: n*t exceeds the 10^7 cell budget");
    std::vector<std::vector<bool>> rows;
    std::vector<bool> row(target + 1, false);
    row[0] = true;
    rows.push_back(row);
    for (std::uint64_t a : weights) {
        std::vector<bool> next = row;
        for (std::uint64_t j = a; j <= target; ++j)
            if (row[j - a]) next[j] = true;
        row = std::move(next);
        rows.push_back(row);
    }
    return rows;
}

inline bool subset_sum_dp(std::span<const std::uint64_t> weights, std::uint64_t target) {
    return subset_sum_rows(weights, target).back()[target];
}

struct item {
    std::uint64_t weight = 0;
    std::uint64_t value = 0;
};

/// Bellman's O(nb) table.
inline std::uint64_t knapsack_dp(std::span<const item> items, std::uint64_t capacity) {
    if ((items.size() + 1) * (capacity + 1) > dp_cell_budget)
        throw budget_error("knapsack_dp: n*b exceeds the 10^7 cell budget");
    std::vector<std::uint64_t> best(capacity + 1, 0);
    for (const item& it : items) {
        if (it.weight > capacity) continue;
        for (std::uint64_t j = capacity + 1; j-- > it.weight;)
            best[j] = std::max(best[j], best[j - it.weight] + it.value);
    }
    return best[capacity];
}

/// Full (|X|+1) x (|Y|+1) LCS table, c[i][j] = LCS of X[1..i], Y[1..j].
struct lcs_table {
    std::vector<std::vector<std::uint32_t>> c;

    std::uint32_t length() const { return c.back().back(); }
    int h(std::size_t i, std::size_t j) const { return int(c[i][j]) - int(c[i][j - 1]); }
    int v(std::size_t i, std::size_t j) const { return int(c[i][j]) - int(c[i - 1][j]); }
};

inline lcs_table lcs(std::span<const symbol> x, std::span<const symbol> y) {
    if ((x.size() + 1) * (y.size() + 1) > dp_cell_budget)
        throw budget_error("lcs_table: table exceeds the 10^7 cell budget");
    lcs_table t;
    t.c.assign(x.size() + 1, std::vector<std::uint32_t>(y.size() + 1, 0));
    for (std::size_t i = 1; i <= x.size(); ++i)
        for (std::size_t j = 1; j <= y.size(); ++j)
            t.c[i][j] = x[i - 1] == y[j - 1] ? t.c[i - 1][j - 1] + 1
                                             : std::max(t.c[i][j - 1], t.c[i - 1][j]);
    return t;
}

inline bool is_subsequence(std::span<const symbol> sub, std::span<const symbol> s) {
    std::size_t i = 0;
    for (symbol c : s)
        if (i < sub.size() && sub[i] == c) ++i;
    return i == sub.size();
}

/// Block counts, their inclusive prefix sums, and the per-position prefix counts.
struct prefix_sums_result {
    std::vector<std::uint64_t> block_counts;
    std::vector<std::uint64_t> block_prefix;
    std::vector<std::uint64_t> prefix; ///< prefix[q] = ones in bits[0..q]
};

inline prefix_sums_result prefix_sums(const std::vector<bool>& bits, std::size_t chunk) {
    if (chunk == 0) throw domain_error("prefix_sums: chunk must be positive");
    prefix_sums_result r;
    std::uint64_t run = 0;
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (q % chunk == 0) r.block_counts.push_back(0);
        if (bits[q]) {
            ++run;
            ++r.block_counts.back();
        }
        r.prefix.push_back(run);
    }
    std::uint64_t acc = 0;
    for (std::uint64_t c : r.block_counts) r.block_prefix.push_back(acc += c);
    return r;
}

// ---------------------------------------------------------------------------
// String search.

/// 1-based start positions of every occurrence, by direct comparison.
inline std::vector<std::size_t> naive_search(std::span<const symbol> text,
                                             std::span<const symbol> pattern) {
    if (pattern.empty()) throw domain_error("search: empty pattern");
    std::vector<std::size_t> out;
    if (pattern.size() > text.size()) return out;
    for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i)
        if (std::equal(pattern.begin(), pattern.end(), text.begin() + i)) out.push_back(i + 1);
    return out;
}

/// jump[c] = distance from the last occurrence of c in P[1..m-1] to the end.
inline std::vector<std::size_t> bmh_jump_table(std::span<const symbol> pattern, std::size_t sigma) {
    const std::size_t m = pattern.size();
    std::vector<std::size_t> jump(sigma, m);
    for (std::size_t j = 1; j + 1 <= m; ++j) jump.at(pattern[j - 1]) = m - j;
    return jump;
}

struct bmh_result {
    std::vector<std::size_t> occurrences;
    std::vector<std::size_t> windows; ///< 1-based start of every window examined
};

/// Horspool: backward character comparison, shift on the window's last character.
inline bmh_result bmh_scalar(std::span<const symbol> text, std::span<const symbol> pattern,
                             std::size_t sigma) {
    if (pattern.empty()) throw domain_error("search: empty pattern");
    const std::size_t n = text.size(), m = pattern.size();
    bmh_result r;
    if (m > n) return r;
    const auto jump = bmh_jump_table(pattern, sigma);
    std::size_t i = 0;
    while (i + m <= n) {
        r.windows.push_back(i + 1);
        std::size_t j = m;
        while (j > 0 && text[i + j - 1] == pattern[j - 1]) --j;
        if (j == 0) r.occurrences.push_back(i + 1);
        i += jump.at(text[i + m - 1]);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Data-structure traces.

enum class pq_op_kind { insert, erase, min, successor };

struct pq_op {
    pq_op_kind kind;
    std::uint64_t x = 0;
};

/// Expected outcome of one queue operation.
struct pq_outcome {
    std::optional<std::uint64_t> value; ///< query answer (min/successor)
    bool error = false;                 ///< erase of an absent element
};

inline std::vector<pq_outcome> pq_trace(std::span<const pq_op> ops, std::uint64_t universe) {
    std::set<std::uint64_t> s;
    std::vector<pq_outcome> out;
    for (const pq_op& op : ops) {
        if (op.kind != pq_op_kind::min && op.x >= universe)
            throw domain_error("pq trace: element " + std::to_string(op.x) + " outside universe");
        pq_outcome o;
        switch (op.kind) {
        case pq_op_kind::insert: s.insert(op.x); break;
        case pq_op_kind::erase:
            if (!s.erase(op.x)) o.error = true;
            break;
        case pq_op_kind::min:
            if (!s.empty()) o.value = *s.begin();
            break;
        case pq_op_kind::successor: {
            auto it = s.upper_bound(op.x);
            if (it != s.end()) o.value = *it;
            break;
        }
        }
        out.push_back(o);
    }
    return out;
}

enum class dps_op_kind { update, retrieve };
enum class combine_kind { add_mod, max };

struct dps_op {
    dps_op_kind kind;
    std::uint64_t index = 0;
    std::uint64_t value = 0;
};

/// Answers of every retrieve, by scanning the array.
inline std::vector<std::uint64_t> dps_trace(std::span<const dps_op> ops, std::size_t n,
                                            std::uint64_t universe, combine_kind op) {
    std::vector<std::uint64_t> a(n, 0);
    auto combine = [&](std::uint64_t x, std::uint64_t y) {
        return op == combine_kind::add_mod ? (x + y) % universe : std::max(x, y);
    };
    std::vector<std::uint64_t> out;
    for (const dps_op& o : ops) {
        if (o.index >= n) throw domain_error("dps trace: index out of range");
        if (o.kind == dps_op_kind::update) {
            if (o.value >= universe) throw domain_error("dps trace: value outside universe");
            a[o.index] = combine(a[o.index], o.value);
        } else {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i <= o.index; ++i) acc = combine(acc, a[i]);
            out.push_back(acc);
        }
    }
    return out;
}

} // namespace uwram::oracle
