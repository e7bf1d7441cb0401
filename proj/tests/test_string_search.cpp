#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "uwram/oracles.hpp"
#include "uwram/string_search.hpp"

using namespace uwram;

namespace {

std::vector<symbol> enc(const std::string& s) {
    std::vector<symbol> out;
    for (char c : s) out.push_back(static_cast<symbol>(c - 'a'));
    return out;
}

std::vector<symbol> random_string(std::mt19937_64& rng, std::size_t len, std::size_t sigma) {
    std::vector<symbol> s(len);
    for (auto& c : s) c = static_cast<symbol>(rng() % sigma);
    return s;
}

const search_algo all_algos[] = {search_algo::shift_and, search_algo::shift_and_parallel, search_algo::shift_or,
                                 search_algo::shift_or_parallel, search_algo::bmh};

bool is_parallel(search_algo a) {
    return a == search_algo::shift_and_parallel || a == search_algo::shift_or_parallel;
}

SearchReport run(const WideConfig& c, search_algo a, const std::vector<symbol>& t, const std::vector<symbol>& p,
                 std::size_t sigma) {
    Machine m(c, search_cells(c, a, t.size(), p.size(), sigma));
    return search(m, a, t, p, sigma);
}

} // namespace

TEST(Search, Examples) {
    for (search_algo a : all_algos) {
        SCOPED_TRACE(static_cast<int>(a));
        EXPECT_EQ(run({16, 4}, a, enc("aabbba"), enc("ab"), 2).occurrences, (std::vector<std::size_t>{2}));
        EXPECT_EQ(run({16, 4}, a, enc("abcab"), enc("abcab"), 3).occurrences, (std::vector<std::size_t>{1}));
        const auto none = run({16, 4}, a, enc("ab"), enc("abc"), 3);
        EXPECT_EQ(none.occ, 0u);
        EXPECT_EQ(run({16, 4}, a, enc("aaaa"), enc("b"), 2).occ, 0u);
        const auto all = run({16, 4}, a, std::vector<symbol>(37, 0), {0}, 2);
        EXPECT_EQ(all.occ, 37u);
    }
}

TEST(Search, Errors) {
    Machine m({16, 4}, 4096);
    const auto t = enc("abab");
    for (search_algo a : all_algos) EXPECT_THROW(search(m, a, t, {}, 2), domain_error);
    EXPECT_THROW(shift_and_wide(m, enc("abc"), enc("a"), 2), domain_error);
    EXPECT_THROW(shift_and_parallel(m, std::vector<symbol>(40, 0), std::vector<symbol>(17, 0), 2),
                 precondition_error);
}

TEST(Search, RandomMatchesOracle) {
    std::mt19937_64 rng(101);
    const std::vector<WideConfig> cfgs{{16, 4}, {32, 8}, {64, 4}, {16, 16}};
    for (int it = 0; it < 400; ++it) {
        const WideConfig c = cfgs[it % cfgs.size()];
        const std::size_t sigma = std::vector<std::size_t>{2, 4, 26}[it % 3];
        const std::vector<std::size_t> lens{1, 2, c.w / 2, c.w, 2 * c.w, c.bits() / 2};
        const std::size_t len = lens[rng() % lens.size()];
        const std::size_t n = rng() % 3000;
        auto t = random_string(rng, n, sigma);
        const auto p = random_string(rng, len, sigma);
        // plant a few copies so occurrences exist
        for (int r = 0; r < 3 && n >= len; ++r) {
            const std::size_t at = rng() % (n - len + 1);
            std::copy(p.begin(), p.end(), t.begin() + at);
        }
        const auto want = oracle::naive_search(t, p);
        for (search_algo a : all_algos) {
            if (is_parallel(a) && (len > c.w || c.w < 64 && c.k * ((n + c.k - 1) / c.k) + len >= (1u << c.w)))
                continue;
            const auto got = run(c, a, t, p, sigma);
            ASSERT_EQ(got.occurrences, want) << it << " algo " << static_cast<int>(a);
            ASSERT_EQ(got.occ, want.size());
        }
    }
}

TEST(Search, ParallelBoundaryMatchReportedOnce) {
    const WideConfig c{16, 4};
    const std::size_t n = 40, seg = 10;
    for (std::size_t len : {2u, 5u, 16u}) {
        std::vector<symbol> t(n, 0);
        std::vector<symbol> p(len, 1);
        // occurrences straddling every segment boundary
        for (std::size_t j = 1; j < 4; ++j)
            for (std::size_t q = 0; q < len && j * seg - len / 2 + q < n; ++q) t[j * seg - len / 2 + q] = 1;
        if (len == 16) std::fill(t.begin() + 2, t.begin() + 38, 1);
        const auto want = oracle::naive_search(t, p);
        ASSERT_FALSE(want.empty());
        for (search_algo a : {search_algo::shift_and_parallel, search_algo::shift_or_parallel})
            EXPECT_EQ(run(c, a, t, p, 2).occurrences, want) << len;
    }
}

TEST(Search, BmhTraceMatchesScalar) {
    EXPECT_EQ(oracle::bmh_jump_table(enc("abbab"), 3), (std::vector<std::size_t>{1, 2, 5}));
    std::mt19937_64 rng(102);
    for (int it = 0; it < 300; ++it) {
        const WideConfig c = it % 2 ? WideConfig{16, 2} : WideConfig{64, 4};
        const std::size_t sigma = std::vector<std::size_t>{2, 4, 26, 5}[it % 4];
        const auto t = random_string(rng, rng() % 2000, sigma);
        const auto p = random_string(rng, 1 + rng() % 100, sigma);
        const auto got = run(c, search_algo::bmh, t, p, sigma);
        const auto want = oracle::bmh_scalar(t, p, sigma);
        ASSERT_EQ(got.windows, want.windows) << it;
        ASSERT_EQ(got.occurrences, want.occurrences) << it;
    }
}

TEST(SearchCost, WideShiftAndScalesWithK) {
    // m = kw: one wide segment on k blocks against k segments on one block
    const std::size_t k = 16;
    const unsigned w = 32;
    std::mt19937_64 rng(103);
    const auto t = random_string(rng, 2000, 4);
    const auto p = random_string(rng, k * w, 4);
    const auto wide = run({w, k}, search_algo::shift_and, t, p, 4);
    const auto narrow = run({w, 1}, search_algo::shift_and, t, p, 4);
    const double ratio = double(narrow.search.wide()) / double(wide.search.wide());
    EXPECT_GE(ratio, 0.8 * k);
    EXPECT_LE(ratio, 1.2 * k);
}

TEST(SearchCost, WideOpsBounded) {
    std::mt19937_64 rng(104);
    for (std::size_t len : {8u, 64u, 300u}) {
        const WideConfig c{16, 4};
        const auto t = random_string(rng, 1000, 2);
        const auto p = random_string(rng, len, 2);
        const std::size_t S = (len + c.bits() - 1) / c.bits();
        EXPECT_LE(run(c, search_algo::shift_and, t, p, 2).search.wide(), 6 * t.size() * S + 6);
        // all-equal text is the worst case for window comparison
        const std::vector<symbol> flat(1000, 0), flatp(len, 0);
        const std::size_t segs = (len + c.bits() - 1) / c.bits();
        EXPECT_LE(run(c, search_algo::bmh, flat, flatp, 2).search.wide(), 10 * flat.size() * segs + 10);
    }
}
