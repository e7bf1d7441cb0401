#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "uwram/lcs.hpp"
#include "uwram/oracles.hpp"

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

struct Rig {
    Machine m;
    LcsDiagonals lcs;
    Rig(const WideConfig& c, const std::vector<symbol>& x, const std::vector<symbol>& y, std::size_t sigma,
        retention keep)
        : m(c, LcsDiagonals::cells_needed(c, x.size(), y.size(), sigma, keep)), lcs(m, x, y, sigma, keep) {}
};

} // namespace

TEST(LcsLength, AbbabAabbba) {
    Rig r({16, 4}, enc("abbab"), enc("aabbba"), 2, retention::full);
    EXPECT_EQ(r.lcs.length(), 4u);
    EXPECT_EQ(r.lcs.field_bits(), 3u);
    EXPECT_EQ(r.lcs.h_diagonal(6), (std::vector<u64>{1, 1, 1, 0, 0, 0}));
}

TEST(LcsLength, EmptyAndSmallConfigs) {
    Machine m({8, 2}, 256);
    std::vector<symbol> empty;
    EXPECT_EQ(lcs_length(m, empty, enc("abc"), 3), 0u);
    for (const WideConfig& c : {WideConfig{8, 1}, WideConfig{8, 2}, WideConfig{64, 1}}) {
        Machine mm(c, LcsDiagonals::cells_needed(c, 5, 6, 2, retention::rolling));
        EXPECT_EQ(lcs_length(mm, enc("abbab"), enc("aabbba"), 2), 4u);
    }
}

TEST(LcsLength, SymbolOutsideAlphabet) {
    Machine m({16, 4}, 256);
    EXPECT_THROW(lcs_length(m, enc("abc"), enc("ab"), 2), domain_error);
}

TEST(LcsDiagonalsTable, EveryCellMatchesOracle) {
    std::mt19937_64 rng(81);
    const std::vector<WideConfig> cfgs{{8, 2}, {16, 3}, {32, 4}, {64, 2}};
    for (int it = 0; it < 40; ++it) {
        const std::size_t sigma = std::vector<std::size_t>{2, 4, 26}[it % 3];
        const auto x = random_string(rng, 1 + rng() % 64, sigma);
        const auto y = random_string(rng, 1 + rng() % 64, sigma);
        const WideConfig c = cfgs[it % cfgs.size()];
        if (c.w == 8 && LcsDiagonals::cells_needed(c, x.size(), y.size(), sigma, retention::full) > 256) continue;
        Rig r(c, x, y, sigma, retention::full);
        const auto want = oracle::lcs(x, y);
        ASSERT_EQ(r.lcs.length(), want.length());
        for (std::size_t i = 1; i <= x.size(); ++i)
            for (std::size_t j = 1; j <= y.size(); ++j) {
                ASSERT_EQ(r.lcs.h(i, j), want.h(i, j)) << i << "," << j;
                ASSERT_EQ(r.lcs.v(i, j), want.v(i, j)) << i << "," << j;
            }
        for (std::size_t d = 1; d <= x.size() + y.size(); ++d) {
            for (u64 v : r.lcs.h_diagonal(d)) ASSERT_LE(v, 1u);
            for (u64 v : r.lcs.v_diagonal(d)) ASSERT_LE(v, 1u);
        }
    }
}

TEST(LcsLength, RandomPairsMatchOracle) {
    std::mt19937_64 rng(82);
    const WideConfig c{64, 8};
    for (int it = 0; it < 300; ++it) {
        const std::size_t sigma = std::vector<std::size_t>{2, 4, 26}[it % 3];
        const auto x = random_string(rng, rng() % 300, sigma);
        const auto y = random_string(rng, rng() % 300, sigma);
        Machine m(c, LcsDiagonals::cells_needed(c, x.size(), y.size(), sigma, retention::rolling));
        ASSERT_EQ(lcs_length(m, x, y, sigma), oracle::lcs(x, y).length()) << it;
    }
}

TEST(LcsRecover, Witnesses) {
    const WideConfig c{16, 4};
    auto check = [&](const std::vector<symbol>& x, const std::vector<symbol>& y, std::size_t sigma) {
        Machine m(c, LcsDiagonals::cells_needed(c, x.size(), y.size(), sigma, retention::full));
        const auto s = lcs_recover(m, x, y, sigma);
        EXPECT_TRUE(oracle::is_subsequence(s, x));
        EXPECT_TRUE(oracle::is_subsequence(s, y));
        EXPECT_EQ(s.size(), oracle::lcs(x, y).length());
        return s;
    };
    EXPECT_EQ(check(enc("abbab"), enc("aabbba"), 2).size(), 4u);
    EXPECT_EQ(check(enc("abcab"), enc("abcab"), 3), enc("abcab"));
    EXPECT_TRUE(check(enc("aaa"), enc("bbbb"), 2).empty());

    std::mt19937_64 rng(83);
    for (int it = 0; it < 50; ++it) {
        const std::size_t sigma = 2 + rng() % 5;
        check(random_string(rng, rng() % 60, sigma), random_string(rng, rng() % 60, sigma), sigma);
    }
}

TEST(LcsRecover, RequiresRetention) {
    const WideConfig c{16, 4};
    Rig r(c, enc("abbab"), enc("aabbba"), 2, retention::rolling);
    EXPECT_THROW(r.lcs.recover(), precondition_error);
    r.lcs.length();
    EXPECT_THROW(r.lcs.h_diagonal(3), precondition_error);
}
