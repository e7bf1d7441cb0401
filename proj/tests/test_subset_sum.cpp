#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "uwram/oracles.hpp"
#include "uwram/subset_sum.hpp"

using namespace uwram;

namespace {

bool run(const WideConfig& c, const std::vector<u64>& a, u64 t) {
    Machine m(c, SubsetSum::cells_needed(c, t));
    return subset_sum(m, a, t);
}

} // namespace

TEST(SubsetSum, Examples) {
    const WideConfig c{8, 4};
    EXPECT_TRUE(run(c, {}, 0));
    EXPECT_TRUE(run(c, {2, 3, 7}, 5));
    EXPECT_FALSE(run(c, {2, 4}, 7));
    EXPECT_TRUE(run(c, {5, 9}, 0));
    EXPECT_FALSE(run(c, {}, 3));
}

TEST(SubsetSum, MatchesBruteForce) {
    std::mt19937_64 rng(51);
    const std::vector<WideConfig> cfgs{{8, 1}, {8, 4}, {16, 3}, {64, 2}};
    for (int it = 0; it < 1000; ++it) {
        std::vector<u64> a(rng() % 21);
        for (auto& x : a) x = rng() % 60;
        const u64 t = rng() % 201;
        ASSERT_EQ(run(cfgs[it % cfgs.size()], a, t), oracle::subset_sum_brute(a, t)) << it;
    }
}

TEST(SubsetSum, MatchesDpOnLargerInstances) {
    std::mt19937_64 rng(52);
    for (int it = 0; it < 10; ++it) {
        std::vector<u64> a(50 + rng() % 150);
        for (auto& x : a) x = 1 + rng() % 2000;
        const u64 t = 1000 + rng() % 9000;
        ASSERT_EQ(run({64, 16}, a, t), oracle::subset_sum_dp(a, t));
    }
}

TEST(SubsetSum, EveryRowMatchesScalarDp) {
    std::mt19937_64 rng(53);
    const WideConfig c{8, 3};
    std::vector<u64> a(12);
    for (auto& x : a) x = rng() % 70;
    const u64 t = 150;
    const auto rows = oracle::subset_sum_rows(a, t);
    Machine m(c, SubsetSum::cells_needed(c, t));
    SubsetSum s(m, t);
    ASSERT_EQ(s.row(), rows[0]);
    for (std::size_t i = 0; i < a.size(); ++i) {
        s.add_item(a[i]);
        ASSERT_EQ(s.row(), rows[i + 1]) << "after item " << i;
    }
}

TEST(SubsetSum, WideOpsScaleDownByK) {
    std::mt19937_64 rng(54);
    std::vector<u64> a(8);
    for (auto& x : a) x = 1 + rng() % 5000;
    const u64 t = 1 << 16;
    Machine narrow({64, 1}, SubsetSum::cells_needed({64, 1}, t));
    Machine wide({64, 16}, SubsetSum::cells_needed({64, 16}, t));
    subset_sum(narrow, a, t);
    subset_sum(wide, a, t);
    const double ratio = double(narrow.cost().wide()) / double(wide.cost().wide());
    EXPECT_GT(ratio, 0.8 * 16);
    EXPECT_LT(ratio, 1.2 * 16);
}
