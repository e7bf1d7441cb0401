#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "uwram/oracles.hpp"
#include "uwram/priority_queue.hpp"

using namespace uwram;
using oracle::pq_op;
using oracle::pq_op_kind;

namespace {

struct Rig {
    Machine m;
    PriorityQueue q;
    Rig(const WideConfig& c, unsigned depth)
        : m(c, PriorityQueue::cells_needed(c, depth)), q(m, depth) {}
};

} // namespace

TEST(PqModify, InsertThenDelete) {
    Rig r({16, 8}, 4);
    for (u64 x : {3, 9, 12}) r.q.insert(x);
    r.q.erase(3);
    for (u64 x = 0; x < 16; ++x) EXPECT_EQ(r.q.contains(x), x == 9 || x == 12) << x;
    EXPECT_EQ(r.q.min(), 9u);
}

TEST(PqModify, InsertDeleteRestoresBitStore) {
    std::mt19937_64 rng(31);
    Rig r({16, 8}, 5);
    for (int i = 0; i < 10; ++i) r.q.insert(rng() % 32);
    for (int it = 0; it < 200; ++it) {
        u64 x = rng() % 32;
        if (r.q.contains(x)) continue;
        const auto before = r.q.fsram().dump();
        r.q.insert(x);
        r.q.erase(x);
        ASSERT_EQ(r.q.fsram().dump(), before);
    }
}

TEST(PqModify, Errors) {
    Rig r({16, 8}, 4);
    EXPECT_THROW(r.q.erase(3), precondition_error);
    EXPECT_THROW(r.q.insert(16), domain_error);
    r.q.insert(5);
    EXPECT_NO_THROW(r.q.insert(5));
    r.q.erase(5);
    EXPECT_FALSE(r.q.min());

    Machine small({8, 8}, 256);
    EXPECT_THROW(PriorityQueue(small, 7), config_error);
}

TEST(PqQuery, Examples) {
    Rig r({16, 8}, 4);
    EXPECT_FALSE(r.q.min());
    for (u64 x : {3, 9, 12}) r.q.insert(x);
    EXPECT_EQ(r.q.min(), 3u);
    EXPECT_EQ(r.q.successor(3), 9u);
    EXPECT_FALSE(r.q.successor(12));
    EXPECT_EQ(r.q.predecessor(9), 3u);
    EXPECT_FALSE(r.q.predecessor(3));
}

TEST(PqQuery, Singleton) {
    for (u64 x = 1; x < 16; ++x) {
        Rig r({16, 8}, 4);
        r.q.insert(x);
        EXPECT_EQ(r.q.min(), x);
        EXPECT_EQ(r.q.successor(x - 1), x);
    }
}

// Random traces against the sorted-set oracle with a fixed per-op unit bound.
class PqTrace : public ::testing::TestWithParam<unsigned> {};

TEST_P(PqTrace, MatchesSortedSetOracle) {
    const unsigned depth = GetParam();
    const u64 M = u64{1} << depth;
    std::mt19937_64 rng(depth);
    Rig r({16, 16}, depth);
    std::vector<pq_op> ops;
    for (int i = 0; i < 10000; ++i) {
        switch (rng() % 8) {
        case 0: case 1: case 2: ops.push_back({pq_op_kind::insert, rng() % M}); break;
        case 3: case 4: ops.push_back({pq_op_kind::erase, rng() % M}); break;
        case 5: ops.push_back({pq_op_kind::min}); break;
        default: ops.push_back({pq_op_kind::successor, rng() % M}); break;
        }
    }
    const auto want = oracle::pq_trace(ops, M);
    std::uint64_t worst = 0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const CostCounter before = r.m.cost();
        switch (ops[i].kind) {
        case pq_op_kind::insert: r.q.insert(ops[i].x); break;
        case pq_op_kind::erase:
            if (want[i].error) {
                ASSERT_THROW(r.q.erase(ops[i].x), precondition_error);
            } else {
                r.q.erase(ops[i].x);
            }
            break;
        case pq_op_kind::min: ASSERT_EQ(r.q.min(), want[i].value) << "op " << i; break;
        case pq_op_kind::successor:
            ASSERT_EQ(r.q.successor(ops[i].x), want[i].value) << "op " << i;
            break;
        }
        worst = std::max(worst, (r.m.cost() - before).total());
    }
    EXPECT_LE(worst, 160u);
}

INSTANTIATE_TEST_SUITE_P(Universes, PqTrace, ::testing::Values(4u, 8u, 10u),
                         [](const auto& info) { return "M" + std::to_string(1u << info.param); });
