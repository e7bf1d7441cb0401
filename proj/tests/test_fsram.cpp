#include <gtest/gtest.h>

#include <map>
#include <random>
#include <sstream>

#include "uwram/fsram.hpp"

using namespace uwram;

namespace {

struct Rig {
    Machine m;
    FsRam fs;
    Rig(const WideConfig& c, FsRamLayout l)
        : m(c, fsram_cells(c, l) + 1), fs(m, std::move(l)) {}
};

FsRamLayout random_layout(std::mt19937_64& rng, std::size_t r, std::size_t b, std::size_t B) {
    FsRamLayout l{r, b, B, {}};
    std::vector<u64> pool(B);
    for (std::size_t t = 0; t < r; ++t) {
        for (u64 i = 0; i < B; ++i) pool[i] = i;
        std::shuffle(pool.begin(), pool.end(), rng);
        l.ids.insert(l.ids.end(), pool.begin(), pool.begin() + b);
    }
    return l;
}

} // namespace

TEST(FsRamRead, ZeroStoreReadsZero) {
    Rig rig({16, 8}, Yggdrasil::layout(4));
    for (std::size_t t = 0; t < 8; ++t) EXPECT_EQ(rig.fs.read(t), 0u);
}

TEST(FsRamRead, SharedPathBits) {
    Rig rig({16, 8}, Yggdrasil::layout(4));
    rig.fs.poke_bit(Yggdrasil::bit_id(5), true);
    EXPECT_EQ(rig.fs.read(3), 0b0010u);
    EXPECT_EQ(rig.fs.read(2), 0b0010u);
    EXPECT_EQ(rig.fs.read(4), 0u);
}

TEST(FsRamLayoutFormula, LayoutRegisterThree) {
    EXPECT_EQ(Yggdrasil::node(3, 0, 4), 11u);
    EXPECT_EQ(Yggdrasil::node(3, 1, 4), 5u);
    EXPECT_EQ(Yggdrasil::node(3, 2, 4), 2u);
    EXPECT_EQ(Yggdrasil::node(3, 3, 4), 1u);
}

TEST(FsRamWrite, RootVisibleEverywhere) {
    Rig rig({16, 8}, Yggdrasil::layout(4));
    rig.fs.write(0, 0b1000);
    EXPECT_TRUE(rig.fs.peek_bit(Yggdrasil::bit_id(1)));
    for (std::size_t t = 0; t < 8; ++t) EXPECT_EQ(rig.fs.read(t) >> 3, 1u);
}

TEST(FsRamWrite, ZeroClearsOnlyThePath) {
    Rig rig({16, 8}, Yggdrasil::layout(4));
    for (u64 i = 0; i < 15; ++i) rig.fs.poke_bit(i, true);
    rig.fs.write(3, 0);
    const auto a = rig.fs.dump();
    for (u64 node = 1; node < 16; ++node) {
        bool on_path = node == 11 || node == 5 || node == 2 || node == 1;
        EXPECT_EQ(a[Yggdrasil::bit_id(node)], !on_path) << "node " << node;
    }
}

TEST(FsRamWrite, RoundTrip) {
    Rig rig({8, 8}, Yggdrasil::layout(5));
    for (u64 v = 0; v < 32; ++v) {
        rig.fs.write(7, v);
        ASSERT_EQ(rig.fs.read(7), v);
    }
}

TEST(FsRam, Errors) {
    Rig rig({16, 8}, Yggdrasil::layout(4));
    EXPECT_THROW(rig.fs.read(8), memory_fault);
    EXPECT_THROW(rig.fs.write(8, 0), memory_fault);
    EXPECT_THROW(rig.fs.write(0, 16), domain_error);

    FsRamLayout dup{1, 2, 4, {1, 1}};
    EXPECT_THROW(dup.validate(), config_error);
    FsRamLayout big_id{1, 2, 4, {1, 4}};
    EXPECT_THROW(big_id.validate(), config_error);

    Machine m({8, 4}, 64);
    EXPECT_THROW(FsRam(m, Yggdrasil::layout(5)), config_error);
}

TEST(FsRam, ConstantPrimitiveCount) {
    for (unsigned depth : {2u, 4u, 6u}) {
        Rig rig({64, 8}, Yggdrasil::layout(depth));
        for (std::size_t t = 0; t < rig.fs.layout().registers; ++t) {
            CostCounter before = rig.m.cost();
            rig.fs.read(t);
            ASSERT_EQ((rig.m.cost() - before).wide(), 4u);
            before = rig.m.cost();
            rig.fs.write(t, 1);
            ASSERT_EQ((rig.m.cost() - before).wide(), 4u);
        }
    }
}

TEST(FsRamLayoutFile, ParseAndFormat) {
    std::istringstream in("2 3 5\n0 1 2\n4 2 3\n");
    FsRamLayout l = parse_layout(in);
    EXPECT_EQ(l.registers, 2u);
    EXPECT_EQ(l.id(1, 0), 4u);
    std::ostringstream out;
    write_layout(out, l);
    EXPECT_EQ(out.str(), "2 3 5\n0 1 2\n4 2 3\n");

    std::istringstream dup("1 2 3\n1 1\n");
    EXPECT_THROW(parse_layout(dup), config_error);
    std::istringstream shortfile("1 2 3\n1\n");
    EXPECT_THROW(parse_layout(shortfile), config_error);
}

// Every read agrees with a flat map from bit identifier to last written value.
TEST(FsRamProperties, OverlapSemanticsMatchFlatMap) {
    std::mt19937_64 rng(21);
    for (int layout_it = 0; layout_it < 20; ++layout_it) {
        const std::size_t b = 1 + rng() % 8, B = b + rng() % 12, r = 1 + rng() % 10;
        FsRamLayout l = random_layout(rng, r, b, B);
        Rig rig({16, 8}, l);
        std::map<u64, bool> ref;
        for (int op = 0; op < 300; ++op) {
            std::size_t t = rng() % r;
            if (rng() & 1) {
                u64 v = rng() & WideWord::low_mask(static_cast<unsigned>(b));
                rig.fs.write(t, v);
                for (std::size_t j = 0; j < b; ++j) ref[l.id(t, j)] = (v >> j) & 1;
            } else {
                u64 want = 0;
                for (std::size_t j = 0; j < b; ++j)
                    if (ref[l.id(t, j)]) want |= u64{1} << j;
                ASSERT_EQ(rig.fs.read(t), want);
            }
        }
    }
}
