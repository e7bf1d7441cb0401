#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "support.hpp"
#include "uwram/wideword.hpp"

using namespace uwram;
using uwram::testing::big;
using uwram::testing::from_big;
using uwram::testing::to_big;

namespace {

const WideConfig c84{8, 4};
const WideConfig c82{8, 2};

std::int64_t signed_payload(u64 p, unsigned f) {
    const u64 half = u64{1} << (f - 2);
    return p >= half ? static_cast<std::int64_t>(p) - static_cast<std::int64_t>(half << 1)
                     : static_cast<std::int64_t>(p);
}

u64 encode_signed(std::int64_t v, unsigned f) {
    return static_cast<u64>(v) & WideWord::low_mask(f - 1);
}

} // namespace

TEST(WideConfig, RejectsBadParameters) {
    EXPECT_THROW((WideConfig{12, 4}.validate()), config_error);
    EXPECT_THROW((WideConfig{4, 4}.validate()), config_error);
    EXPECT_THROW((WideConfig{8, 0}.validate()), config_error);
    EXPECT_THROW((WideConfig{8, 1025}.validate()), config_error);
    EXPECT_NO_THROW((WideConfig{64, 1024}.validate()));
}

TEST(WideFromLimbs, Examples) {
    EXPECT_TRUE(WideWord::from_limbs(c84, {}).is_zero());
    EXPECT_EQ(to_big(WideWord::from_limbs(c84, {1, 2})), big(513));
    EXPECT_EQ(to_big(WideWord::from_limbs(c84, {255, 255, 255, 255})), (big(1) << 32) - 1);
}

TEST(WideFromLimbs, Errors) {
    EXPECT_THROW(WideWord::from_limbs(c84, {1, 2, 3, 4, 5}), config_error);
    EXPECT_THROW(WideWord::from_limbs(c84, {256}), config_error);
}

TEST(Bitwise, Examples) {
    std::mt19937_64 rng(1);
    WideWord w = uwram::testing::random_word(c84, rng);
    WideWord z(c84);
    EXPECT_EQ(w & z, z);
    EXPECT_EQ(w | z, w);
    EXPECT_EQ(to_big(~WideWord(c82)), big(65535));
    EXPECT_THROW(w & WideWord(c82), config_error);
}

TEST(Arith, Examples) {
    std::mt19937_64 rng(2);
    WideWord w = uwram::testing::random_word(c84, rng);
    EXPECT_EQ(w + WideWord(c84), w);
    EXPECT_EQ(WideWord::from_limbs(c82, {255, 0}) + WideWord::from_limbs(c82, {1, 0}),
              WideWord::from_limbs(c82, {0, 1}));
    EXPECT_EQ(to_big(WideWord(c84) - WideWord::from_limbs(c84, {1, 0})), (big(1) << 32) - 1);
    EXPECT_THROW(w + WideWord(c82), config_error);
}

TEST(Shift, Examples) {
    std::mt19937_64 rng(3);
    WideWord w = uwram::testing::random_word(c84, rng);
    EXPECT_EQ(to_high(w, 0), w);
    EXPECT_EQ(to_high(WideWord::from_limbs(c82, {128, 0}), 1), WideWord::from_limbs(c82, {0, 1}));
    EXPECT_EQ(to_low(WideWord::from_limbs(c82, {0, 1}), 8), WideWord::from_limbs(c82, {1, 0}));
    EXPECT_TRUE(to_high(w, 32).is_zero());
    EXPECT_THROW(to_high(w, 33), config_error);
    EXPECT_THROW(to_low(w, 33), config_error);
}

TEST(Compress, Examples) {
    EXPECT_TRUE(compress(WideWord(c84)).is_zero());
    EXPECT_EQ(compress(WideWord::from_limbs(c84, {1, 0, 1, 0})), WideWord::from_limbs(c84, {5}));
    EXPECT_EQ(compress(WideWord::from_limbs(c84, {1, 1, 1, 1})), WideWord::from_limbs(c84, {15}));
    EXPECT_THROW(compress(WideWord::from_limbs(c84, {3})), precondition_error);
    EXPECT_EQ(compress(WideWord::from_limbs(c84, {3, 2}), strictness::permissive),
              WideWord::from_limbs(c84, {1}));
}

TEST(Spread, Examples) {
    EXPECT_TRUE(spread(WideWord(c84)).is_zero());
    EXPECT_EQ(spread(WideWord::from_limbs(c84, {5})), WideWord::from_limbs(c84, {1, 0, 1, 0}));
    EXPECT_THROW(spread(WideWord::from_limbs(c84, {0, 1})), precondition_error);
    EXPECT_THROW(spread(WideWord::from_limbs(c84, {16})), precondition_error);
    EXPECT_EQ(spread(WideWord::from_limbs(c84, {0x15}), strictness::permissive),
              WideWord::from_limbs(c84, {1, 0, 1, 0}));
}

TEST(Spread, InverseOfCompressExhaustiveSmallK) {
    for (std::size_t k = 1; k <= 12; ++k) {
        WideConfig c{16, k};
        for (u64 pattern = 0; pattern < (u64{1} << k); ++pattern) {
            WideWord a(c);
            for (std::size_t j = 0; j < k; ++j)
                if ((pattern >> j) & 1) a.set_limb(j, 1);
            WideWord x = compress(a);
            ASSERT_EQ(x.limb(0), pattern);
            ASSERT_EQ(spread(x), a);
        }
    }
}

TEST(FieldCompareGe, Examples) {
    const FieldLayout l = FieldLayout::make(c84, 4);
    std::vector<u64> fv{5, 2}, gv{3, 4};
    WideWord F = pack_fields(c84, l, fv), G = pack_fields(c84, l, gv);
    WideWord m = field_compare_ge(F, G, l);
    EXPECT_EQ(field_get(m, l, 0), 7u);
    EXPECT_EQ(field_get(m, l, 1), 0u);
    EXPECT_EQ(field_compare_ge(F, F, l), field_payload_bits(c84, l));

    std::vector<u64> f2{0, 0}, g2{1, 0};
    WideWord m2 = field_compare_ge(pack_fields(c84, l, f2), pack_fields(c84, l, g2), l);
    EXPECT_EQ(field_get(m2, l, 0), 0u);
    EXPECT_EQ(field_get(m2, l, 1), 7u);

    std::vector<u64> bad{8};
    EXPECT_THROW(field_compare_ge(pack_fields(c84, l, bad), G, l), precondition_error);
}

TEST(FieldMax, Examples) {
    std::mt19937_64 rng(4);
    const FieldLayout l4 = FieldLayout::make(c84, 4);
    std::vector<u64> fv{5, 2}, gv{3, 4}, want{5, 4};
    WideWord F = pack_fields(c84, l4, fv);
    EXPECT_EQ(field_max(F, F, l4, false), F);
    EXPECT_EQ(field_max(F, pack_fields(c84, l4, gv), l4, false), pack_fields(c84, l4, want));

    const FieldLayout l3 = FieldLayout::make(c84, 3);
    std::vector<u64> sf{encode_signed(1, 3), encode_signed(-1, 3)}, sg{0, 0}, sw{1, 0};
    EXPECT_EQ(field_max(pack_fields(c84, l3, sf), pack_fields(c84, l3, sg), l3, true),
              pack_fields(c84, l3, sw));
}

TEST(FieldSub, NegativeResultsAreTwosComplement) {
    const FieldLayout l3 = FieldLayout::make(c84, 3);
    std::vector<u64> a{0, 1, 1, 0}, b{1, 1, 0, 0};
    WideWord d = field_sub(pack_fields(c84, l3, a), pack_fields(c84, l3, b), l3);
    EXPECT_EQ(signed_payload(field_get(d, l3, 0), 3), -1);
    EXPECT_EQ(signed_payload(field_get(d, l3, 1), 3), 0);
    EXPECT_EQ(signed_payload(field_get(d, l3, 2), 3), 1);
    EXPECT_EQ(signed_payload(field_get(d, l3, 3), 3), 0);
}

// -- properties against arbitrary-precision and per-field oracles -----------

class CoreProperties : public ::testing::TestWithParam<WideConfig> {};

TEST_P(CoreProperties, AddSubShiftMatchBigIntegers) {
    const WideConfig c = GetParam();
    std::mt19937_64 rng(c.w * 1000 + c.k);
    const big mod = uwram::testing::modulus(c);
    for (int it = 0; it < 2000; ++it) {
        WideWord a = uwram::testing::random_word(c, rng);
        WideWord b = uwram::testing::random_word(c, rng);
        ASSERT_EQ(to_big(a + b), (to_big(a) + to_big(b)) % mod);
        ASSERT_EQ(to_big(a - b), (to_big(a) + mod - to_big(b)) % mod);
        std::size_t i = rng() % (c.bits() + 1);
        ASSERT_EQ(to_big(to_high(a, i)), (to_big(a) << i) % mod);
        ASSERT_EQ(to_big(to_low(a, i)), to_big(a) >> i);
    }
}

TEST_P(CoreProperties, FieldOpsMatchScalarLoop) {
    const WideConfig c = GetParam();
    std::mt19937_64 rng(c.w * 7 + c.k);
    for (int it = 0; it < 2000; ++it) {
        unsigned f = 2 + static_cast<unsigned>(rng() % std::min<std::size_t>(62, c.bits() - 1));
        FieldLayout l = FieldLayout::make(c, f);
        std::vector<u64> fv(l.count), gv(l.count);
        for (std::size_t i = 0; i < l.count; ++i) {
            fv[i] = rng() & WideWord::low_mask(f - 1);
            gv[i] = (rng() & 3) == 0 ? fv[i] : rng() & WideWord::low_mask(f - 1);
        }
        WideWord F = pack_fields(c, l, fv), G = pack_fields(c, l, gv);
        WideWord ge = field_compare_ge(F, G, l);
        WideWord mu = field_max(F, G, l, false);
        WideWord ms = field_max(F, G, l, true);
        for (std::size_t i = 0; i < l.count; ++i) {
            ASSERT_EQ(field_get(ge, l, i), fv[i] >= gv[i] ? WideWord::low_mask(f - 1) : 0u);
            ASSERT_EQ(field_get(mu, l, i), std::max(fv[i], gv[i]));
            std::int64_t sf = signed_payload(fv[i], f), sg = signed_payload(gv[i], f);
            ASSERT_EQ(signed_payload(field_get(ms, l, i), f), std::max(sf, sg));
        }
        // bits above the last field stay clear
        for (std::size_t b = l.count * f; b < c.bits(); ++b) {
            ASSERT_FALSE(ge.bit(b));
            ASSERT_FALSE(mu.bit(b));
            ASSERT_FALSE(ms.bit(b));
        }
    }
}

TEST_P(CoreProperties, CompressSpreadInverse) {
    const WideConfig c = GetParam();
    std::mt19937_64 rng(c.k);
    for (int it = 0; it < 2000; ++it) {
        WideWord a = uwram::testing::random_block_bits(c, rng);
        ASSERT_EQ(spread(compress(a)), a);
        WideWord b = compress(a);
        ASSERT_EQ(compress(spread(b)), b);
    }
}

INSTANTIATE_TEST_SUITE_P(Configs, CoreProperties,
                         ::testing::ValuesIn(uwram::testing::core_configs()),
                         [](const auto& info) {
                             return "w" + std::to_string(info.param.w) + "_k" +
                                    std::to_string(info.param.k);
                         });

TEST(FieldPacking, FullWidthFields) {
    const WideConfig c{64, 4};
    const FieldLayout l = FieldLayout::make(c, 64);
    const std::vector<u64> v{~u64{0} >> 1, 5, 0, 1};
    EXPECT_EQ(unpack_fields(pack_fields(c, l, v), l), v);
}
