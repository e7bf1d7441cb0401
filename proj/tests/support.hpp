#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "uwram/wideword.hpp"

namespace uwram::testing {

using big = boost::multiprecision::cpp_int;

inline big to_big(const WideWord& a) {
    big r = 0;
    for (std::size_t j = a.blocks(); j-- > 0;) {
        r <<= a.config().w;
        r += a.limb(j);
    }
    return r;
}

inline WideWord from_big(const WideConfig& cfg, big v) {
    WideWord r(cfg);
    big mask = (big(1) << cfg.w) - 1;
    for (std::size_t j = 0; j < cfg.k; ++j) {
        r.set_limb(j, static_cast<std::uint64_t>(v & mask));
        v >>= cfg.w;
    }
    return r;
}

inline big modulus(const WideConfig& cfg) { return big(1) << cfg.bits(); }

inline WideWord random_word(const WideConfig& cfg, std::mt19937_64& rng) {
    WideWord r(cfg);
    for (std::size_t j = 0; j < cfg.k; ++j) r.set_limb(j, rng() & cfg.block_mask());
    return r;
}

/// Random word with only bit 0 of some blocks set.
inline WideWord random_block_bits(const WideConfig& cfg, std::mt19937_64& rng) {
    WideWord r(cfg);
    for (std::size_t j = 0; j < cfg.k; ++j)
        if (rng() & 1) r.set_limb(j, 1);
    return r;
}

inline const std::vector<WideConfig>& core_configs() {
    static const std::vector<WideConfig> c{{8, 4}, {16, 16}, {64, 64}};
    return c;
}

} // namespace uwram::testing
