#pragma once

// The UW-RAM machine: word-addressed memory of w-bit cells, the six wide
// memory operations (block/word/content x read/write), the wide ALU and the
// cost counter every algorithm is measured by.
//
// Every wide primitive charges one unit, whatever the host does to realize
// it.  Compound helpers (field comparisons, select, ...) are written in terms
// of the primitives, so they are charged by what they issue.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uwram/error.hpp"
#include "uwram/wideword.hpp"

namespace uwram {

struct CostCounter {
    std::uint64_t wide_alu = 0;
    std::uint64_t wide_mem = 0;
    std::uint64_t scalar_alu = 0;
    std::uint64_t scalar_mem = 0;

    std::uint64_t wide() const noexcept { return wide_alu + wide_mem; }
    std::uint64_t scalar() const noexcept { return scalar_alu + scalar_mem; }
    std::uint64_t total() const noexcept { return wide() + scalar(); }

    friend CostCounter operator-(const CostCounter& a, const CostCounter& b) {
        return {a.wide_alu - b.wide_alu, a.wide_mem - b.wide_mem, a.scalar_alu - b.scalar_alu,
                a.scalar_mem - b.scalar_mem};
    }
    friend CostCounter operator+(const CostCounter& a, const CostCounter& b) {
        return {a.wide_alu + b.wide_alu, a.wide_mem + b.wide_mem, a.scalar_alu + b.scalar_alu,
                a.scalar_mem + b.scalar_mem};
    }
    friend bool operator==(const CostCounter&, const CostCounter&) = default;
};

using address = std::uint64_t;

class Machine {
public:
    /// Cell 0 is reserved as the machine's scratch cell (used by broadcast).
    Machine(const WideConfig& cfg, std::size_t memory_cells, strictness mode = strictness::strict)
        : cfg_(cfg), mode_(mode) {
        cfg.validate();
        if (memory_cells < 1) throw config_error("machine memory must hold at least one cell");
        if (cfg.w < 64 && memory_cells > (std::size_t{1} << cfg.w))
            throw config_error("memory of " + std::to_string(memory_cells) +
                               " cells is not addressable with w=" + std::to_string(cfg.w) +
                               " bit addresses");
        mem_.assign(memory_cells, 0);
        next_free_ = 1;
    }

    const WideConfig& config() const noexcept { return cfg_; }
    strictness mode() const noexcept { return mode_; }
    void set_mode(strictness m) noexcept { mode_ = m; }
    std::size_t memory_size() const noexcept { return mem_.size(); }

    /// Current tallies; never mutates them.
    CostCounter cost() const noexcept { return counter_; }

    // -- memory layout bookkeeping (host side, uncharged) -------------------

    /// Reserves `cells` consecutive cells and returns the first address.
    address allocate(std::size_t cells) {
        if (cells > mem_.size() - next_free_)
            throw config_error("machine memory exhausted: need " + std::to_string(cells) +
                               " cells, " + std::to_string(mem_.size() - next_free_) + " free");
        address a = next_free_;
        next_free_ += cells;
        return a;
    }

    std::size_t allocated() const noexcept { return next_free_; }

    /// Uncharged host access for loading inputs and inspecting results.
    void poke(address a, u64 v) {
        check_scalar(a);
        if (v & ~cfg_.block_mask()) throw config_error("poke: value exceeds w bits");
        mem_[a] = v;
    }
    u64 peek(address a) const {
        check_scalar(a);
        return mem_[a];
    }
    std::span<const u64> memory() const noexcept { return mem_; }

    // -- scalar word-RAM side ---------------------------------------------

    u64 load(address a) {
        check_scalar(a);
        ++counter_.scalar_mem;
        return mem_[a];
    }

    void store(address a, u64 v) {
        check_scalar(a);
        if (v & ~cfg_.block_mask()) throw config_error("store: value exceeds w bits");
        ++counter_.scalar_mem;
        mem_[a] = v;
    }

    /// Charges n scalar ALU instructions executed by the caller.
    void tick(std::uint64_t n = 1) noexcept { counter_.scalar_alu += n; }

    // -- wide memory operations -------------------------------------------

    /// W_j <- MEM[base + j]; other blocks unchanged.
    WideWord read_block(const WideWord& W, std::size_t j, address base) {
        check_cfg(W);
        if (j >= cfg_.k) throw memory_fault(access_kind::block, j, u128{base} + j, mem_.size());
        const u64 a = resolve(access_kind::block, j, base, j);
        ++counter_.wide_mem;
        WideWord r = W;
        r.set_limb(j, mem_[a]);
        return r;
    }

    /// W_j <- MEM[base + j] for all j.
    WideWord read_word(address base) {
        WideWord r(cfg_);
        for (std::size_t j = 0; j < cfg_.k; ++j) resolve(access_kind::word, j, base, j);
        ++counter_.wide_mem;
        for (std::size_t j = 0; j < cfg_.k; ++j) r.set_limb(j, mem_[base + j]);
        return r;
    }

    /// W_j <- MEM[base + W_j] for all j.  Concurrent reads of one cell are allowed.
    WideWord read_content(const WideWord& W, address base) {
        check_cfg(W);
        WideWord r(cfg_);
        std::vector<u64> addr(cfg_.k);
        for (std::size_t j = 0; j < cfg_.k; ++j)
            addr[j] = resolve(access_kind::content, j, base, W.limb(j));
        ++counter_.wide_mem;
        for (std::size_t j = 0; j < cfg_.k; ++j) r.set_limb(j, mem_[addr[j]]);
        return r;
    }

    /// MEM[base + j] <- W_j.
    void write_block(const WideWord& W, std::size_t j, address base) {
        check_cfg(W);
        if (j >= cfg_.k) throw memory_fault(access_kind::block, j, u128{base} + j, mem_.size());
        const u64 a = resolve(access_kind::block, j, base, j);
        ++counter_.wide_mem;
        mem_[a] = W.limb(j);
    }

    /// MEM[base + j] <- W_j for all j.
    void write_word(const WideWord& W, address base) {
        check_cfg(W);
        for (std::size_t j = 0; j < cfg_.k; ++j) resolve(access_kind::word, j, base, j);
        ++counter_.wide_mem;
        for (std::size_t j = 0; j < cfg_.k; ++j) mem_[base + j] = W.limb(j);
    }

    /// MEM[base + V_j] <- W_j for all j; targets must be pairwise distinct.
    void write_content(const WideWord& W, const WideWord& V, address base) {
        check_cfg(W);
        check_cfg(V);
        std::vector<std::pair<u64, std::size_t>> targets(cfg_.k);
        for (std::size_t j = 0; j < cfg_.k; ++j)
            targets[j] = {resolve(access_kind::content, j, base, V.limb(j)), j};
        std::sort(targets.begin(), targets.end());
        for (std::size_t i = 1; i < targets.size(); ++i)
            if (targets[i].first == targets[i - 1].first)
                throw crew_violation(std::min(targets[i - 1].second, targets[i].second),
                                     std::max(targets[i - 1].second, targets[i].second),
                                     targets[i].first);
        ++counter_.wide_mem;
        for (const auto& [a, j] : targets) mem_[a] = W.limb(j);
    }

    // -- wide ALU ------------------------------------------------------------

    WideWord and_(const WideWord& a, const WideWord& b) { return charge(bitwise_and(a, b)); }
    WideWord or_(const WideWord& a, const WideWord& b) { return charge(bitwise_or(a, b)); }
    WideWord xor_(const WideWord& a, const WideWord& b) { return charge(bitwise_xor(a, b)); }
    WideWord not_(const WideWord& a) { check_cfg(a); return charge(bitwise_not(a)); }
    WideWord add(const WideWord& a, const WideWord& b) { return charge(uwram::add(a, b)); }
    WideWord sub(const WideWord& a, const WideWord& b) { return charge(uwram::sub(a, b)); }
    WideWord to_high(const WideWord& a, std::size_t i) { check_cfg(a); return charge(uwram::to_high(a, i)); }
    WideWord to_low(const WideWord& a, std::size_t i) { check_cfg(a); return charge(uwram::to_low(a, i)); }
    WideWord compress(const WideWord& a) { check_cfg(a); return charge(uwram::compress(a, mode_)); }
    WideWord spread(const WideWord& a) { check_cfg(a); return charge(uwram::spread(a, mode_)); }

    /// Zero test of a wide register (sets the condition flag).
    bool nonzero(const WideWord& a) {
        check_cfg(a);
        ++counter_.wide_alu;
        return !a.is_zero();
    }

    /// (a & b) != 0 as one flag-setting AND.
    bool test(const WideWord& a, const WideWord& b) {
        detail::require_same(a, b, "test");
        check_cfg(a);
        ++counter_.wide_alu;
        for (std::size_t j = 0; j < cfg_.k; ++j)
            if (a.limb(j) & b.limb(j)) return true;
        return false;
    }

    /// Every block gets `value`: one scalar store to the scratch cell, one gather.
    WideWord broadcast(u64 value) {
        store(0, value);
        return read_content(WideWord(cfg_), 0);
    }

    /// (a & mask) | (b & ~mask).
    WideWord select(const WideWord& mask, const WideWord& a, const WideWord& b) {
        return or_(and_(a, mask), and_(b, not_(mask)));
    }

    // -- field operations, composed from primitives ----------------------

    /// Constant masks of a field layout; part of precomputation, not charged.
    struct FieldMasks {
        FieldLayout layout;
        WideWord tests;
        WideWord payload;
        WideWord signs;
        WideWord all;
        WideWord ones; ///< value 1 in every field
    };

    const FieldMasks& field_masks(unsigned f) {
        auto it = masks_.find(f);
        if (it == masks_.end()) {
            FieldLayout l = FieldLayout::make(cfg_, f);
            FieldMasks fm{l, field_test_bits(cfg_, l), field_payload_bits(cfg_, l),
                          f >= 2 ? field_sign_bits(cfg_, l) : WideWord(cfg_),
                          field_all_bits(cfg_, l), field_broadcast(cfg_, l, 1)};
            it = masks_.emplace(f, std::move(fm)).first;
        }
        return it->second;
    }

    WideWord field_compare_ge(const WideWord& F, const WideWord& G, unsigned f) {
        const FieldMasks& fm = field_masks(f);
        WideWord a = F, b = G;
        if (mode_ == strictness::strict) {
            detail::check_test_bits_clear(F, fm.tests, "field_compare_ge");
            detail::check_test_bits_clear(G, fm.tests, "field_compare_ge");
            detail::check_outside_fields_clear(F, fm.all, "field_compare_ge");
            detail::check_outside_fields_clear(G, fm.all, "field_compare_ge");
        } else {
            a = and_(a, fm.payload);
            b = and_(b, fm.payload);
        }
        WideWord h = sub(or_(a, fm.tests), b);
        h = and_(h, fm.tests);
        return sub(h, to_low(h, f - 1));
    }

    WideWord field_sub(const WideWord& F, const WideWord& G, unsigned f) {
        const FieldMasks& fm = field_masks(f);
        WideWord a = F, b = G;
        if (mode_ == strictness::strict) {
            detail::check_test_bits_clear(F, fm.tests, "field_sub");
            detail::check_test_bits_clear(G, fm.tests, "field_sub");
        } else {
            a = and_(a, fm.payload);
            b = and_(b, fm.payload);
        }
        return and_(sub(or_(a, fm.tests), b), fm.payload);
    }

    WideWord field_max(const WideWord& F, const WideWord& G, unsigned f, bool is_signed) {
        const FieldMasks& fm = field_masks(f);
        WideWord a = F, b = G;
        if (mode_ == strictness::permissive) {
            a = and_(a, fm.payload);
            b = and_(b, fm.payload);
        }
        if (is_signed) {
            a = xor_(a, fm.signs);
            b = xor_(b, fm.signs);
        }
        WideWord m = field_compare_ge(a, b, f);
        WideWord r = or_(and_(a, m), and_(b, xor_(m, fm.payload)));
        return is_signed ? xor_(r, fm.signs) : r;
    }

    /// Value 1 in each field where F_i == G_i, 0 elsewhere.
    WideWord field_equal_ones(const WideWord& F, const WideWord& G, unsigned f) {
        const FieldMasks& fm = field_masks(f);
        WideWord m = and_(field_compare_ge(F, G, f), field_compare_ge(G, F, f));
        return and_(m, fm.ones);
    }

private:
    WideConfig cfg_;
    strictness mode_;
    std::vector<u64> mem_;
    std::size_t next_free_ = 1;
    CostCounter counter_;
    std::map<unsigned, FieldMasks> masks_;

    WideWord charge(WideWord r) {
        check_cfg(r);
        ++counter_.wide_alu;
        return r;
    }

    void check_cfg(const WideWord& a) const {
        if (!(a.config() == cfg_))
            throw config_error("wide word config does not match the machine");
    }

    void check_scalar(address a) const {
        if (a >= mem_.size()) throw memory_fault(access_kind::scalar, 0, a, mem_.size());
    }

    u64 resolve(access_kind kind, std::size_t block, address base, u64 offset) const {
        u128 a = u128{base} + offset;
        if (a >= mem_.size()) throw memory_fault(kind, block, a, mem_.size());
        return static_cast<u64>(a);
    }
};

} // namespace uwram
