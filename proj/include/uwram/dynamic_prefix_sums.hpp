#pragma once

// Dynamic prefix sums on an m-Yggdrasil.
//
// Every internal node of a complete binary tree over N leaves keeps the
// combination of the leaves in its left subtree, in a field of `field_bits`
// shared FS-RAM bits.  Register j/2 is the whole leaf-to-root path of leaf j,
// one field per level (lowest level in the lowest field).  Leaf j is in the
// right subtree of its level-l ancestor exactly when bit l of j is set, so
//   retrieve(j) = A[j] (+) combination of the path fields selected by j
//   update(j,d) = combine d into A[j] and into the path fields not selected by j.
// Retrieval folds the selected fields in halves `iota` times with SWAR field
// operations and finishes with one lookup over the remaining fields.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "uwram/error.hpp"
#include "uwram/fsram.hpp"
#include "uwram/machine.hpp"
#include "uwram/oracles.hpp"

namespace uwram {

using oracle::combine_kind;

/// Lanes of `fields` fields of `bits` bits each inside one scalar word.
struct ScalarFields {
    unsigned bits = 1;
    unsigned fields = 1;

    u64 all() const { return WideWord::low_mask(bits * fields); }
    u64 highs() const {
        u64 h = 0;
        for (unsigned i = 0; i < fields; ++i) h |= u64{1} << (i * bits + bits - 1);
        return h;
    }

    /// Fieldwise sum modulo 2^bits with no spare bits between fields.
    u64 add(u64 a, u64 b) const {
        const u64 h = highs();
        return (((a & ~h) + (b & ~h)) ^ ((a ^ b) & h)) & all();
    }

    /// Fieldwise unsigned maximum with no spare bits between fields.
    u64 max(u64 a, u64 b) const {
        const u64 h = highs();
        const u64 low_ge = ((a & ~h) | h) - (b & ~h);
        const u64 ge = ((a & ~b) | (~(a ^ b) & low_ge)) & h;
        const u64 mask = ge | (ge - (ge >> (bits - 1)));
        return ((a & mask) | (b & ~mask)) & all();
    }

    static constexpr std::uint64_t add_cost = 7;
    static constexpr std::uint64_t max_cost = 16;
};

class DynamicPrefixSums {
public:
    static constexpr std::uint64_t table_budget = std::uint64_t{1} << 22;

    struct Shape {
        unsigned levels;     ///< n, tree height
        unsigned field_bits; ///< bits per node payload
        unsigned iota;
        unsigned tail_fields; ///< fields left for the final lookup
        std::uint64_t table_entries;
        std::size_t leaves; ///< 2^n, N rounded up
    };

    static Shape shape(const WideConfig& c, std::size_t n_items, u64 universe, combine_kind op,
                       unsigned iota) {
        if (n_items < 2) throw config_error("prefix sums: need at least two items");
        if (universe < 2) throw config_error("prefix sums: universe must be at least 2");
        if (op == combine_kind::add_mod && !std::has_single_bit(universe))
            throw config_error("prefix sums: modular addition needs a power-of-two universe");
        Shape s{};
        s.levels = static_cast<unsigned>(std::bit_width(n_items - 1));
        s.field_bits = static_cast<unsigned>(std::bit_width(universe - 1));
        s.leaves = std::size_t{1} << s.levels;
        const std::size_t b = std::size_t{s.levels} * s.field_bits;
        if (b > c.w || b > c.k)
            throw config_error("prefix sums: path of " + std::to_string(b) +
                               " bits exceeds min(w, k)");
        s.iota = iota;
        unsigned t = s.levels;
        for (unsigned i = 0; i < iota && t > 1; ++i) t = (t + 1) / 2;
        s.tail_fields = t;
        const unsigned key_bits = t * s.field_bits;
        if (key_bits > 22)
            throw budget_error("prefix sums: lookup table of 2^" + std::to_string(key_bits) +
                               " entries exceeds the 2^22 budget; raise iota");
        s.table_entries = std::uint64_t{1} << key_bits;
        return s;
    }

    static std::size_t cells_needed(const WideConfig& c, std::size_t n_items, u64 universe,
                                    combine_kind op, unsigned iota) {
        const Shape s = shape(c, n_items, universe, op, iota);
        return 1 + fsram_cells(c, layout(s)) + 2 * s.leaves + (std::size_t{1} << s.field_bits) +
               s.table_entries;
    }

    DynamicPrefixSums(Machine& machine, std::size_t n_items, u64 universe, combine_kind op,
                      unsigned iota = 1)
        : m_(&machine), shape_(shape(machine.config(), n_items, universe, op, iota)),
          n_items_(n_items), universe_(universe), op_(op), fs_(machine, layout(shape_)),
          lanes_{shape_.field_bits, shape_.levels} {
        values_ = machine.allocate(shape_.leaves);
        select_ = machine.allocate(shape_.leaves);
        bcast_ = machine.allocate(std::size_t{1} << shape_.field_bits);
        table_ = machine.allocate(shape_.table_entries);

        for (std::size_t j = 0; j < shape_.leaves; ++j) {
            u64 sel = 0;
            for (unsigned l = 0; l < shape_.levels; ++l)
                if ((j >> l) & 1) sel |= WideWord::low_mask(shape_.field_bits) << (l * shape_.field_bits);
            machine.poke(select_ + j, sel);
        }
        for (u64 d = 0; d < (u64{1} << shape_.field_bits); ++d) {
            u64 rep = 0;
            for (unsigned l = 0; l < shape_.levels; ++l) rep |= d << (l * shape_.field_bits);
            machine.poke(bcast_ + d, rep);
        }
        const ScalarFields one{shape_.field_bits, 1};
        for (u64 key = 0; key < shape_.table_entries; ++key) {
            u64 acc = 0;
            for (unsigned i = 0; i < shape_.tail_fields; ++i)
                acc = combine1(one, acc, (key >> (i * shape_.field_bits)) & one.all());
            machine.poke(table_ + key, acc);
        }
    }

    const Shape& info() const noexcept { return shape_; }
    std::size_t size() const noexcept { return n_items_; }
    const FsRam& fsram() const noexcept { return fs_; }

    void update(std::size_t j, u64 d) {
        check_index(j);
        if (d >= universe_) throw domain_error("prefix sums: value outside universe");
        const ScalarFields one{shape_.field_bits, 1};
        m_->store(values_ + j, combine_charged(one, m_->load(values_ + j), d));

        u64 path = fs_.read(j / 2);
        const u64 delta = m_->load(bcast_ + d) & ~m_->load(select_ + j);
        m_->tick();
        fs_.write(j / 2, combine_charged(lanes_, path, delta));
    }

    u64 retrieve(std::size_t j) {
        check_index(j);
        u64 v = fs_.read(j / 2) & m_->load(select_ + j);
        m_->tick();
        unsigned count = shape_.levels;
        for (unsigned i = 0; i < shape_.iota && count > 1; ++i) {
            const unsigned keep = (count + 1) / 2;
            const unsigned shift = keep * shape_.field_bits;
            const ScalarFields half{shape_.field_bits, keep};
            v = combine_charged(half, v & half.all(), v >> shift);
            m_->tick(2);
            count = keep;
        }
        const u64 folded = m_->load(table_ + v);
        const ScalarFields one{shape_.field_bits, 1};
        return combine_charged(one, folded, m_->load(values_ + j));
    }

private:
    Machine* m_;
    Shape shape_;
    std::size_t n_items_;
    u64 universe_;
    combine_kind op_;
    FsRam fs_;
    ScalarFields lanes_;
    address values_ = 0, select_ = 0, bcast_ = 0, table_ = 0;

    static FsRamLayout layout(const Shape& s) {
        FsRamLayout l;
        l.registers = s.leaves / 2;
        l.width = std::size_t{s.levels} * s.field_bits;
        l.bit_count = (s.leaves - 1) * s.field_bits;
        l.ids.resize(l.registers * l.width);
        for (std::size_t i = 0; i < l.registers; ++i)
            for (unsigned lv = 0; lv < s.levels; ++lv) {
                const u64 node = (s.leaves / 2 + i) >> lv;
                for (unsigned t = 0; t < s.field_bits; ++t)
                    l.ids[i * l.width + lv * s.field_bits + t] = (node - 1) * s.field_bits + t;
            }
        return l;
    }

    u64 combine1(const ScalarFields& f, u64 a, u64 b) const {
        return op_ == combine_kind::add_mod ? f.add(a, b) : f.max(a, b);
    }

    u64 combine_charged(const ScalarFields& f, u64 a, u64 b) {
        m_->tick(op_ == combine_kind::add_mod ? ScalarFields::add_cost : ScalarFields::max_cost);
        return combine1(f, a, b);
    }

    void check_index(std::size_t j) const {
        if (j >= n_items_)
            throw memory_fault(access_kind::scalar, 0, u128{values_} + j, m_->memory_size());
    }
};

} // namespace uwram
