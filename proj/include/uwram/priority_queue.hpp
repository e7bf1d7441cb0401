#pragma once

// Bounded-universe priority queue on a Yggdrasil FS-RAM.
//
// Leaf x is a plain memory cell.  Internal node bits ("subtree nonempty") are
// the shared FS-RAM bits, so the whole leaf-to-root path of x is register x/2.
// Two auxiliary arrays, indexed by node identifier, keep the minimum and
// maximum element below each node.  Because the identifier row of register x/2
// is exactly the list of x's ancestors, every path update and every query is a
// fixed sequence of wide gathers, field comparisons and scatters.

#include <bit>
#include <cstddef>
#include <optional>

#include "uwram/error.hpp"
#include "uwram/fsram.hpp"
#include "uwram/machine.hpp"

namespace uwram {

class PriorityQueue {
public:
    /// Machine cells required for depth m on config c (scratch cell included).
    static std::size_t cells_needed(const WideConfig& c, unsigned m) {
        const FsRamLayout l = Yggdrasil::layout(m);
        return 1 + (std::size_t{1} << m) + fsram_cells(c, l) + 2 * (l.bit_count + c.k) + 1;
    }

    PriorityQueue(Machine& machine, unsigned m)
        : m_(&machine), depth_(check_depth(machine.config(), m)), universe_(u64{1} << m),
          fs_(machine, Yggdrasil::layout(m)) {
        const WideConfig& c = machine.config();
        const std::size_t ids = fs_.layout().bit_count + c.k;
        leaves_ = machine.allocate(universe_);
        min_ = machine.allocate(ids);
        max_ = machine.allocate(ids);
        ret_ = machine.allocate(1);
        for (std::size_t i = 0; i < ids; ++i) machine.poke(min_ + i, universe_);

        heights_ = WideWord(c);
        for (std::size_t j = 0; j < m; ++j) heights_.set_limb(j, j + 1);
        empty_min_ = WideWord::broadcast(c, universe_);
    }

    u64 universe() const noexcept { return universe_; }
    unsigned depth() const noexcept { return depth_; }
    const FsRam& fsram() const noexcept { return fs_; }

    bool contains(u64 x) {
        check_element(x);
        return m_->load(leaves_ + x) != 0;
    }

    void insert(u64 x) {
        check_element(x);
        if (m_->load(leaves_ + x)) return;
        m_->store(leaves_ + x, 1);
        fs_.write(x / 2, WideWord::low_mask(depth_));

        const unsigned f = m_->config().w;
        const WideWord V = path_ids(x);
        const WideWord X = m_->broadcast(x);
        WideWord mn = m_->read_content(V, min_);
        mn = m_->select(m_->field_compare_ge(X, mn, f), mn, X);
        m_->write_content(mn, V, min_);
        WideWord mx = m_->read_content(V, max_);
        mx = m_->select(m_->field_compare_ge(mx, X, f), mx, X);
        m_->write_content(mx, V, max_);
    }

    void erase(u64 x) {
        check_element(x);
        if (!m_->load(leaves_ + x))
            throw precondition_error("priority queue: delete of absent element " + std::to_string(x));
        const std::optional<u64> p = predecessor(x), s = successor(x);
        m_->store(leaves_ + x, 0);

        // Ancestors at height >= bitlen(x ^ y) also contain y.
        const u64 hp = p ? std::bit_width(x ^ *p) : depth_ + 1;
        const u64 hs = s ? std::bit_width(x ^ *s) : depth_ + 1;
        const u64 hmin = std::min(hp, hs);
        m_->tick(6);
        fs_.write(x / 2, WideWord::low_mask(depth_) & ~WideWord::low_mask(static_cast<unsigned>(hmin - 1)));

        const unsigned f = m_->config().w;
        const WideWord V = path_ids(x);
        const WideWord X = m_->broadcast(x);

        WideWord mn = m_->read_content(V, min_);
        WideWord hit = m_->and_(m_->field_compare_ge(mn, X, f), m_->field_compare_ge(X, mn, f));
        WideWord has = m_->field_compare_ge(heights_, m_->broadcast(hs), f);
        WideWord repl = m_->select(has, m_->broadcast(s.value_or(universe_)), empty_min_);
        m_->write_content(m_->select(hit, repl, mn), V, min_);

        WideWord mx = m_->read_content(V, max_);
        hit = m_->and_(m_->field_compare_ge(mx, X, f), m_->field_compare_ge(X, mx, f));
        has = m_->field_compare_ge(heights_, m_->broadcast(hp), f);
        repl = m_->and_(has, m_->broadcast(p.value_or(0)));
        m_->write_content(m_->select(hit, repl, mx), V, max_);
    }

    std::optional<u64> min() {
        const u64 v = m_->load(min_ + Yggdrasil::bit_id(1));
        m_->tick();
        if (v == universe_) return std::nullopt;
        return v;
    }

    /// Smallest element strictly greater than x.
    std::optional<u64> successor(u64 x) {
        check_element(x);
        m_->tick();
        if (x + 1 == universe_) return std::nullopt;
        const WideWord V = path_ids(x);
        const WideWord mx = m_->read_content(V, max_);
        const u64 hits = lowest_flags(m_->field_compare_ge(mx, m_->broadcast(x + 1), m_->config().w));
        if (!hits) return std::nullopt;
        const unsigned j = static_cast<unsigned>(std::countr_zero(hits));
        m_->tick();
        if (j == 0) return x | 1;
        const u64 a = Yggdrasil::node(x / 2, j, depth_);
        return m_->load(min_ + Yggdrasil::bit_id(2 * a + 1));
    }

    /// Largest element strictly smaller than x.
    std::optional<u64> predecessor(u64 x) {
        check_element(x);
        m_->tick();
        if (x == 0) return std::nullopt;
        const unsigned f = m_->config().w;
        const WideWord V = path_ids(x);
        const WideWord mn = m_->read_content(V, min_);
        const WideWord ge = m_->field_compare_ge(mn, m_->broadcast(x), f);
        const u64 hits = lowest_flags(m_->xor_(ge, m_->field_masks(f).payload));
        if (!hits) return std::nullopt;
        const unsigned j = static_cast<unsigned>(std::countr_zero(hits));
        m_->tick();
        if (j == 0) return x & ~u64{1};
        const u64 a = Yggdrasil::node(x / 2, j, depth_);
        return m_->load(max_ + Yggdrasil::bit_id(2 * a));
    }

private:
    Machine* m_;
    unsigned depth_;
    u64 universe_;
    FsRam fs_;
    address leaves_ = 0, min_ = 0, max_ = 0, ret_ = 0;
    WideWord heights_;
    WideWord empty_min_;

    static unsigned check_depth(const WideConfig& c, unsigned m) {
        if (m < 1) throw config_error("priority queue: depth must be at least 1");
        if (m + 2 > c.w)
            throw config_error("priority queue: universe 2^" + std::to_string(m) +
                               " needs w >= " + std::to_string(m + 2));
        return m;
    }

    void check_element(u64 x) const {
        if (x >= universe_)
            throw domain_error("priority queue: element " + std::to_string(x) +
                               " outside universe " + std::to_string(universe_));
    }

    WideWord path_ids(u64 x) { return m_->read_word(fs_.table_base() + (x / 2) * m_->config().k); }

    /// Bit j set iff block j of a payload mask is nonzero, restricted to path blocks.
    u64 lowest_flags(const WideWord& mask) {
        WideWord b = m_->and_(mask, m_->field_masks(m_->config().w).ones);
        b = m_->compress(b);
        m_->write_block(b, 0, ret_);
        m_->tick();
        return m_->load(ret_) & WideWord::low_mask(depth_);
    }
};

} // namespace uwram
