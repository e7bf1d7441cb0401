#pragma once

// Byte-overlap (FS-RAM) memory simulated on the UW-RAM.
//
// A layout names, for every register t and bit j, the identifier of the
// shared bit stored there.  The identifier table R lives row-major in machine
// memory, one row of k cells per register (positions j >= b point at private
// padding cells), and the shared bits live one per cell in an array A.  A
// register read or write is then four wide primitives regardless of r and b.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "uwram/error.hpp"
#include "uwram/machine.hpp"

namespace uwram {

struct FsRamLayout {
    std::size_t registers = 0; ///< r
    std::size_t width = 0;     ///< b, bits per register
    std::size_t bit_count = 0; ///< B, distinct shared bits
    std::vector<u64> ids;      ///< r*b identifiers, row-major; ids[t*b + j] < B

    u64 id(std::size_t t, std::size_t j) const { return ids.at(t * width + j); }

    /// Structural checks independent of any machine.
    void validate() const {
        if (registers == 0 || width == 0) throw config_error("fsram layout: r and b must be positive");
        if (ids.size() != registers * width)
            throw config_error("fsram layout: table has " + std::to_string(ids.size()) +
                               " entries, expected r*b = " + std::to_string(registers * width));
        std::unordered_set<u64> row;
        for (std::size_t t = 0; t < registers; ++t) {
            row.clear();
            for (std::size_t j = 0; j < width; ++j) {
                u64 v = id(t, j);
                if (v >= bit_count)
                    throw config_error("fsram layout: reg[" + std::to_string(t) + "].bit[" +
                                       std::to_string(j) + "] = " + std::to_string(v) +
                                       " is not below B = " + std::to_string(bit_count));
                if (!row.insert(v).second)
                    throw config_error("fsram layout: register " + std::to_string(t) +
                                       " names bit " + std::to_string(v) + " twice");
            }
        }
    }
};

/// Text form: "r b B" then r lines of b identifiers.
inline FsRamLayout parse_layout(std::istream& in) {
    FsRamLayout l;
    if (!(in >> l.registers >> l.width >> l.bit_count))
        throw config_error("layout file: missing 'r b B' header");
    l.ids.resize(l.registers * l.width);
    for (std::size_t i = 0; i < l.ids.size(); ++i)
        if (!(in >> l.ids[i]))
            throw config_error("layout file: expected " + std::to_string(l.ids.size()) +
                               " identifiers, read " + std::to_string(i));
    std::string extra;
    if (in >> extra) throw config_error("layout file: trailing data '" + extra + "'");
    l.validate();
    return l;
}

inline void write_layout(std::ostream& out, const FsRamLayout& l) {
    out << l.registers << ' ' << l.width << ' ' << l.bit_count << '\n';
    for (std::size_t t = 0; t < l.registers; ++t) {
        for (std::size_t j = 0; j < l.width; ++j) out << (j ? " " : "") << l.id(t, j);
        out << '\n';
    }
}

/// Yggdrasil layout over a universe of M = 2^m leaves.
///
/// Tree nodes are numbered heap-style 1..M-1 (root 1); node n is stored as
/// identifier n-1.  Register i holds the path above leaves 2i and 2i+1:
/// reg[i].bit[j] = node floor(i/2^j) + 2^(m-j-1).
struct Yggdrasil {
    static u64 node(std::size_t i, std::size_t j, unsigned m) {
        return (u64{i} >> j) + (u64{1} << (m - j - 1));
    }
    static u64 bit_id(u64 node) { return node - 1; }

    static FsRamLayout layout(unsigned m) {
        if (m < 1 || m > 30) throw domain_error("yggdrasil depth m must be in [1, 30]");
        FsRamLayout l;
        l.registers = std::size_t{1} << (m - 1);
        l.width = m;
        l.bit_count = (std::size_t{1} << m) - 1;
        l.ids.resize(l.registers * l.width);
        for (std::size_t i = 0; i < l.registers; ++i)
            for (std::size_t j = 0; j < m; ++j) l.ids[i * m + j] = node(i, j, m) - 1;
        return l;
    }
};

class FsRam {
public:
    /// Places the identifier table and bit array in the machine's memory.
    FsRam(Machine& m, FsRamLayout layout) : m_(&m), layout_(std::move(layout)) {
        layout_.validate();
        const WideConfig& c = m.config();
        if (layout_.width > c.w || layout_.width > c.k)
            throw config_error("fsram: register width b=" + std::to_string(layout_.width) +
                               " exceeds min(w, k) = " + std::to_string(std::min<std::size_t>(c.w, c.k)));
        if (c.w < 64 && (layout_.bit_count + c.k) > (u64{1} << c.w))
            throw config_error("fsram: bit identifiers do not fit in w bits");
        const std::size_t pad = c.k - layout_.width;
        table_ = m.allocate(layout_.registers * c.k);
        bits_ = m.allocate(layout_.bit_count + pad);
        ret_ = m.allocate(1);
        for (std::size_t t = 0; t < layout_.registers; ++t) {
            for (std::size_t j = 0; j < layout_.width; ++j) m.poke(table_ + t * c.k + j, layout_.id(t, j));
            for (std::size_t j = layout_.width; j < c.k; ++j)
                m.poke(table_ + t * c.k + j, layout_.bit_count + (j - layout_.width));
        }
    }

    const FsRamLayout& layout() const noexcept { return layout_; }
    address table_base() const noexcept { return table_; }
    address bits_base() const noexcept { return bits_; }

    /// reg[t] with bit j at weight 2^j; read_word, read_content, compress, write_block.
    u64 read(std::size_t t) {
        check_register(t);
        const std::size_t k = m_->config().k;
        WideWord W = m_->read_word(table_ + t * k);
        W = m_->read_content(W, bits_);
        W = m_->compress(W);
        m_->write_block(W, 0, ret_);
        m_->tick();
        return m_->load(ret_) & WideWord::low_mask(static_cast<unsigned>(layout_.width));
    }

    /// reg[t] <- value; read_block, spread, read_word, write_content.
    void write(std::size_t t, u64 value) {
        check_register(t);
        if (value & ~WideWord::low_mask(static_cast<unsigned>(layout_.width)))
            throw domain_error("fsram write: value has bits beyond register width");
        const std::size_t k = m_->config().k;
        m_->store(ret_, value);
        WideWord W = m_->read_block(WideWord(m_->config()), 0, ret_);
        W = m_->spread(W);
        WideWord V = m_->read_word(table_ + t * k);
        m_->write_content(W, V, bits_);
    }

    /// Direct view of shared bit `id` (host side, uncharged).
    bool peek_bit(u64 id) const { return m_->peek(bits_ + id) != 0; }
    void poke_bit(u64 id, bool v) { m_->poke(bits_ + id, v ? 1 : 0); }

    std::vector<bool> dump() const {
        std::vector<bool> out(layout_.bit_count);
        for (u64 i = 0; i < layout_.bit_count; ++i) out[i] = peek_bit(i);
        return out;
    }

private:
    Machine* m_;
    FsRamLayout layout_;
    address table_ = 0;
    address bits_ = 0;
    address ret_ = 0;

    void check_register(std::size_t t) const {
        if (t >= layout_.registers)
            throw memory_fault(access_kind::scalar, 0, u128{table_} + t * m_->config().k,
                               m_->memory_size());
    }
};

/// Cells a layout needs on a given config (table, bits, return cell).
inline std::size_t fsram_cells(const WideConfig& c, const FsRamLayout& l) {
    return l.registers * c.k + l.bit_count + (c.k - std::min<std::size_t>(c.k, l.width)) + 1;
}

} // namespace uwram
