#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace uwram {

/// Base class of every error raised by the simulator.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid WideConfig, mismatched configs between operands, bad construction input.
class config_error : public error {
public:
    using error::error;
};

/// Strict-mode violation of an operation's input contract (compress/spread/field ops).
class precondition_error : public error {
public:
    using error::error;
};

/// Requested index/parameter outside the supported domain of an algorithm.
class domain_error : public error {
public:
    using error::error;
};

enum class access_kind { block, word, content, scalar };

inline const char* to_string(access_kind k) {
    switch (k) {
    case access_kind::block: return "block";
    case access_kind::word: return "word";
    case access_kind::content: return "content";
    case access_kind::scalar: return "scalar";
    }
    return "?";
}

/// Address outside machine memory (or base+offset overflow).
class memory_fault : public error {
public:
    memory_fault(access_kind kind, std::size_t block, unsigned __int128 address, std::size_t size)
        : error(std::string("memory fault: ") + to_string(kind) + " access, block " +
                std::to_string(block) + ", address " + format(address) + " (memory size " +
                std::to_string(size) + ")"),
          kind_(kind), block_(block), address_(address) {}

    access_kind kind() const noexcept { return kind_; }
    std::size_t block() const noexcept { return block_; }
    unsigned __int128 address() const noexcept { return address_; }

private:
    static std::string format(unsigned __int128 a) {
        if (a == 0) return "0";
        std::string s;
        while (a > 0) {
            s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(a % 10)));
            a /= 10;
        }
        return s;
    }

    access_kind kind_;
    std::size_t block_;
    unsigned __int128 address_;
};

/// Two blocks of one write_content target the same cell.
class crew_violation : public error {
public:
    crew_violation(std::size_t first, std::size_t second, std::uint64_t address)
        : error("CREW violation: blocks " + std::to_string(first) + " and " +
                std::to_string(second) + " both write address " + std::to_string(address)),
          first_(first), second_(second), address_(address) {}

    std::size_t first_block() const noexcept { return first_; }
    std::size_t second_block() const noexcept { return second_; }
    std::uint64_t address() const noexcept { return address_; }

private:
    std::size_t first_;
    std::size_t second_;
    std::uint64_t address_;
};

/// An oracle was asked for an instance beyond its documented brute-force budget.
class budget_error : public error {
public:
    using error::error;
};

} // namespace uwram
