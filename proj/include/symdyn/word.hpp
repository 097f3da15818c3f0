#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/errors.hpp"

namespace symdyn {

using Symbol = std::uint8_t;

inline constexpr int kMaxAlphabet = 36;

inline char symbol_char(Symbol s) {
    return s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + (s - 10));
}

inline int symbol_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
}

/// A finite word over {0, ..., p-1}; position 0 is the leftmost symbol.
class Word {
public:
    Word() = default;
    Word(std::vector<Symbol> symbols, int alphabet) : symbols_(std::move(symbols)), alphabet_(alphabet) {
        detail::require(alphabet_ >= 2 && alphabet_ <= kMaxAlphabet, "word: alphabet size must be in [2, 36]");
        for (auto s : symbols_)
            detail::require(s < alphabet_, "word: symbol " + std::to_string(int{s}) + " outside alphabet of size " +
                                               std::to_string(alphabet_));
    }

    /// Digit string (then a-z for symbols >= 10).
    static Word parse(std::string_view digits, int alphabet) {
        std::vector<Symbol> s;
        s.reserve(digits.size());
        for (char c : digits) {
            const int v = symbol_value(c);
            if (v < 0 || v >= alphabet)
                throw invalid_argument("word '" + std::string(digits) + "': bad symbol '" + std::string(1, c) + "'");
            s.push_back(static_cast<Symbol>(v));
        }
        return Word(std::move(s), alphabet);
    }

    static Word repeat(Symbol s, std::size_t n, int alphabet) { return Word(std::vector<Symbol>(n, s), alphabet); }

    /// The length-n word whose base-p value is `code` (most significant first).
    static Word from_code(std::uint64_t code, std::size_t n, int alphabet) {
        std::vector<Symbol> s(n);
        for (std::size_t i = n; i-- > 0;) {
            s[i] = static_cast<Symbol>(code % static_cast<std::uint64_t>(alphabet));
            code /= static_cast<std::uint64_t>(alphabet);
        }
        return Word(std::move(s), alphabet);
    }

    std::uint64_t code() const {
        std::uint64_t c = 0;
        for (auto s : symbols_) c = c * static_cast<std::uint64_t>(alphabet_) + s;
        return c;
    }

    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    int alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }

    Word sub(std::size_t pos, std::size_t len) const {
        detail::require(pos + len <= size(), "word: factor out of range");
        return Word({symbols_.begin() + static_cast<std::ptrdiff_t>(pos),
                     symbols_.begin() + static_cast<std::ptrdiff_t>(pos + len)},
                    alphabet_);
    }

    /// Drops the first i symbols (the shift applied to a finite block).
    Word shifted(std::size_t i) const { return sub(std::min(i, size()), size() - std::min(i, size())); }

    Word& operator+=(const Word& other) {
        detail::require(alphabet_ == other.alphabet_ || other.empty(), "word: alphabet mismatch in concatenation");
        symbols_.insert(symbols_.end(), other.symbols_.begin(), other.symbols_.end());
        return *this;
    }
    friend Word operator+(Word a, const Word& b) { return a += b; }

    bool contains_factor(const Word& f) const {
        if (f.size() > size()) return false;
        return std::search(symbols_.begin(), symbols_.end(), f.symbols_.begin(), f.symbols_.end()) != symbols_.end();
    }

    friend bool operator==(const Word& a, const Word& b) { return a.symbols_ == b.symbols_; }
    friend bool operator<(const Word& a, const Word& b) { return a.symbols_ < b.symbols_; }

private:
    std::vector<Symbol> symbols_;
    int alphabet_ = 2;
};

inline std::string to_string(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (auto c : w.symbols()) s.push_back(symbol_char(c));
    return s;
}

} // namespace symdyn
