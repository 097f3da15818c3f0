#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/errors.hpp"

namespace symdyn::text {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

template <class Int>
Int parse_int(std::string_view s, std::string_view what = "integer") {
    s = trim(s);
    Int value{};
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc{} || ptr != end)
        throw invalid_argument("expected " + std::string(what) + ", got '" + std::string(s) + "'");
    return value;
}

/// Comma separated integers; an empty string yields an empty list.
template <class Int>
std::vector<Int> parse_int_list(std::string_view s, char sep = ',') {
    std::vector<Int> out;
    s = trim(s);
    if (s.empty()) return out;
    for (auto part : split(s, sep)) out.push_back(parse_int<Int>(part));
    return out;
}

template <class Range>
std::string join(const Range& values, std::string_view sep) {
    std::string out;
    bool first = true;
    for (const auto& v : values) {
        if (!first) out += sep;
        first = false;
        out += std::to_string(v);
    }
    return out;
}

} // namespace symdyn::text
