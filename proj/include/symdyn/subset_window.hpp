#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "symdyn/errors.hpp"
#include "symdyn/text.hpp"

namespace symdyn {

/// A finite truncation of a subset of the nonnegative integers: the elements
/// of the set that are smaller than `horizon`.
class SubsetWindow {
public:
    SubsetWindow() = default;

    SubsetWindow(std::vector<std::int64_t> elements, std::int64_t horizon)
        : elements_(std::move(elements)), horizon_(horizon) {
        detail::require(horizon_ >= 0, "subset window: negative horizon");
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            detail::require(elements_[i] >= 0, "subset window: negative element");
            detail::require(elements_[i] < horizon_, "subset window: element " +
                                                         std::to_string(elements_[i]) +
                                                         " not below horizon " +
                                                         std::to_string(horizon_));
            if (i > 0)
                detail::require(elements_[i - 1] < elements_[i],
                                "subset window: elements not strictly increasing");
        }
    }

    /// Sorts and deduplicates before validating.
    static SubsetWindow from_unsorted(std::vector<std::int64_t> elements, std::int64_t horizon) {
        std::sort(elements.begin(), elements.end());
        elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
        return SubsetWindow(std::move(elements), horizon);
    }

    /// [lo, hi) as a window with the given horizon.
    static SubsetWindow interval(std::int64_t lo, std::int64_t hi, std::int64_t horizon) {
        std::vector<std::int64_t> e;
        for (auto v = lo; v < hi; ++v) e.push_back(v);
        return SubsetWindow(std::move(e), horizon);
    }

    const std::vector<std::int64_t>& elements() const noexcept { return elements_; }
    std::int64_t horizon() const noexcept { return horizon_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    std::int64_t front() const { return elements_.front(); }
    std::int64_t back() const { return elements_.back(); }

    bool contains(std::int64_t v) const {
        return std::binary_search(elements_.begin(), elements_.end(), v);
    }

    /// Number of elements in [lo, hi).
    std::int64_t count_in(std::int64_t lo, std::int64_t hi) const {
        if (hi <= lo) return 0;
        const auto a = std::lower_bound(elements_.begin(), elements_.end(), lo);
        const auto b = std::lower_bound(elements_.begin(), elements_.end(), hi);
        return static_cast<std::int64_t>(b - a);
    }

    /// m + S, which must stay nonnegative.
    SubsetWindow translated(std::int64_t m) const {
        std::vector<std::int64_t> e(elements_);
        for (auto& v : e) v += m;
        return SubsetWindow(std::move(e), horizon_ + m);
    }

    /// Elements below `h`, with horizon `h`.
    SubsetWindow truncated(std::int64_t h) const {
        std::vector<std::int64_t> e;
        for (auto v : elements_)
            if (v < h) e.push_back(v);
        return SubsetWindow(std::move(e), h);
    }

    std::vector<std::int64_t> prefix(std::size_t n) const {
        return {elements_.begin(), elements_.begin() + static_cast<std::ptrdiff_t>(std::min(n, size()))};
    }

    friend bool operator==(const SubsetWindow&, const SubsetWindow&) = default;

private:
    std::vector<std::int64_t> elements_;
    std::int64_t horizon_ = 0;
};

/// `horizon;e1,e2,...`
inline std::string to_string(const SubsetWindow& s) {
    return std::to_string(s.horizon()) + ";" + text::join(s.elements(), ",");
}

inline SubsetWindow parse_subset_window(std::string_view s) {
    s = text::trim(s);
    const auto semi = s.find(';');
    if (semi == std::string_view::npos)
        throw invalid_argument("subset window: expected 'horizon;e1,e2,...', got '" + std::string(s) + "'");
    const auto horizon = text::parse_int<std::int64_t>(s.substr(0, semi), "horizon");
    auto elements = text::parse_int_list<std::int64_t>(s.substr(semi + 1));
    return SubsetWindow(std::move(elements), horizon);
}

/// Families of subsets of the nonnegative integers, each described by a
/// canonical generating member.
struct FamilySpec {
    struct Explicit { SubsetWindow set; };
    struct Arithmetic { std::int64_t step = 1; std::int64_t offset = 0; };
    struct Cofinite { std::int64_t threshold = 0; };
    struct Ip { std::vector<std::int64_t> generators; };
    struct SyndeticGap { std::int64_t bound = 1; };

    std::variant<Explicit, Arithmetic, Cofinite, Ip, SyndeticGap> kind;

    static FamilySpec arithmetic(std::int64_t step, std::int64_t offset) {
        detail::require(step >= 1, "arithmetic family: step must be >= 1");
        detail::require(offset >= 0, "arithmetic family: offset must be >= 0");
        return {Arithmetic{step, offset}};
    }
    static FamilySpec ip(std::vector<std::int64_t> gens) {
        detail::require(!gens.empty(), "ip family: no generators");
        for (auto g : gens) detail::require(g >= 1, "ip family: generators must be positive");
        return {Ip{std::move(gens)}};
    }
    static FamilySpec cofinite(std::int64_t t) {
        detail::require(t >= 0, "cofinite family: negative threshold");
        return {Cofinite{t}};
    }
    static FamilySpec syndetic(std::int64_t bound) {
        detail::require(bound >= 1, "syndetic family: gap bound must be >= 1");
        return {SyndeticGap{bound}};
    }
    static FamilySpec explicit_set(SubsetWindow s) { return {Explicit{std::move(s)}}; }
};

inline std::string to_string(const FamilySpec& f) {
    struct V {
        std::string operator()(const FamilySpec::Explicit& e) const { return "explicit:" + to_string(e.set); }
        std::string operator()(const FamilySpec::Arithmetic& a) const {
            return "arith:" + std::to_string(a.step) + "," + std::to_string(a.offset);
        }
        std::string operator()(const FamilySpec::Cofinite& c) const { return "cofinite:" + std::to_string(c.threshold); }
        std::string operator()(const FamilySpec::Ip& i) const { return "ip:" + text::join(i.generators, "+"); }
        std::string operator()(const FamilySpec::SyndeticGap& s) const { return "syndetic:" + std::to_string(s.bound); }
    };
    return std::visit(V{}, f.kind);
}

/// `arith:k,off` / `ip:g1+g2+...` / `explicit:<window>` / `cofinite:t` / `syndetic:L`
inline FamilySpec parse_family_spec(std::string_view s) {
    s = text::trim(s);
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) throw invalid_argument("family spec: missing ':' in '" + std::string(s) + "'");
    const auto tag = s.substr(0, colon);
    const auto body = s.substr(colon + 1);
    if (tag == "arith") {
        const auto parts = text::parse_int_list<std::int64_t>(body);
        detail::require(parts.size() == 2, "family spec: arith expects 'k,off'");
        return FamilySpec::arithmetic(parts[0], parts[1]);
    }
    if (tag == "ip") return FamilySpec::ip(text::parse_int_list<std::int64_t>(body, '+'));
    if (tag == "explicit") return FamilySpec::explicit_set(parse_subset_window(body));
    if (tag == "cofinite") return FamilySpec::cofinite(text::parse_int<std::int64_t>(body));
    if (tag == "syndetic") return FamilySpec::syndetic(text::parse_int<std::int64_t>(body));
    throw invalid_argument("family spec: unknown kind '" + std::string(tag) + "'");
}

} // namespace symdyn
