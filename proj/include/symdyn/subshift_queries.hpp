#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "symdyn/constraint_engine.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/subset_window.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

/// Points whose symbols starting at `offset` spell `base`.
struct CylinderSet {
    Word base;
    std::size_t offset = 0;

    std::size_t extent() const { return offset + base.size(); }
};

inline bool cylinder_nonempty(const Subshift& x, const CylinderSet& c) {
    if (c.base.empty()) return true;
    return x.allows(c.base);
}

/// N(U,V) within [0, horizon): the lags n with U and sigma^-n V intersecting.
inline SubsetWindow return_times(const Subshift& x, const CylinderSet& u, const CylinderSet& v, std::size_t horizon,
                                 const SearchLimits& limits = {}) {
    detail::require(!u.base.empty() && !v.base.empty(), "return_times: cylinder bases must be nonempty");
    detail::require(cylinder_nonempty(x, u), "return_times: U is empty in this subshift");
    detail::require(cylinder_nonempty(x, v), "return_times: V is empty in this subshift");
    const auto base_len = std::max(u.base.size(), v.base.size());
    const auto span = horizon + std::max(u.extent(), v.extent());
    ConstraintSolver solver(x, span, base_len, limits);
    std::vector<std::int64_t> out;
    for (std::size_t n = 0; n < horizon; ++n) {
        std::vector<Constraint> cs{{u.offset, Target::of(u.base)}, {v.offset + n, Target::of(v.base)}};
        if (solver.satisfiable(cs)) out.push_back(static_cast<std::int64_t>(n));
    }
    return SubsetWindow(std::move(out), static_cast<std::int64_t>(horizon));
}

/// For all allowed symbols a, b: every lag in [n0, n0 + m_f] lies in N([a],[b]).
inline bool is_mixing_window(const Subshift& x, std::size_t n0) {
    if (!x.is_graph_presented()) throw unsupported_operation("is_mixing_window: needs a full shift or an SFT");
    const auto symbols = x.language(1);
    const auto mf = x.spec().max_forbidden_length();
    ConstraintSolver solver(x, n0 + mf + 1, 1);
    for (const auto& a : symbols)
        for (const auto& b : symbols)
            for (std::size_t n = n0; n <= n0 + mf; ++n)
                if (!solver.satisfiable({{0, Target::of(a)}, {n, Target::of(b)}})) return false;
    return true;
}

/// A lag beyond which a mixing SFT has every symbol-to-symbol lag: the
/// primitive-matrix exponent bound on the block graph plus the block length.
inline std::size_t mixing_threshold(const Subshift& x) {
    if (!x.is_graph_presented()) throw unsupported_operation("mixing_threshold: needs a full shift or an SFT");
    const auto g = x.block_graph(1);
    const auto n = g->alive().count();
    return (n - 1) * (n - 1) + 1 + g->block_length();
}

/// Every allowed word of length n occurs in every allowed word of length R.
inline bool is_minimal_window(const Subshift& x, std::size_t n, std::size_t r, const LanguageLimits& limits = {}) {
    detail::require(n >= 1 && n <= r, "is_minimal_window: need 1 <= n <= R");
    const auto small = x.language_table(n, limits);
    const auto big = x.language_table(r, limits);
    for (std::size_t i = 0; i < big.size(); ++i) {
        const auto* w = big.at(i);
        for (std::size_t j = 0; j < small.size(); ++j) {
            const auto* f = small.at(j);
            if (std::search(w, w + r, f, f + n) == w + r) return false;
        }
    }
    return true;
}

/// X x Y as an SFT over symbols a * p_Y + b.
inline SubshiftSpec product(const Subshift& x, const Subshift& y) {
    if (!x.is_graph_presented() || !y.is_graph_presented())
        throw unsupported_operation("product: both factors must be full shifts or SFTs");
    const int px = x.alphabet();
    const int py = y.alphabet();
    if (px * py > kMaxAlphabet) throw size_limit("product: alphabet " + std::to_string(px * py) + " exceeds 36");
    const int p = px * py;
    if (x.kind() == SubshiftKind::full && y.kind() == SubshiftKind::full) return SubshiftSpec::full(p);

    constexpr std::uint64_t kMaxLifts = std::uint64_t{1} << 16;
    std::vector<Word> forbidden;
    // Every paired word whose coordinate projection is the forbidden word.
    auto lift = [&](const Word& f, bool first) {
        const int other = first ? py : px;
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < f.size(); ++i) {
            count *= static_cast<std::uint64_t>(other);
            if (count > kMaxLifts) throw size_limit("product: too many lifted forbidden words");
        }
        for (std::uint64_t c = 0; c < count; ++c) {
            const auto o = Word::from_code(c, f.size(), std::max(other, 2));
            std::vector<Symbol> s(f.size());
            for (std::size_t i = 0; i < f.size(); ++i)
                s[i] = static_cast<Symbol>(first ? f[i] * py + o[i] : o[i] * py + f[i]);
            forbidden.emplace_back(std::move(s), p);
        }
    };
    for (const auto& f : x.spec().forbidden) lift(f, true);
    for (const auto& f : y.spec().forbidden) lift(f, false);
    return SubshiftSpec::sft(p, std::move(forbidden));
}

} // namespace symdyn
