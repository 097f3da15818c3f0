#pragma once

// Positional constraint queries on a subshift: "some allowed configuration
// carries one of these words at position i, one of those at position j, ...".
//
// Two presentations share one search core. Graph presentations (full shifts,
// SFTs) keep the set of block-graph nodes compatible with the constraints
// seen so far. Table presentations (substitutions, orbit closures) keep the
// set of candidate words of the full span that are still compatible.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "symdyn/errors.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

/// A union of cylinder bases read at a position; `complement` negates it.
struct Target {
    std::vector<Word> bases;
    bool complement = false;

    static Target of(Word w) { return Target{{std::move(w)}, false}; }

    std::size_t max_length() const {
        std::size_t m = 0;
        for (const auto& b : bases) m = std::max(m, b.size());
        return m;
    }

    bool matches(const Symbol* s) const {
        bool hit = false;
        for (const auto& b : bases)
            if (std::equal(b.symbols().begin(), b.symbols().end(), s)) {
                hit = true;
                break;
            }
        return hit != complement;
    }
};

struct Constraint {
    std::size_t position = 0;
    Target target;
};

struct SearchLimits {
    std::uint64_t node_budget = std::uint64_t{1} << 19;   ///< assignment-tree nodes
    std::size_t table_length_cap = 4096;                  ///< longest table span
    std::size_t table_word_budget = std::size_t{1} << 22;
};

namespace detail {

class GraphPresentation {
public:
    using State = boost::dynamic_bitset<>;
    using Mask = boost::dynamic_bitset<>;

    GraphPresentation(const Subshift& x, std::size_t base_len) : g_(x.block_graph(std::max<std::size_t>(base_len, 1))) {}

    State start() const { return g_->alive(); }

    State advance(State s, std::size_t d) const {
        for (std::size_t i = 0; i < d && s.any(); ++i) s = g_->step(s);
        return s;
    }

    Mask compile(const Target& t) const {
        Mask m(g_->node_count());
        std::vector<Symbol> buf(g_->block_length());
        const auto& alive = g_->alive();
        for (auto v = alive.find_first(); v != Mask::npos; v = alive.find_next(v)) {
            for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = g_->symbol_of(v, i);
            if (t.matches(buf.data())) m.set(v);
        }
        return m;
    }

    State filter(const State& s, std::size_t, const Mask& m) const { return s & m; }
    static bool empty(const State& s) { return s.none(); }
    static std::size_t hash(const State& s) { return std::hash<State>{}(s); }

    /// Lexicographically least word of length L + W - 1 meeting per-index masks.
    std::optional<Word> realize(const std::vector<std::optional<Mask>>& masks) const {
        const auto len = masks.size();
        if (len == 0) return Word({}, g_->alphabet());
        std::vector<State> feasible(len);
        for (std::size_t i = len; i-- > 0;) {
            State s = g_->alive();
            if (i + 1 < len) {
                State pre(g_->node_count());
                const auto& nxt = feasible[i + 1];
                for (auto v = nxt.find_first(); v != State::npos; v = nxt.find_next(v))
                    for (auto u : g_->predecessors(v)) pre.set(u);
                s &= pre;
            }
            if (masks[i]) s &= *masks[i];
            if (s.none()) return std::nullopt;
            feasible[i] = std::move(s);
        }
        std::vector<Symbol> out;
        auto v = feasible[0].find_first();
        for (std::size_t i = 0; i < g_->block_length(); ++i) out.push_back(g_->symbol_of(v, i));
        for (std::size_t i = 1; i < len; ++i) {
            std::size_t best = State::npos;
            for (auto u : g_->successors(v))
                if (feasible[i].test(u) && u < best) best = u;
            v = best;
            out.push_back(g_->symbol_of(v, g_->block_length() - 1));
        }
        return Word(std::move(out), g_->alphabet());
    }

    const BlockGraph& graph() const { return *g_; }

private:
    std::shared_ptr<const BlockGraph> g_;
};

class TablePresentation {
public:
    using State = std::vector<std::uint32_t>;
    using Mask = Target;

    TablePresentation(const Subshift& x, std::size_t span, const SearchLimits& limits) : span_(span), p_(x.alphabet()) {
        if (span > limits.table_length_cap)
            throw size_limit("constraint span " + std::to_string(span) + " exceeds the table cap " +
                             std::to_string(limits.table_length_cap));
        if (x.kind() == SubshiftKind::orbit_closure) {
            const auto& s = x.spec().prefix.symbols();
            if (span > s.size())
                throw size_limit("constraint span " + std::to_string(span) + " exceeds the orbit prefix length " +
                                 std::to_string(s.size()));
            std::vector<std::size_t> starts(s.size() - span + 1);
            std::iota(starts.begin(), starts.end(), std::size_t{0});
            std::stable_sort(starts.begin(), starts.end(), [&](std::size_t a, std::size_t b) {
                return std::lexicographical_compare(s.begin() + static_cast<std::ptrdiff_t>(a),
                                                    s.begin() + static_cast<std::ptrdiff_t>(a + span),
                                                    s.begin() + static_cast<std::ptrdiff_t>(b),
                                                    s.begin() + static_cast<std::ptrdiff_t>(b + span));
            });
            starts.erase(std::unique(starts.begin(), starts.end(),
                                     [&](std::size_t a, std::size_t b) {
                                         return std::equal(s.begin() + static_cast<std::ptrdiff_t>(a),
                                                           s.begin() + static_cast<std::ptrdiff_t>(a + span),
                                                           s.begin() + static_cast<std::ptrdiff_t>(b));
                                     }),
                         starts.end());
            for (auto st : starts) data_.insert(data_.end(), s.begin() + static_cast<std::ptrdiff_t>(st),
                                                s.begin() + static_cast<std::ptrdiff_t>(st + span));
            count_ = starts.size();
        } else {
            auto t = x.language_table(span, {limits.table_length_cap, limits.table_word_budget});
            count_ = t.size();
            data_ = std::move(t.data);
        }
    }

    State start() const {
        State s(count_);
        std::iota(s.begin(), s.end(), std::uint32_t{0});
        return s;
    }
    static State advance(State s, std::size_t) { return s; }
    static Mask compile(const Target& t) { return t; }

    State filter(const State& s, std::size_t pos, const Mask& t) const {
        detail::require(pos + t.max_length() <= span_, "constraint beyond the table span");
        State out;
        for (auto c : s)
            if (t.matches(data_.data() + static_cast<std::size_t>(c) * span_ + pos)) out.push_back(c);
        return out;
    }
    static bool empty(const State& s) { return s.empty(); }
    static std::size_t hash(const State& s) {
        std::size_t h = s.size();
        for (auto c : s) h ^= c + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }

    std::optional<Word> realize(const std::vector<Constraint>& cs) const {
        State s = start();
        for (const auto& c : cs) s = filter(s, c.position, c.target);
        if (s.empty()) return std::nullopt;
        const auto* w = data_.data() + static_cast<std::size_t>(s.front()) * span_;
        return Word({w, w + span_}, p_);
    }

    std::size_t candidates() const { return count_; }

private:
    std::size_t span_ = 0;
    int p_ = 2;
    std::vector<Symbol> data_;
    std::size_t count_ = 0;
};

} // namespace detail

/// Result of the universally quantified assignment check.
struct AssignmentCheck {
    bool all_realizable = false;
    std::vector<std::size_t> refuting;   ///< target index per position (when false)
    std::uint64_t nodes = 0;
};

/// Constraint queries over positions in [0, span).
class ConstraintSolver {
public:
    /// `span` bounds position + base length; `base_len` is the longest base used.
    ConstraintSolver(const Subshift& x, std::size_t span, std::size_t base_len, SearchLimits limits = {})
        : limits_(limits), approximate_(x.approximate()), impl_(make_impl(x, span, base_len, limits)) {}

    bool approximate() const noexcept { return approximate_; }
    const SearchLimits& limits() const noexcept { return limits_; }

    /// Lexicographically least word realizing every constraint, if any.
    std::optional<Word> realize(std::vector<Constraint> cs) const {
        std::sort(cs.begin(), cs.end(), [](const Constraint& a, const Constraint& b) { return a.position < b.position; });
        return std::visit(
            [&](const auto& impl) -> std::optional<Word> {
                using P = std::decay_t<decltype(impl)>;
                if constexpr (std::is_same_v<P, detail::GraphPresentation>) {
                    const auto len = cs.empty() ? std::size_t{1} : cs.back().position + 1;
                    std::vector<std::optional<typename P::Mask>> masks(len);
                    for (const auto& c : cs) {
                        detail::require(c.target.max_length() <= impl.graph().block_length(),
                                        "constraint base longer than the declared base length");
                        auto m = impl.compile(c.target);
                        if (masks[c.position]) *masks[c.position] &= m;
                        else masks[c.position] = std::move(m);
                    }
                    return impl.realize(masks);
                } else {
                    return impl.realize(cs);
                }
            },
            impl_);
    }

    bool satisfiable(std::vector<Constraint> cs) const { return realize(std::move(cs)).has_value(); }

    /// Whether every choice of target per position is realizable.
    /// Throws size_limit once the node budget is exceeded.
    AssignmentCheck check_all(const std::vector<std::size_t>& positions, const std::vector<Target>& targets) const {
        return std::visit([&](const auto& impl) { return check_all_impl(impl, positions, targets); }, impl_);
    }

    /// Number of target choices per position that are realizable.
    std::uint64_t count_realizable(const std::vector<std::size_t>& positions, const std::vector<Target>& targets) const {
        return std::visit([&](const auto& impl) { return count_impl(impl, positions, targets); }, impl_);
    }

private:
    using Impl = std::variant<detail::GraphPresentation, detail::TablePresentation>;

    static Impl make_impl(const Subshift& x, std::size_t span, std::size_t base_len, const SearchLimits& limits) {
        if (x.is_graph_presented()) return Impl(std::in_place_type<detail::GraphPresentation>, x, base_len);
        return Impl(std::in_place_type<detail::TablePresentation>, x, std::max(span, base_len), limits);
    }

    static void check_positions(const std::vector<std::size_t>& positions, const std::vector<Target>& targets) {
        detail::require(!targets.empty(), "constraint search: no targets");
        for (std::size_t i = 1; i < positions.size(); ++i)
            detail::require(positions[i - 1] < positions[i], "constraint search: positions not strictly increasing");
    }

    template <class P>
    struct MemoKey {
        std::size_t index;
        typename P::State state;
        friend bool operator==(const MemoKey& a, const MemoKey& b) { return a.index == b.index && a.state == b.state; }
    };
    template <class P>
    struct MemoHash {
        std::size_t operator()(const MemoKey<P>& k) const { return P::hash(k.state) * 31u + k.index; }
    };

    template <class P>
    AssignmentCheck check_all_impl(const P& impl, const std::vector<std::size_t>& positions,
                                   const std::vector<Target>& targets) const {
        check_positions(positions, targets);
        std::vector<typename P::Mask> masks;
        for (const auto& t : targets) masks.push_back(impl.compile(t));
        AssignmentCheck out;
        std::vector<std::size_t> choice(positions.size(), 0);
        std::unordered_set<MemoKey<P>, MemoHash<P>> good;

        // All continuations from (i, s) succeed? On failure `choice` holds the refutation.
        std::function<bool(std::size_t, const typename P::State&)> go = [&](std::size_t i,
                                                                           const typename P::State& s) -> bool {
            if (i == positions.size()) return true;
            MemoKey<P> key{i, s};
            if (good.count(key)) return true;
            for (std::size_t t = 0; t < masks.size(); ++t) {
                if (++out.nodes > limits_.node_budget)
                    throw size_limit("independence check: node budget " + std::to_string(limits_.node_budget) +
                                     " exceeded");
                choice[i] = t;
                auto f = impl.filter(s, positions[i], masks[t]);
                if (P::empty(f)) {
                    std::fill(choice.begin() + static_cast<std::ptrdiff_t>(i) + 1, choice.end(), 0);
                    return false;
                }
                if (i + 1 < positions.size()) f = impl.advance(std::move(f), positions[i + 1] - positions[i]);
                if (!go(i + 1, f)) return false;
            }
            good.insert(std::move(key));
            return true;
        };
        if (positions.empty()) {
            out.all_realizable = true;
            return out;
        }
        auto s0 = impl.advance(impl.start(), positions.front());
        out.all_realizable = go(0, s0);
        if (!out.all_realizable) out.refuting = choice;
        return out;
    }

    template <class P>
    std::uint64_t count_impl(const P& impl, const std::vector<std::size_t>& positions,
                             const std::vector<Target>& targets) const {
        check_positions(positions, targets);
        std::vector<typename P::Mask> masks;
        for (const auto& t : targets) masks.push_back(impl.compile(t));
        std::unordered_map<MemoKey<P>, std::uint64_t, MemoHash<P>> memo;
        std::uint64_t nodes = 0;
        std::function<std::uint64_t(std::size_t, const typename P::State&)> go =
            [&](std::size_t i, const typename P::State& s) -> std::uint64_t {
            if (i == positions.size()) return 1;
            MemoKey<P> key{i, s};
            if (auto it = memo.find(key); it != memo.end()) return it->second;
            std::uint64_t total = 0;
            for (std::size_t t = 0; t < masks.size(); ++t) {
                if (++nodes > limits_.node_budget)
                    throw size_limit("assignment count: node budget " + std::to_string(limits_.node_budget) + " exceeded");
                auto f = impl.filter(s, positions[i], masks[t]);
                if (P::empty(f)) continue;
                if (i + 1 < positions.size()) f = impl.advance(std::move(f), positions[i + 1] - positions[i]);
                const auto c = go(i + 1, f);
                if (total > UINT64_MAX - c) throw size_limit("assignment count overflows 64 bits");
                total += c;
            }
            memo.emplace(std::move(key), total);
            return total;
        };
        if (positions.empty()) return 1;
        return go(0, impl.advance(impl.start(), positions.front()));
    }

    SearchLimits limits_;
    bool approximate_ = false;
    Impl impl_;
};

} // namespace symdyn
