#pragma once

// Subsets of the nonnegative integers at finite scale: densities, family
// predicates, IP sets, block-family witnesses and the sparse-set
// constructions built on translate counting.
//
// Every limit that is defined on infinite sets is replaced here by its value
// on a finite window; results are estimates at that scale, not proofs.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "symdyn/errors.hpp"
#include "symdyn/subset_window.hpp"

namespace symdyn {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

struct DensityReport {
    Rational lower;
    Rational upper;
    Rational banach_upper;
    std::int64_t window_length = 0;
};

/// Prefix densities are sampled at n = w, 2w, ... <= horizon, so that a
/// periodic set whose period divides w gets its exact density; the Banach
/// estimate scans every length-w interval of [0, horizon).
inline DensityReport densities(const SubsetWindow& s, std::int64_t window_length) {
    detail::require(window_length >= 1, "densities: window_length must be positive");
    detail::require(window_length <= s.horizon(), "densities: window_length exceeds horizon");

    DensityReport r;
    r.window_length = window_length;
    bool first = true;
    for (std::int64_t n = window_length; n <= s.horizon(); n += window_length) {
        const Rational ratio(s.count_in(0, n), n);
        if (first || ratio < r.lower) r.lower = ratio;
        if (first || ratio > r.upper) r.upper = ratio;
        first = false;
    }
    std::int64_t best = 0;
    for (std::int64_t lo = 0; lo + window_length <= s.horizon(); ++lo)
        best = std::max(best, s.count_in(lo, lo + window_length));
    r.banach_upper = Rational(best, window_length);
    return r;
}

struct PiecewiseWitness {
    std::int64_t lo = 0;  ///< interval [lo, hi)
    std::int64_t hi = 0;
    std::int64_t gap = 1; ///< largest gap of S inside the interval
    friend bool operator==(const PiecewiseWitness&, const PiecewiseWitness&) = default;
};

struct FamilyPredicates {
    bool syndetic_with_gap = false;
    bool thick_up_to = false;
    std::optional<PiecewiseWitness> pws_witness;
};

/// Gaps are measured between consecutive elements, from 0 to the first
/// element, and from the last element to the horizon.
inline FamilyPredicates family_predicates(const SubsetWindow& s, std::int64_t gap_bound, std::int64_t thick_depth) {
    detail::require(gap_bound >= 1, "family_predicates: gap bound must be >= 1");
    detail::require(thick_depth >= 1, "family_predicates: thick depth must be >= 1");
    detail::require(thick_depth <= s.horizon(), "family_predicates: thick depth exceeds horizon");

    FamilyPredicates out;
    const auto& e = s.elements();
    if (!e.empty()) {
        bool ok = e.front() <= gap_bound && s.horizon() - e.back() <= gap_bound;
        for (std::size_t i = 1; ok && i < e.size(); ++i) ok = e[i] - e[i - 1] <= gap_bound;
        out.syndetic_with_gap = ok;
    }

    std::int64_t run = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        run = (i > 0 && e[i] == e[i - 1] + 1) ? run + 1 : 1;
        if (run >= thick_depth) {
            out.thick_up_to = true;
            break;
        }
    }

    // maximal stretches in which consecutive elements are within gap_bound
    std::size_t start = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const bool breaks = i + 1 == e.size() || e[i + 1] - e[i] > gap_bound;
        if (!breaks) continue;
        const std::int64_t lo = e[start];
        const std::int64_t hi = e[i] + 1;
        if (hi - lo >= thick_depth) {
            std::int64_t gap = 1;
            for (auto j = start + 1; j <= i; ++j) gap = std::max(gap, e[j] - e[j - 1]);
            out.pws_witness = PiecewiseWitness{lo, hi, gap};
            break;
        }
        start = i + 1;
    }
    return out;
}

inline constexpr std::size_t kMaxIpGenerators = 24;

/// All sums over nonempty sets of distinct generator indices.
inline SubsetWindow ip_generate(const std::vector<std::int64_t>& generators) {
    if (generators.empty()) throw invalid_argument("ip_generate: no generators");
    if (generators.size() > kMaxIpGenerators)
        throw size_limit("ip_generate: " + std::to_string(generators.size()) + " generators exceed the limit of " +
                         std::to_string(kMaxIpGenerators));
    for (auto g : generators) detail::require(g >= 1, "ip_generate: generators must be positive");

    std::vector<std::int64_t> sums{0};
    sums.reserve(std::size_t{1} << generators.size());
    for (auto g : generators) {
        const auto n = sums.size();
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t v = 0;
            if (__builtin_add_overflow(sums[i], g, &v)) throw size_limit("ip_generate: sum overflows");
            sums.push_back(v);
        }
    }
    sums.erase(sums.begin());  // the empty sum
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    const auto horizon = sums.back() + 1;
    return SubsetWindow(std::move(sums), horizon);
}

struct BlockWitness {
    std::vector<std::int64_t> translates;   ///< b_1 <= ... <= b_j found so far
    std::optional<std::size_t> failed_at;   ///< 1-based j with no translate inside the horizon
    bool success() const { return !failed_at.has_value(); }
};

/// For j = 1..depth finds the least b_j with b_j + {p_1..p_j} inside S, where
/// p_1 < p_2 < ... are the elements of F. The least translates are
/// automatically nondecreasing, so each search starts at the previous one.
/// A failure only means no translate exists below the horizon.
inline BlockWitness block_witness(const SubsetWindow& s, const SubsetWindow& f, std::size_t depth) {
    detail::require(depth >= 1, "block_witness: depth must be positive");
    detail::require(depth <= f.size(), "block_witness: depth exceeds |F|");

    const auto& p = f.elements();
    BlockWitness out;
    std::int64_t b = -p.front();
    for (std::size_t j = 1; j <= depth; ++j) {
        bool found = false;
        for (; b + p[j - 1] < s.horizon(); ++b) {
            bool fits = true;
            for (std::size_t i = 0; i < j && fits; ++i) fits = s.contains(b + p[i]);
            if (fits) {
                found = true;
                break;
            }
        }
        if (!found) {
            out.failed_at = j;
            return out;
        }
        out.translates.push_back(b);
    }
    return out;
}

/// Positive pairwise differences.
inline SubsetWindow difference_set(const SubsetWindow& f) {
    detail::require(!f.empty(), "difference_set: empty set");
    std::vector<std::int64_t> d;
    const auto& e = f.elements();
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) d.push_back(e[i] - e[j]);
    return SubsetWindow::from_unsorted(std::move(d), e.back() + 1);
}

struct TranslateResult {
    std::int64_t best_p = 0;
    std::int64_t count = 0;      ///< |S ∩ I ∩ (F + best_p)|
    bool success = false;        ///< count >= k
    Rational density;            ///< |S ∩ I| / |I|
    bool guarantee_applies = false;      ///< density * |F| > k
    std::optional<std::int64_t> guarantee_length;  ///< least N with d|F| / (1 + max F / N) >= k
    bool guaranteed = false;     ///< guarantee applies and |I| >= N
};

/// Least N >= 1 with d|F| / (1 + maxF / N) >= k, i.e. N (d|F| - k) >= k maxF.
inline std::int64_t translate_guarantee_length(const Rational& d, std::int64_t f_size, std::int64_t f_max, std::int64_t k) {
    const Rational excess = d * f_size - k;
    detail::require(excess > 0, "translate guarantee needs d|F| > k");
    const Rational need = Rational(k * f_max) / excess;
    std::int64_t n = need.numerator() / need.denominator();
    if (Rational(n) < need) ++n;
    return std::max<std::int64_t>(n, 1);
}

/// Exhaustive scan over p in [lo - max F, hi - 1] for the translate of F that
/// meets S ∩ [lo, hi) most often. Smallest maximizing p wins.
inline TranslateResult find_translate(const SubsetWindow& s, std::int64_t lo, std::int64_t hi, const SubsetWindow& f,
                                      std::int64_t k) {
    detail::require(!f.empty(), "find_translate: empty F");
    detail::require(lo < hi, "find_translate: empty interval");
    detail::require(lo >= 0 && hi <= s.horizon(), "find_translate: interval outside [0, horizon)");
    detail::require(k >= 1, "find_translate: k must be positive");

    TranslateResult r;
    const std::int64_t len = hi - lo;
    r.density = Rational(s.count_in(lo, hi), len);
    const auto f_size = static_cast<std::int64_t>(f.size());
    r.guarantee_applies = r.density * f_size > k;
    if (r.guarantee_applies) {
        r.guarantee_length = translate_guarantee_length(r.density, f_size, f.back(), k);
        r.guaranteed = len >= *r.guarantee_length;
    }

    r.best_p = lo - f.back();
    r.count = -1;
    for (std::int64_t p = lo - f.back(); p <= hi - 1; ++p) {
        std::int64_t c = 0;
        for (auto v : f.elements()) {
            const auto x = v + p;
            if (x >= lo && x < hi && s.contains(x)) ++c;
        }
        if (c > r.count) {
            r.count = c;
            r.best_p = p;
        }
    }
    r.success = r.count >= k;
    if (r.guaranteed && !r.success)
        throw invariant_failure("find_translate: guaranteed translate count " + std::to_string(k) + " not reached");
    return r;
}

/// Whether some x < y < z in the set satisfy x + z = 2y.
inline std::optional<std::array<std::int64_t, 3>> find_three_term_ap(const std::vector<std::int64_t>& sorted) {
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 2; j < sorted.size(); ++j) {
            const auto sum = sorted[i] + sorted[j];
            if (sum % 2 != 0) continue;
            const auto mid = sum / 2;
            if (std::binary_search(sorted.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                   sorted.begin() + static_cast<std::ptrdiff_t>(j), mid))
                return std::array<std::int64_t, 3>{sorted[i], mid, sorted[j]};
        }
    return std::nullopt;
}

/// Sets {a_1 < ... < a_k}, k >= 3, of positive integers with
/// a_j - a_i > a_i - a_s for all s < i < j, listed by largest element, then
/// by size, then lexicographically. Every such set appears at a finite index.
inline std::vector<std::vector<std::int64_t>> superincreasing_blocks(std::size_t count) {
    std::vector<std::vector<std::int64_t>> out;
    // The condition reduces to a_{i+1} - a_i > a_i - a_1 for 2 <= i < k.
    for (std::int64_t top = 3; out.size() < count; ++top) {
        std::vector<std::vector<std::int64_t>> level;
        std::vector<std::int64_t> cur;
        auto extend = [&](auto&& self) -> void {
            const auto last = cur.back();
            const bool can_close = cur.size() < 2 || top - last > last - cur.front();
            if (cur.size() >= 2 && can_close) {
                auto full = cur;
                full.push_back(top);
                level.push_back(std::move(full));
            }
            for (auto next = last + 1; next < top; ++next) {
                if (cur.size() >= 2 && next - last <= last - cur.front()) continue;
                cur.push_back(next);
                self(self);
                cur.pop_back();
            }
        };
        for (std::int64_t a1 = 1; a1 < top; ++a1) {
            cur = {a1};
            extend(extend);
        }
        std::sort(level.begin(), level.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        for (auto& blk : level) {
            if (out.size() == count) break;
            out.push_back(std::move(blk));
        }
    }
    return out;
}

struct FssBlock {
    std::vector<std::int64_t> block;  ///< A_i
    std::int64_t shift = 0;           ///< t_i
};

struct FssConstruction {
    SubsetWindow set;
    std::vector<FssBlock> blocks;
};

inline constexpr std::size_t kMaxFssBlocks = 20;

/// S = union of (A_i + t_i) with t_1 = 0 and t_{i+1} = g (t_i + max A_i).
/// The result is checked for 3-term arithmetic progressions before it is
/// returned.
inline FssConstruction fss_construct(std::size_t num_blocks, std::int64_t growth_factor) {
    detail::require(num_blocks <= kMaxFssBlocks, "fss_construct: at most 20 blocks");
    detail::require(growth_factor >= 3, "fss_construct: growth factor must be >= 3");

    FssConstruction out;
    const auto blocks = superincreasing_blocks(num_blocks);
    std::vector<std::int64_t> elems;
    std::int64_t t = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i > 0) {
            std::int64_t base = 0;
            if (__builtin_add_overflow(t, blocks[i - 1].back(), &base) ||
                __builtin_mul_overflow(base, growth_factor, &t))
                throw size_limit("fss_construct: shifts overflow 64-bit integers");
        }
        out.blocks.push_back({blocks[i], t});
        for (auto a : blocks[i]) elems.push_back(a + t);
    }
    std::sort(elems.begin(), elems.end());
    const std::int64_t horizon = elems.empty() ? 0 : elems.back() + 1;
    out.set = SubsetWindow(std::move(elems), horizon);

    if (auto ap = find_three_term_ap(out.set.elements()))
        throw invariant_failure("fss_construct: 3-term progression " + std::to_string((*ap)[0]) + "," +
                                std::to_string((*ap)[1]) + "," + std::to_string((*ap)[2]));
    return out;
}

struct AntiSsResult {
    SubsetWindow set;
    bool complete = false;               ///< n elements were found below the horizon
    std::int64_t max_intersection = 0;   ///< max over p of |F ∩ (S + p)|
};

/// max over p of |F ∩ (S + p)|, scanning every p that can meet F.
inline std::int64_t max_translate_intersection(const SubsetWindow& f, const SubsetWindow& s) {
    if (f.empty() || s.empty()) return 0;
    std::int64_t best = 0;
    for (std::int64_t p = f.front() - s.back(); p <= f.back() - s.front(); ++p) {
        std::int64_t c = 0;
        for (auto b : f.elements())
            if (s.contains(b - p)) ++c;
        best = std::max(best, c);
    }
    return best;
}

/// Greedy b_1 = 0 < b_2 < ... where each new element is the least candidate
/// below S's horizon that does not put three elements in one translate of S.
inline AntiSsResult anti_ss_sparse(const SubsetWindow& s, std::size_t n) {
    detail::require(n >= 1, "anti_ss_sparse: n must be positive");
    const auto& a = s.elements();
    for (std::size_t i = 2; i < a.size(); ++i)
        detail::require(a[i] - a[i - 1] > a[i - 1] - a[i - 2], "anti_ss_sparse: gaps of S must strictly increase");

    std::vector<std::int64_t> f;
    for (std::int64_t c = 0; c < s.horizon() && f.size() < n; ++c) {
        bool ok = true;
        for (auto x : a) {
            const auto p = c - x;
            int hits = 0;
            for (auto b : f)
                if (s.contains(b - p)) ++hits;
            if (hits >= 2) {
                ok = false;
                break;
            }
        }
        if (ok) f.push_back(c);
    }
    AntiSsResult out;
    out.complete = f.size() == n;
    out.set = SubsetWindow(std::move(f), s.horizon());
    out.max_intersection = max_translate_intersection(out.set, s);
    detail::ensure(out.max_intersection <= 2, "anti_ss_sparse: translate meets three elements");
    return out;
}

/// The canonical member of a family truncated to [0, horizon).
inline SubsetWindow family_member(const FamilySpec& f, std::int64_t horizon) {
    struct V {
        std::int64_t h;
        SubsetWindow operator()(const FamilySpec::Explicit& e) const { return e.set.truncated(h); }
        SubsetWindow operator()(const FamilySpec::Arithmetic& a) const {
            std::vector<std::int64_t> v;
            for (auto x = a.offset; x < h; x += a.step) v.push_back(x);
            return SubsetWindow(std::move(v), h);
        }
        SubsetWindow operator()(const FamilySpec::Cofinite& c) const {
            return SubsetWindow::interval(std::min(c.threshold, h), h, h);
        }
        SubsetWindow operator()(const FamilySpec::Ip& i) const { return ip_generate(i.generators).truncated(h); }
        SubsetWindow operator()(const FamilySpec::SyndeticGap& s) const {
            std::vector<std::int64_t> v;
            for (std::int64_t x = s.bound - 1; x < h; x += s.bound) v.push_back(x);
            return SubsetWindow(std::move(v), h);
        }
    };
    detail::require(horizon >= 0, "family_member: negative horizon");
    return std::visit(V{horizon}, f.kind);
}

/// Membership at the scale of S's horizon: S contains the canonical member
/// (syndetic families use the gap predicate instead).
inline bool in_family(const FamilySpec& f, const SubsetWindow& s) {
    if (const auto* g = std::get_if<FamilySpec::SyndeticGap>(&f.kind))
        return family_predicates(s, g->bound, 1).syndetic_with_gap;
    const auto member = family_member(f, s.horizon());
    return std::all_of(member.elements().begin(), member.elements().end(),
                       [&](std::int64_t v) { return s.contains(v); });
}

} // namespace symdyn
