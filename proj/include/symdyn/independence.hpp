#pragma once

// Independence sets for tuples of cylinder unions. A finite F is an
// independence set for (A_1, ..., A_k) when every choice s: F -> {1..k} is
// realized by one point x with sigma^j x in A_s(j) for all j in F. Cylinder
// constraints only relax when positions are dropped, so checking J = F
// covers every nonempty J inside F.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "symdyn/constraint_engine.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/integer_sets.hpp"
#include "symdyn/subset_window.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/subshift_queries.hpp"

namespace symdyn {

/// (A_1, ..., A_k), each A_i a union of cylinders read at offset 0.
class CylinderTuple {
public:
    CylinderTuple(std::shared_ptr<const Subshift> x, std::vector<Target> targets)
        : x_(std::move(x)), targets_(std::move(targets)) {
        detail::require(x_ != nullptr, "cylinder tuple: no subshift");
        detail::require(!targets_.empty(), "cylinder tuple: need at least one target");
        for (const auto& t : targets_) {
            detail::require(!t.complement, "cylinder tuple: complemented targets are not cylinder unions");
            detail::require(!t.bases.empty(), "cylinder tuple: empty target");
            for (const auto& b : t.bases) {
                detail::require(!b.empty(), "cylinder tuple: empty base word");
                detail::require(b.alphabet() == x_->alphabet(), "cylinder tuple: base over a different alphabet");
                detail::require(x_->allows(b), "cylinder tuple: base " + to_string(b) + " is not allowed");
            }
        }
    }

    /// One single-word cylinder per target.
    static CylinderTuple of_words(std::shared_ptr<const Subshift> x, const std::vector<Word>& words) {
        std::vector<Target> t;
        for (const auto& w : words) t.push_back(Target::of(w));
        return CylinderTuple(std::move(x), std::move(t));
    }

    const Subshift& subshift() const { return *x_; }
    std::shared_ptr<const Subshift> subshift_ptr() const { return x_; }
    const std::vector<Target>& targets() const noexcept { return targets_; }
    std::size_t size() const noexcept { return targets_.size(); }

    std::size_t max_base_length() const {
        std::size_t m = 0;
        for (const auto& t : targets_) m = std::max(m, t.max_length());
        return m;
    }

private:
    std::shared_ptr<const Subshift> x_;
    std::vector<Target> targets_;
};

struct IndependenceResult {
    bool independent = false;
    std::vector<std::size_t> refuting;   ///< 1-based target index per element of F
    std::uint64_t nodes = 0;
};

inline ConstraintSolver make_solver(const CylinderTuple& t, std::int64_t max_position, const SearchLimits& limits) {
    const auto base = t.max_base_length();
    return ConstraintSolver(t.subshift(), static_cast<std::size_t>(max_position) + base, base, limits);
}

inline std::vector<std::size_t> as_positions(const std::vector<std::int64_t>& f) {
    return {f.begin(), f.end()};
}

/// Throws size_limit when the search exceeds the node budget.
inline IndependenceResult is_independence_set(const CylinderTuple& t, const SubsetWindow& f,
                                              const SearchLimits& limits = {}) {
    IndependenceResult out;
    if (f.empty()) {
        out.independent = true;
        return out;
    }
    const auto solver = make_solver(t, f.back(), limits);
    const auto r = solver.check_all(as_positions(f.elements()), t.targets());
    out.independent = r.all_realizable;
    out.nodes = r.nodes;
    for (auto i : r.refuting) out.refuting.push_back(i + 1);
    return out;
}

/// A point prefix realizing the assignment s (1-based target indices), if any.
inline std::optional<Word> realize_assignment(const CylinderTuple& t, const SubsetWindow& f,
                                              const std::vector<std::size_t>& s, const SearchLimits& limits = {}) {
    detail::require(s.size() == f.size(), "realize_assignment: one target per element of F");
    if (f.empty()) return Word({}, t.subshift().alphabet());
    std::vector<Constraint> cs;
    for (std::size_t i = 0; i < s.size(); ++i) {
        detail::require(s[i] >= 1 && s[i] <= t.size(), "realize_assignment: target index out of range");
        cs.push_back({static_cast<std::size_t>(f.elements()[i]), t.targets()[s[i] - 1]});
    }
    return make_solver(t, f.back(), limits).realize(std::move(cs));
}

/// Largest independent subset of `positions` (ascending), found by
/// branch and bound with hereditary pruning. Smallest lexicographic
/// subset among the largest ones.
inline std::vector<std::int64_t> largest_independent_subset(const CylinderTuple& t,
                                                            const std::vector<std::int64_t>& positions,
                                                            const SearchLimits& limits = {}) {
    if (positions.empty()) return {};
    const auto solver = make_solver(t, positions.back(), limits);
    std::vector<std::int64_t> best;
    std::vector<std::int64_t> cur;
    auto go = [&](auto&& self, std::size_t i) -> void {
        if (cur.size() > best.size()) best = cur;
        if (i == positions.size() || cur.size() + (positions.size() - i) <= best.size()) return;
        cur.push_back(positions[i]);
        if (solver.check_all(as_positions(cur), t.targets()).all_realizable) self(self, i + 1);
        cur.pop_back();
        self(self, i + 1);
    };
    go(go, 0);
    return best;
}

struct FeketeReport {
    std::vector<std::int64_t> a;       ///< a[k-1] = a_k
    std::vector<Rational> ratios;      ///< a_k / k
    Rational upper_bound_i;            ///< min ratio
    SubsetWindow witness;              ///< an independence set realizing a_K
    bool partial = false;              ///< budget ran out before K
    bool subadditive = true;
    bool approximate = false;          ///< language of the subshift is approximate

    std::size_t horizon() const { return a.size(); }
};

inline std::string to_csv(const FeketeReport& r) {
    std::ostringstream out;
    out << "k,a_k,ratio\n";
    for (std::size_t k = 1; k <= r.a.size(); ++k) out << k << "," << r.a[k - 1] << "," << to_string(r.ratios[k - 1]) << "\n";
    return out.str();
}

/// a_k = max |F ∩ [0, k)| over independence sets F, for k = 1..K.
/// Since a_k - a_{k-1} is 0 or 1, each step looks only for a set of size
/// a_{k-1} + 1 that contains k - 1.
inline FeketeReport max_independence_within(const CylinderTuple& t, std::int64_t horizon,
                                            const SearchLimits& limits = {}) {
    detail::require(horizon >= 1, "max_independence_within: horizon must be positive");
    FeketeReport out;
    out.approximate = t.subshift().approximate();
    const auto solver = make_solver(t, horizon - 1, limits);
    std::vector<std::int64_t> witness;
    std::int64_t prev = 0;
    try {
        for (std::int64_t k = 1; k <= horizon; ++k) {
            const auto want = static_cast<std::size_t>(prev + 1);
            std::vector<std::int64_t> cur;
            std::optional<std::vector<std::int64_t>> found;
            // choose want-1 elements of [0, k-1) ascending, always with k-1 appended
            auto go = [&](auto&& self, std::int64_t next) -> void {
                if (found) return;
                if (cur.size() + 1 == want) {
                    auto cand = cur;
                    cand.push_back(k - 1);
                    if (solver.check_all(as_positions(cand), t.targets()).all_realizable) found = std::move(cand);
                    return;
                }
                for (auto v = next; v < k - 1; ++v) {
                    if (static_cast<std::int64_t>(want - 1 - cur.size()) > k - 1 - v) return;
                    cur.push_back(v);
                    auto probe = cur;
                    probe.push_back(k - 1);
                    if (solver.check_all(as_positions(probe), t.targets()).all_realizable) self(self, v + 1);
                    cur.pop_back();
                    if (found) return;
                }
            };
            go(go, 0);
            if (found) {
                prev += 1;
                witness = *found;
            }
            out.a.push_back(prev);
            out.ratios.emplace_back(prev, k);
        }
    } catch (const size_limit&) {
        out.partial = true;
    }
    detail::require(!out.a.empty(), "max_independence_within: budget exhausted at k = 1");
    out.upper_bound_i = *std::min_element(out.ratios.begin(), out.ratios.end());
    out.witness = SubsetWindow(witness, static_cast<std::int64_t>(out.a.size()));
    const auto n = out.a.size();
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; i + j <= n; ++j)
            if (out.a[i + j - 1] > out.a[i - 1] + out.a[j - 1]) out.subadditive = false;
    return out;
}

struct DensityWitness {
    std::optional<SubsetWindow> set;   ///< empty when the search is inconclusive
    Rational target_density;           ///< upper_bound_I - 1/k
};

/// An independence set F in [0, horizon) with |F ∩ [0, j)| >= j (I - 1/k)
/// for every j <= horizon, where I is the supplied density bound. Greedy
/// inclusion with backtracking; the bound is checked on every prefix.
inline DensityWitness density_witness(const CylinderTuple& t, const Rational& upper_bound_i, std::int64_t precision,
                                      std::int64_t horizon, const SearchLimits& limits = {}) {
    detail::require(precision >= 1, "density_witness: precision must be positive");
    detail::require(horizon >= 1, "density_witness: horizon must be positive");
    DensityWitness out;
    out.target_density = upper_bound_i - Rational(1, precision);
    const auto solver = make_solver(t, horizon - 1, limits);
    std::vector<std::int64_t> cur;
    std::uint64_t steps = 0;
    bool done = false;
    auto go = [&](auto&& self, std::int64_t j) -> void {
        if (++steps > limits.node_budget) throw size_limit("density_witness: search budget exceeded");
        if (j == horizon) {
            done = true;
            return;
        }
        for (bool take : {true, false}) {
            if (take) {
                cur.push_back(j);
                if (!solver.check_all(as_positions(cur), t.targets()).all_realizable) {
                    cur.pop_back();
                    continue;
                }
            }
            if (Rational(static_cast<std::int64_t>(cur.size())) >= out.target_density * (j + 1)) self(self, j + 1);
            if (done) return;
            if (take) cur.pop_back();
        }
    };
    try {
        go(go, 0);
    } catch (const size_limit&) {
        return out;
    }
    if (!done) return out;
    SubsetWindow f(cur, horizon);
    detail::ensure(is_independence_set(t, f, limits).independent, "density_witness: result is not independent");
    for (std::int64_t j = 1; j <= horizon; ++j)
        detail::ensure(Rational(f.count_in(0, j)) >= out.target_density * j, "density_witness: prefix bound fails");
    out.set = std::move(f);
    return out;
}

struct IpBuilderReport {
    std::vector<std::int64_t> generators;
    SubsetWindow verified_sums;                 ///< 0 and all finite sums
    std::vector<std::int64_t> candidates_tried; ///< per step
    std::optional<std::size_t> exhausted_at;    ///< 1-based step with no t in [1, H]
    bool complete() const { return !exhausted_at.has_value(); }
};

/// Grows t_1, t_2, ...: t_{k+1} is the least t in [1, H] such that the
/// shifted sums A + t are new and A ∪ (A + t) is still an independence set.
inline IpBuilderReport ip_independence_builder(const CylinderTuple& t, std::size_t depth, std::int64_t step_horizon,
                                               const SearchLimits& limits = {}) {
    const auto& x = t.subshift();
    if (!x.is_graph_presented()) throw precondition_failure("ip builder: needs a mixing full shift or SFT");
    if (!is_mixing_window(x, mixing_threshold(x))) throw precondition_failure("ip builder: the subshift is not mixing");
    detail::require(step_horizon >= 1, "ip builder: step horizon must be positive");
    detail::require(depth <= kMaxIpGenerators, "ip builder: depth too large");

    IpBuilderReport out;
    std::vector<std::int64_t> sums{0};
    for (std::size_t step = 1; step <= depth; ++step) {
        std::optional<std::int64_t> chosen;
        std::int64_t tried = 0;
        for (std::int64_t c = 1; c <= step_horizon && !chosen; ++c) {
            ++tried;
            std::vector<std::int64_t> next = sums;
            bool fresh = true;
            for (auto s : sums) {
                if (std::binary_search(sums.begin(), sums.end(), s + c)) fresh = false;
                next.push_back(s + c);
            }
            if (!fresh) continue;
            std::sort(next.begin(), next.end());
            if (is_independence_set(t, SubsetWindow(next, next.back() + 1), limits).independent) {
                chosen = c;
                sums = std::move(next);
            }
        }
        out.candidates_tried.push_back(tried);
        if (!chosen) {
            out.exhausted_at = step;
            break;
        }
        out.generators.push_back(*chosen);
    }
    out.verified_sums = SubsetWindow(sums, sums.back() + 1);
    detail::ensure(is_independence_set(t, out.verified_sums, limits).independent,
                   "ip builder: final sums are not an independence set");
    return out;
}

struct EntropyRow {
    std::size_t m = 0;
    std::uint64_t patterns = 0;      ///< realizable traces over {none, U_1, ..., U_n}
    std::size_t independent = 0;     ///< m': largest independent subset of the first m times
    double lower = 0;
    double upper = 0;
};

struct EntropyBracket {
    double lower = 0;
    double upper = 0;
    std::vector<EntropyRow> rows;
    bool approximate = false;
};

/// Bracket for the sequence entropy of the cover {U_1^c, ..., U_n^c} along F.
/// upper: max over m of log(#realizable traces on the first m times) / m;
/// lower: max over m of m' log(n / (n - 1)) / m with m' the largest verified
/// independent subset of the first m times.
inline EntropyBracket sequence_entropy_bracket(const std::shared_ptr<const Subshift>& x, const std::vector<Word>& cylinders,
                                               const SubsetWindow& f, std::size_t depth, const SearchLimits& limits = {}) {
    detail::require(!cylinders.empty(), "sequence entropy: no cylinders");
    detail::require(depth >= 1 && depth <= f.size(), "sequence entropy: need 1 <= depth <= |F|");
    for (std::size_t i = 0; i < cylinders.size(); ++i) {
        detail::require(cylinders[i].size() == cylinders[0].size(), "sequence entropy: cylinders must share a length");
        for (std::size_t j = 0; j < i; ++j)
            detail::require(!(cylinders[i] == cylinders[j]), "sequence entropy: cylinders are not disjoint");
    }
    EntropyBracket out;
    out.approximate = x->approximate();
    const auto n = cylinders.size();
    if (n == 1) return out;   // a single cover element: no growth

    const auto tuple = CylinderTuple::of_words(x, cylinders);
    std::vector<Target> traces{Target{cylinders, true}};
    for (const auto& c : cylinders) traces.push_back(Target::of(c));
    const auto solver = make_solver(tuple, f.elements()[depth - 1], limits);
    const double per = std::log(static_cast<double>(n) / static_cast<double>(n - 1));
    for (std::size_t m = 1; m <= depth; ++m) {
        const std::vector<std::int64_t> first(f.elements().begin(), f.elements().begin() + static_cast<std::ptrdiff_t>(m));
        EntropyRow row;
        row.m = m;
        row.patterns = solver.count_realizable(as_positions(first), traces);
        row.independent = largest_independent_subset(tuple, first, limits).size();
        row.upper = std::log(static_cast<double>(row.patterns)) / static_cast<double>(m);
        row.lower = static_cast<double>(row.independent) * per / static_cast<double>(m);
        out.upper = std::max(out.upper, row.upper);
        out.lower = std::max(out.lower, row.lower);
        out.rows.push_back(row);
    }
    detail::ensure(out.lower <= out.upper + 1e-12, "sequence entropy: lower bound exceeds upper bound");
    return out;
}

struct SingleSetResult {
    std::optional<SubsetWindow> witness;
    std::optional<std::int64_t> step;   ///< arithmetic families: the k found
    bool approximate = false;
};

/// A member of the family (at this horizon) on which U can be seen at
/// every time simultaneously. Arithmetic families search k = step, 2 step,
/// ... up to the horizon, testing {offset + j k : 0 <= j < horizon}.
inline SingleSetResult single_set_independence(const std::shared_ptr<const Subshift>& x, const Word& u,
                                               const FamilySpec& family, std::int64_t horizon,
                                               const SearchLimits& limits = {}) {
    detail::require(horizon >= 1, "single_set_independence: horizon must be positive");
    const auto tuple = CylinderTuple::of_words(x, {u});
    SingleSetResult out;
    out.approximate = x->approximate();
    if (const auto* a = std::get_if<FamilySpec::Arithmetic>(&family.kind)) {
        for (std::int64_t k = a->step; k <= horizon; k += a->step) {
            std::vector<std::int64_t> pos;
            for (std::int64_t j = 0; j < horizon; ++j) pos.push_back(a->offset + j * k);
            const SubsetWindow f(pos, pos.back() + 1);
            bool ok = false;
            try {
                ok = is_independence_set(tuple, f, limits).independent;
            } catch (const size_limit&) {
                ok = false;
            }
            if (ok) {
                out.witness = f;
                out.step = k;
                return out;
            }
        }
        return out;
    }
    if (std::holds_alternative<FamilySpec::Ip>(family.kind) || std::holds_alternative<FamilySpec::Explicit>(family.kind)) {
        const auto f = family_member(family, horizon);
        if (is_independence_set(tuple, f, limits).independent) out.witness = f;
        return out;
    }
    throw unsupported_operation("single_set_independence: family kind must be arithmetic, ip or explicit");
}

} // namespace symdyn
