#pragma once

// A recurrent binary point whose orbit closure is topological K with the
// unique minimal point 0, built level by level from a ternary point y with
// marker words z_{m,j}:
//
//   A_1 = 10, n_1 = 2, C_{1,0} = 0000, C_{1,1} = 1000
//   A_{k+1} = A_k 0^{n_k} C_{m,f_m(y[0,t_m])} ... C_{m,f_m(y[b_k-t_m,b_k])} 0^{2n_k},  m = phi(k)
//   C_{k,0} = 0^{2n_k},  C_{k,i} = sigma^{i-1}(A_k) 0^{i-1} 0^{n_k}
//
// Also the Bernoulli step witness: cylinders read on [0, k) make kN an
// independence set of the full shift.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symdyn/constraint_engine.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/independence.hpp"
#include "symdyn/subset_window.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/text.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

/// Longest x prefix the recursion may build.
inline constexpr std::uint64_t kMaxKPrefix = std::uint64_t{1} << 26;

/// Digit words with `word^count` repetition pieces separated by spaces, e.g. "12 0^4000".
inline Word parse_compact_word(std::string_view s, int alphabet) {
    std::vector<Symbol> out;
    std::istringstream in{std::string(s)};
    for (std::string piece; in >> piece;) {
        const auto caret = piece.find('^');
        const auto body = Word::parse(std::string_view(piece).substr(0, caret), alphabet);
        std::size_t count = 1;
        if (caret != std::string::npos) count = text::parse_int<std::size_t>(std::string_view(piece).substr(caret + 1), "repeat count");
        detail::require(body.size() * count <= kMaxKPrefix, "compact word too long");
        for (std::size_t i = 0; i < count; ++i) out.insert(out.end(), body.symbols().begin(), body.symbols().end());
    }
    return Word(std::move(out), alphabet);
}

/// Inverse of parse_compact_word: runs longer than 8 become `s^n`.
inline std::string compact_string(const Word& w) {
    std::string out;
    std::string literal;
    const auto& s = w.symbols();
    auto flush = [&] {
        if (literal.empty()) return;
        if (!out.empty()) out += ' ';
        out += literal;
        literal.clear();
    };
    for (std::size_t i = 0; i < s.size();) {
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i]) ++j;
        if (j - i > 8) {
            flush();
            if (!out.empty()) out += ' ';
            out += std::string(1, symbol_char(s[i])) + "^" + std::to_string(j - i);
        } else {
            for (std::size_t t = i; t < j; ++t) literal += symbol_char(s[t]);
        }
        i = j;
    }
    flush();
    return out;
}

struct KExampleParams {
    /// Prefix of a transitive point of Y over {0, 1, 2}.
    Word y;
    /// z[m] = (z_{m,1}, ..., z_{m,m}), all of length t_m + 1.
    std::map<std::size_t, std::vector<Word>> z;
    /// phi[k-1] = phi(k).
    std::vector<std::size_t> phi;
    std::size_t depth = 1;

    std::size_t t(std::size_t m) const { return z.at(m).front().size() - 1; }

    /// f_m(a) = j when a = z_{m,j}[0, t_m], else 0.
    std::size_t marker(std::size_t m, const Symbol* a) const {
        const auto& zs = z.at(m);
        for (std::size_t j = 0; j < zs.size(); ++j)
            if (std::equal(zs[j].symbols().begin(), zs[j].symbols().end(), a)) return j + 1;
        return 0;
    }

    void validate() const {
        detail::require(depth >= 1, "K params: K must be >= 1");
        detail::require(y.alphabet() == 3, "K params: y must be over {0, 1, 2}");
        detail::require(phi.size() + 1 >= depth, "K params: phi needs K - 1 = " + std::to_string(depth - 1) + " values");
        for (std::size_t k = 1; k < depth; ++k) {
            const auto m = phi[k - 1];
            detail::require(m >= 1 && m <= k, "K params: phi(" + std::to_string(k) + ") = " + std::to_string(m) +
                                                  " must be in [1, k]");
            detail::require(z.count(m), "K params: no marker words z[" + std::to_string(m) + ",*]");
        }
        for (const auto& [m, zs] : z) {
            detail::require(zs.size() == m, "K params: need exactly z[" + std::to_string(m) + ",1.." +
                                                std::to_string(m) + "]");
            for (const auto& w : zs) {
                detail::require(w.size() == zs.front().size() && !w.empty(),
                                "K params: z[" + std::to_string(m) + ",*] must share one length t_m + 1");
                detail::require(w.alphabet() == 3 && (w[0] == 1 || w[0] == 2),
                                "K params: z[" + std::to_string(m) + ",*] must start with 1 or 2");
            }
            auto sorted = zs;
            std::sort(sorted.begin(), sorted.end());
            detail::require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                            "K params: z[" + std::to_string(m) + ",*] must be pairwise distinct");
        }
    }
};

inline std::string to_string(const KExampleParams& p) {
    std::ostringstream out;
    out << "y=" << compact_string(p.y) << '\n';
    for (const auto& [m, zs] : p.z)
        for (std::size_t j = 0; j < zs.size(); ++j) out << "z[" << m << ',' << j + 1 << "]=" << to_string(zs[j]) << '\n';
    out << "phi=" << text::join(p.phi, ",") << '\n';
    out << "K=" << p.depth << '\n';
    return out.str();
}

/// Lines `y=`, `z[m,j]=`, `phi=`, `K=`; '#' starts a comment line.
inline KExampleParams parse_kexample_params(std::string_view content) {
    KExampleParams p;
    std::istringstream in{std::string(content)};
    std::size_t line_no = 0;
    std::map<std::pair<std::size_t, std::size_t>, Word> zs;
    bool has_y = false, has_k = false, has_phi = false;
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        const auto line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw parse_error(line_no, "expected key=value");
        const auto key = text::trim(line.substr(0, eq));
        const auto value = text::trim(line.substr(eq + 1));
        try {
            if (key == "y") {
                if (has_y) throw parse_error(line_no, "duplicate key 'y'");
                p.y = parse_compact_word(value, 3);
                has_y = true;
            } else if (key == "phi") {
                if (has_phi) throw parse_error(line_no, "duplicate key 'phi'");
                p.phi = text::parse_int_list<std::size_t>(value);
                has_phi = true;
            } else if (key == "K") {
                if (has_k) throw parse_error(line_no, "duplicate key 'K'");
                p.depth = text::parse_int<std::size_t>(value, "K");
                has_k = true;
            } else if (key.starts_with("z[") && key.ends_with("]")) {
                const auto idx = text::parse_int_list<std::size_t>(key.substr(2, key.size() - 3));
                if (idx.size() != 2 || idx[1] < 1 || idx[1] > idx[0])
                    throw parse_error(line_no, "marker key must be z[m,j] with 1 <= j <= m");
                if (!zs.emplace(std::make_pair(idx[0], idx[1]), parse_compact_word(value, 3)).second)
                    throw parse_error(line_no, "duplicate key '" + std::string(key) + "'");
            } else {
                throw parse_error(line_no, "unknown key '" + std::string(key) + "'");
            }
        } catch (const parse_error&) {
            throw;
        } catch (const invalid_argument& e) {
            throw parse_error(line_no, e.what());
        }
    }
    if (!has_y) throw parse_error(line_no + 1, "missing 'y='");
    if (!has_k) throw parse_error(line_no + 1, "missing 'K='");
    for (const auto& [mj, w] : zs) p.z[mj.first].push_back(w);
    try {
        p.validate();
    } catch (const invalid_argument& e) {
        throw parse_error(line_no + 1, e.what());
    }
    return p;
}

struct KLevel {
    std::size_t k = 0;
    Word a;
    std::size_t n = 0;
    /// C_{k,0}, ..., C_{k,k}.
    std::vector<Word> c;
    /// Set when A_{k+1} was built from this level.
    std::optional<std::size_t> m;
    std::size_t ell = 0;
    std::size_t b = 0;
    /// f_m values of the inserted blocks, in order.
    std::vector<std::size_t> markers;
};

struct KBlocks {
    std::vector<KLevel> levels;

    const KLevel& level(std::size_t k) const { return levels.at(k - 1); }
};

struct KExampleRun {
    Word x_prefix;
    KBlocks blocks;
};

namespace detail {

/// Largest gap between consecutive starts of 0^n in w, counting the first
/// start itself; the gap after the last start is truncated and ignored.
/// Returns nullopt when 0^n does not occur.
struct ZeroGaps {
    std::size_t occurrences = 0;
    std::size_t max_gap = 0;
    std::size_t max_gap_at = 0;
};

inline std::optional<ZeroGaps> zero_run_gaps(const Word& w, std::size_t n) {
    ZeroGaps g;
    std::optional<std::size_t> last;
    const auto& s = w.symbols();
    for (std::size_t i = 0; i < s.size();) {
        if (s[i] != 0) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] == 0) ++j;
        if (j - i >= n) {
            const std::size_t gap = last ? i - *last : i;
            if (gap > g.max_gap) {
                g.max_gap = gap;
                g.max_gap_at = i;
            }
            if (j - n > i) g.max_gap = std::max<std::size_t>(g.max_gap, 1); // starts inside one run
            g.occurrences += j - n - i + 1;
            last = j - n;
        }
        i = j;
    }
    if (g.occurrences == 0) return std::nullopt;
    return g;
}

inline std::vector<Word> c_blocks(const Word& a, std::size_t k) {
    const std::size_t n = a.size();
    std::vector<Word> c;
    c.push_back(Word::repeat(0, 2 * n, 2));
    for (std::size_t i = 1; i <= k; ++i)
        c.push_back(a.shifted(i - 1) + Word::repeat(0, i - 1, 2) + Word::repeat(0, n, 2));
    return c;
}

} // namespace detail

/// Runs the recursion up to A_K. l_k is read off y's prefix and is only a
/// lower bound for the value the infinite y would give.
inline KExampleRun proximal_k_point(const KExampleParams& params) {
    params.validate();
    KExampleRun run;
    KLevel first;
    first.k = 1;
    first.a = Word::parse("10", 2);
    first.n = 2;
    first.c = detail::c_blocks(first.a, 1);
    run.blocks.levels.push_back(std::move(first));

    for (std::size_t k = 1; k < params.depth; ++k) {
        KLevel& cur = run.blocks.levels.back();
        const std::size_t m = params.phi[k - 1];
        const std::size_t t = params.t(m);
        const auto gaps = detail::zero_run_gaps(params.y, cur.n);
        if (!gaps)
            throw precondition_failure("K example: 0^" + std::to_string(cur.n) + " does not occur in y's prefix (level " +
                                       std::to_string(k) + ")");
        cur.m = m;
        cur.ell = std::max(t, gaps->max_gap);
        cur.b = 2 * cur.ell * cur.n;
        if (cur.b + 1 > params.y.size())
            throw invalid_argument("K example: y's prefix too short at level " + std::to_string(k) + ": need y[" +
                                   std::to_string(cur.b) + "], have length " + std::to_string(params.y.size()));
        const KLevel& src = run.blocks.level(m);
        const std::uint64_t blocks = cur.b - t + 1;
        const std::uint64_t len = cur.a.size() + cur.n + blocks * 2 * src.n + 2 * cur.n;
        if (len > kMaxKPrefix)
            throw size_limit("K example: |A_" + std::to_string(k + 1) + "| = " + std::to_string(len) + " exceeds " +
                             std::to_string(kMaxKPrefix));

        std::vector<Symbol> next(cur.a.symbols());
        next.reserve(len);
        next.insert(next.end(), cur.n, 0);
        const Symbol* ys = params.y.symbols().data();
        for (std::uint64_t i = 0; i < blocks; ++i) {
            const auto f = params.marker(m, ys + i);
            cur.markers.push_back(f);
            const auto& blk = src.c[f].symbols();
            next.insert(next.end(), blk.begin(), blk.end());
        }
        next.insert(next.end(), 2 * cur.n, 0);
        detail::ensure(next.size() == len, "K example: length accounting failed at level " + std::to_string(k));

        KLevel nl;
        nl.k = k + 1;
        nl.a = Word(std::move(next), 2);
        nl.n = nl.a.size();
        nl.c = detail::c_blocks(nl.a, k + 1);
        run.blocks.levels.push_back(std::move(nl));
    }
    run.x_prefix = run.blocks.levels.back().a;
    return run;
}

struct KCheck {
    bool ok = true;
    std::string failure;
};

/// Re-checks a run against y: level-1 literals, the length identity, each
/// inserted block against a fresh read of f_m, and C_{k,i} shapes.
inline KCheck verify_k_blocks(const KExampleParams& params, const KBlocks& blocks) {
    auto fail = [](std::string why) { return KCheck{false, std::move(why)}; };
    if (blocks.levels.empty()) return fail("no levels");
    const auto& l1 = blocks.level(1);
    if (to_string(l1.a) != "10" || l1.n != 2 || l1.c.size() != 2 || to_string(l1.c[0]) != "0000" ||
        to_string(l1.c[1]) != "1000")
        return fail("level 1 literals");
    for (const auto& lv : blocks.levels) {
        if (lv.c.size() != lv.k + 1) return fail("C count at level " + std::to_string(lv.k));
        for (std::size_t i = 0; i <= lv.k; ++i) {
            const auto want = i == 0 ? Word::repeat(0, 2 * lv.n, 2)
                                     : lv.a.shifted(i - 1) + Word::repeat(0, i - 1 + lv.n, 2);
            if (!(lv.c[i] == want)) return fail("C_{" + std::to_string(lv.k) + "," + std::to_string(i) + "}");
        }
    }
    for (std::size_t k = 1; k < blocks.levels.size(); ++k) {
        const auto& cur = blocks.level(k);
        const auto& nxt = blocks.level(k + 1);
        if (!cur.m) return fail("level " + std::to_string(k) + " has no schedule entry");
        const auto m = *cur.m;
        const auto t = params.t(m);
        const auto& src = blocks.level(m);
        const std::size_t count = cur.b - t + 1;
        const std::size_t expect = cur.a.size() + cur.n + count * 2 * src.n + 2 * cur.n;
        if (nxt.a.size() != expect) return fail("length identity at level " + std::to_string(k));
        if (!(nxt.a.sub(0, cur.a.size()) == cur.a)) return fail("A_" + std::to_string(k) + " is not a prefix");
        std::size_t pos = cur.a.size();
        if (!(nxt.a.sub(pos, cur.n) == Word::repeat(0, cur.n, 2))) return fail("0^{n_k} after A_k");
        pos += cur.n;
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t f = 0;
            for (std::size_t j = 1; j <= m && f == 0; ++j)
                if (params.y.sub(i, t + 1) == params.z.at(m)[j - 1]) f = j;
            if (i >= cur.markers.size() || cur.markers[i] != f)
                return fail("marker " + std::to_string(i) + " at level " + std::to_string(k));
            if (!(nxt.a.sub(pos, 2 * src.n) == src.c[f]))
                return fail("block " + std::to_string(i) + " at level " + std::to_string(k));
            pos += 2 * src.n;
        }
        if (!(nxt.a.sub(pos, 2 * cur.n) == Word::repeat(0, 2 * cur.n, 2))) return fail("trailing 0^{2n_k}");
    }
    return {};
}

struct ZeroGapRow {
    std::size_t k = 0;
    std::size_t n = 0;
    std::size_t bound = 0;
    std::size_t max_gap = 0;
    std::size_t occurrences = 0;
    bool pass = false;
    /// Start of the occurrence ending the largest gap, when the bound fails.
    std::optional<std::size_t> offending_at;
};

struct ZeroGapReport {
    std::vector<ZeroGapRow> rows;

    bool pass() const {
        return std::all_of(rows.begin(), rows.end(), [](const ZeroGapRow& r) { return r.pass; });
    }

    /// Header `k,n_k,bound,max_gap,occurrences,pass`.
    std::string to_csv() const {
        std::ostringstream out;
        out << "k,n_k,bound,max_gap,occurrences,pass\n";
        for (const auto& r : rows)
            out << r.k << ',' << r.n << ',' << r.bound << ',' << r.max_gap << ',' << r.occurrences << ','
                << (r.pass ? 1 : 0) << '\n';
        return out.str();
    }
};

/// For every level with b_k: gaps of 0^{n_k} in x_prefix against 2 b_k.
inline ZeroGapReport verify_syndetic_zeros(const Word& x_prefix, const KBlocks& blocks) {
    ZeroGapReport rep;
    for (const auto& lv : blocks.levels) {
        if (!lv.m) continue;
        ZeroGapRow row;
        row.k = lv.k;
        row.n = lv.n;
        row.bound = 2 * lv.b;
        if (const auto g = detail::zero_run_gaps(x_prefix, lv.n)) {
            row.max_gap = g->max_gap;
            row.occurrences = g->occurrences;
            row.pass = g->max_gap <= row.bound;
            if (!row.pass) row.offending_at = g->max_gap_at;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

struct IeWindowResult {
    bool found = false;
    std::size_t level = 0;
    SubsetWindow witness;
    bool partial = false;
    bool approximate = true;
};

/// Searches an independence set of size >= s within [0, horizon) for
/// ([A_m], [sigma(A_m)0], ..., [sigma^{j-1}(A_m)0^{j-1}]) in the orbit
/// closure of x_prefix. Level 0 picks m = j + 1.
inline IeWindowResult verify_ie_window(const Word& x_prefix, const KBlocks& blocks, std::size_t j, std::size_t s,
                                       std::int64_t horizon, std::size_t level = 0, const SearchLimits& limits = {}) {
    IeWindowResult out;
    if (s == 0) {
        out.found = true;
        return out;
    }
    detail::require(j >= 1, "verify_ie_window: j must be >= 1");
    const std::size_t m = level == 0 ? j + 1 : level;
    if (m <= j) throw precondition_failure("verify_ie_window: level m must exceed j");
    if (m > blocks.levels.size())
        throw precondition_failure("verify_ie_window: level " + std::to_string(m) + " not built (K = " +
                                   std::to_string(blocks.levels.size()) + ")");
    out.level = m;
    const auto& a = blocks.level(m).a;
    auto x = std::make_shared<const Subshift>(SubshiftSpec::orbit_closure(x_prefix));
    std::vector<Word> words;
    for (std::size_t i = 0; i < j; ++i) words.push_back(a.shifted(i) + Word::repeat(0, i, 2));
    const auto tuple = CylinderTuple::of_words(x, words);
    const auto rep = max_independence_within(tuple, horizon, limits);
    out.partial = rep.partial;
    out.approximate = rep.approximate;
    out.witness = rep.witness;
    out.found = rep.witness.size() >= s;
    return out;
}

struct BernoulliWitness {
    std::size_t step = 0;
    SubsetWindow checked;
    bool verified = false;
};

/// k = longest base; checks {k, 2k, ..., Mk} with the engine.
inline BernoulliWitness bernoulli_rs_witness(const CylinderTuple& t, std::size_t multiples = 4,
                                             const SearchLimits& limits = {}) {
    if (t.subshift().kind() != SubshiftKind::full)
        throw precondition_failure("bernoulli_rs_witness: needs a full shift");
    BernoulliWitness out;
    out.step = t.max_base_length();
    std::vector<std::int64_t> e;
    for (std::size_t i = 1; i <= multiples; ++i) e.push_back(static_cast<std::int64_t>(i * out.step));
    out.checked = SubsetWindow(e, e.empty() ? 0 : e.back() + 1);
    out.verified = is_independence_set(t, out.checked, limits).independent;
    return out;
}

} // namespace symdyn
