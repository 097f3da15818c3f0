#pragma once

// Sequences avoiding one forbidden window set per position: find x over
// {0..p-1} with x[n, n+m-1] not in A_n for every n, where |A_n| <= l.
// Windows of length m are stored by their base-p value, so word sets are
// bitsets of size p^m and prefix classes are contiguous code ranges.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "symdyn/errors.hpp"
#include "symdyn/text.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

using WordSet = boost::dynamic_bitset<>;

/// Upper bound on p^m for any table indexed by windows.
inline constexpr std::uint64_t kMaxWindowTable = std::uint64_t{1} << 22;
/// Upper bound on N * p^m for stored bookkeeping.
inline constexpr std::uint64_t kMaxBookkeepingBits = std::uint64_t{1} << 28;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace detail {

/// p^e, or nullopt past `cap`.
inline std::optional<std::uint64_t> bounded_pow(std::uint64_t p, std::size_t e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > cap / p) return std::nullopt;
        r *= p;
    }
    return r;
}

} // namespace detail

class AvoidanceInstance {
public:
    /// A_n given for n < N; positions not listed are empty.
    static AvoidanceInstance explicit_sets(int p, std::size_t m, std::size_t l, std::size_t n_count,
                                           const std::map<std::size_t, std::vector<Word>>& sets) {
        AvoidanceInstance inst(p, m, l, n_count);
        for (const auto& [n, words] : sets) {
            detail::require(n < n_count, "avoidance instance: position " + std::to_string(n) + " >= N");
            std::vector<std::uint64_t> codes;
            for (const auto& w : words) {
                detail::require(w.size() == m, "avoidance instance: forbidden word '" + to_string(w) +
                                                   "' does not have length " + std::to_string(m));
                detail::require(w.alphabet() == p, "avoidance instance: forbidden word over the wrong alphabet");
                codes.push_back(w.code());
            }
            std::sort(codes.begin(), codes.end());
            codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
            detail::require(codes.size() <= l, "avoidance instance: |A_" + std::to_string(n) + "| = " +
                                                   std::to_string(codes.size()) + " exceeds l = " + std::to_string(l));
            if (!codes.empty()) inst.sets_[n] = std::move(codes);
        }
        return inst;
    }

    /// A_n holds up to l pseudo-random windows drawn from (seed, n); defined for every n.
    static AvoidanceInstance seeded(int p, std::size_t m, std::size_t l, std::uint64_t seed, std::size_t n_count) {
        AvoidanceInstance inst(p, m, l, n_count);
        inst.seed_ = seed;
        return inst;
    }

    int alphabet() const noexcept { return p_; }
    std::size_t window() const noexcept { return m_; }
    std::size_t bound() const noexcept { return l_; }
    std::size_t horizon() const noexcept { return n_count_; }
    std::optional<std::uint64_t> seed() const noexcept { return seed_; }
    std::uint64_t word_count() const noexcept { return word_count_; }

    /// True when m >= 4l + 2, where a solution always exists.
    bool guaranteed() const noexcept { return m_ >= 4 * l_ + 2; }

    bool provides(std::size_t n) const noexcept { return seed_.has_value() || n < n_count_; }

    /// Sorted codes of A_n.
    std::vector<std::uint64_t> forbidden_codes(std::size_t n) const {
        if (seed_) {
            std::vector<std::uint64_t> codes;
            const std::uint64_t base = splitmix64(splitmix64(*seed_) ^ static_cast<std::uint64_t>(n));
            for (std::size_t j = 0; j < l_; ++j)
                codes.push_back(splitmix64(base ^ (static_cast<std::uint64_t>(j) << 48) ^ 0x5bd1e995ULL) %
                                word_count_);
            std::sort(codes.begin(), codes.end());
            codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
            return codes;
        }
        auto it = sets_.find(n);
        return it == sets_.end() ? std::vector<std::uint64_t>{} : it->second;
    }

    std::vector<Word> forbidden(std::size_t n) const {
        std::vector<Word> out;
        for (auto c : forbidden_codes(n)) out.push_back(Word::from_code(c, m_, p_));
        return out;
    }

private:
    AvoidanceInstance(int p, std::size_t m, std::size_t l, std::size_t n_count)
        : p_(p), m_(m), l_(l), n_count_(n_count) {
        detail::require(p >= 2 && p <= kMaxAlphabet, "avoidance instance: p must be in [2, 36]");
        detail::require(m >= 1, "avoidance instance: m must be >= 1");
        const auto wc = detail::bounded_pow(static_cast<std::uint64_t>(p), m, std::uint64_t{1} << 62);
        if (!wc) throw size_limit("avoidance instance: p^m does not fit in 62 bits");
        word_count_ = *wc;
    }

    int p_;
    std::size_t m_;
    std::size_t l_;
    std::size_t n_count_;
    std::uint64_t word_count_ = 0;
    std::optional<std::uint64_t> seed_;
    std::map<std::size_t, std::vector<std::uint64_t>> sets_;
};

inline std::string to_string(const AvoidanceInstance& inst) {
    std::ostringstream out;
    out << inst.alphabet() << ' ' << inst.window() << ' ' << inst.bound() << ' ' << inst.horizon() << '\n';
    if (inst.seed()) {
        out << "seed=" << *inst.seed() << '\n';
        return out.str();
    }
    for (std::size_t n = 0; n < inst.horizon(); ++n) {
        const auto words = inst.forbidden(n);
        if (words.empty()) continue;
        out << n << ':';
        for (std::size_t i = 0; i < words.size(); ++i) out << (i ? "," : " ") << to_string(words[i]);
        out << '\n';
    }
    return out.str();
}

/// Header `p m l N`, then `n: w1,w2,...` lines or a single `seed=<u64>`.
/// Blank lines and lines starting with '#' are ignored.
inline AvoidanceInstance parse_avoidance_instance(std::string_view content) {
    std::istringstream in{std::string(content)};
    std::string raw;
    std::size_t line_no = 0;
    std::optional<std::vector<std::size_t>> header;
    std::optional<std::uint64_t> seed;
    std::map<std::size_t, std::vector<Word>> lines;
    int p = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        try {
            if (!header) {
                std::vector<std::size_t> h;
                std::istringstream hs{std::string(line)};
                std::string tok;
                while (hs >> tok) h.push_back(text::parse_int<std::size_t>(tok, "header field"));
                if (h.size() != 4) throw parse_error(line_no, "header must be 'p m l N'");
                if (h[0] < 2 || h[0] > kMaxAlphabet) throw parse_error(line_no, "p must be in [2, 36]");
                header = h;
                p = static_cast<int>(h[0]);
                continue;
            }
            if (line.starts_with("seed=")) {
                if (seed || !lines.empty()) throw parse_error(line_no, "seed= cannot be combined with other entries");
                seed = text::parse_int<std::uint64_t>(line.substr(5), "seed");
                continue;
            }
            if (seed) throw parse_error(line_no, "seed= cannot be combined with other entries");
            const auto colon = line.find(':');
            if (colon == std::string_view::npos) throw parse_error(line_no, "expected 'n: w1,w2,...'");
            const auto n = text::parse_int<std::size_t>(line.substr(0, colon), "position");
            if (n >= (*header)[3]) throw parse_error(line_no, "position " + std::to_string(n) + " >= N");
            if (lines.count(n)) throw parse_error(line_no, "duplicate position " + std::to_string(n));
            auto& words = lines[n];
            const auto rest = text::trim(line.substr(colon + 1));
            if (!rest.empty())
                for (auto w : text::split(rest, ',')) {
                    auto word = Word::parse(text::trim(w), p);
                    if (word.size() != (*header)[1])
                        throw parse_error(line_no, "forbidden word '" + to_string(word) + "' does not have length " +
                                                       std::to_string((*header)[1]));
                    words.push_back(std::move(word));
                }
            std::sort(words.begin(), words.end());
            words.erase(std::unique(words.begin(), words.end()), words.end());
            if (words.size() > (*header)[2])
                throw parse_error(line_no, "|A_" + std::to_string(n) + "| exceeds l = " + std::to_string((*header)[2]));
        } catch (const parse_error&) {
            throw;
        } catch (const invalid_argument& e) {
            throw parse_error(line_no, e.what());
        }
    }
    if (!header) throw parse_error(line_no + 1, "missing header 'p m l N'");
    const auto& h = *header;
    try {
        if (seed) return AvoidanceInstance::seeded(p, h[1], h[2], *seed, h[3]);
        return AvoidanceInstance::explicit_sets(p, h[1], h[2], h[3], lines);
    } catch (const size_limit&) {
        throw;
    } catch (const invalid_argument& e) {
        throw parse_error(line_no, e.what());
    }
}

/// Index arithmetic on windows of length m over p symbols.
class WindowSpace {
public:
    WindowSpace(int p, std::size_t m) : p_(static_cast<std::uint64_t>(p)), m_(m) {
        const auto size = detail::bounded_pow(p_, m, kMaxWindowTable);
        if (!size)
            throw size_limit("window table: p^m exceeds " + std::to_string(kMaxWindowTable) + " (p = " +
                             std::to_string(p) + ", m = " + std::to_string(m) + ")");
        size_ = *size;
        high_ = size_ / p_;
    }

    std::uint64_t size() const noexcept { return size_; }
    /// p^{m-1}, the number of length m-1 words.
    std::uint64_t high() const noexcept { return high_; }
    std::uint64_t alphabet() const noexcept { return p_; }
    std::size_t length() const noexcept { return m_; }

    WordSet empty_set() const { return WordSet(size_); }
    WordSet full_set() const { return ~WordSet(size_); }

    WordSet with(const std::vector<std::uint64_t>& codes) const {
        WordSet s(size_);
        for (auto c : codes) s.set(c);
        return s;
    }

    /// {w[1..] a : w in S, a in alphabet}.
    WordSet right_extensions(const WordSet& s) const {
        WordSet out(size_);
        for (auto w = s.find_first(); w != WordSet::npos; w = s.find_next(w)) {
            const std::uint64_t base = (w % high_) * p_;
            for (std::uint64_t a = 0; a < p_; ++a) out.set(base + a);
        }
        return out;
    }

private:
    std::uint64_t p_;
    std::size_t m_;
    std::uint64_t size_ = 1;
    std::uint64_t high_ = 1;
};

/// R_n: windows at position n reachable by a configuration valid on [0, n+m-1].
struct ViabilityTable {
    std::vector<WordSet> reachable;

    static ViabilityTable build(const AvoidanceInstance& inst, std::size_t positions) {
        const WindowSpace ws(inst.alphabet(), inst.window());
        ViabilityTable t;
        t.reachable.reserve(positions);
        for (std::size_t n = 0; n < positions; ++n) {
            WordSet r = n == 0 ? ws.full_set() : ws.right_extensions(t.reachable.back());
            for (auto c : inst.forbidden_codes(n)) r.reset(c);
            t.reachable.push_back(std::move(r));
        }
        return t;
    }

    /// First n with R_n empty.
    std::optional<std::size_t> first_empty() const {
        for (std::size_t n = 0; n < reachable.size(); ++n)
            if (reachable[n].none()) return n;
        return std::nullopt;
    }
};

/// First n <= |x| - m with x[n, n+m-1] in A_n.
inline std::optional<std::size_t> find_violation(const AvoidanceInstance& inst, const Word& x) {
    const std::size_t m = inst.window();
    if (x.size() < m) return std::nullopt;
    for (std::size_t n = 0; n + m <= x.size(); ++n) {
        const auto codes = inst.forbidden_codes(n);
        if (std::binary_search(codes.begin(), codes.end(), x.sub(n, m).code())) return n;
    }
    return std::nullopt;
}

struct AvoidanceResult {
    std::optional<Word> x;
    /// Position of the dead end when x is absent.
    std::size_t failed_at = 0;
    /// The viability table itself emptied (no valid prefix exists at all).
    bool table_dead_end = false;

    bool solved() const noexcept { return x.has_value(); }

    std::string verdict() const {
        if (x) return "ok length=" + std::to_string(x->size()) + " verified";
        return std::string("exhausted at position ") + std::to_string(failed_at) +
               (table_dead_end ? " (no valid prefix)" : " (lookahead dead end)");
    }
};

/// Lexicographically least choice per position among windows that stay
/// extendable for `lookahead` further positions (0 means 2m).
inline AvoidanceResult solve_prefix(const AvoidanceInstance& inst, std::size_t length, std::size_t lookahead = 0) {
    const std::size_t m = inst.window();
    const int p = inst.alphabet();
    if (lookahead == 0) lookahead = 2 * m;
    if (length < m) return {Word::repeat(0, length, p)};
    const std::size_t positions = length - m + 1;
    detail::require(inst.provides(positions - 1), "solve_prefix: instance provides A_n only for n < " +
                                                      std::to_string(inst.horizon()) + ", need n <= " +
                                                      std::to_string(positions - 1));
    const WindowSpace ws(p, m);

    const auto table = ViabilityTable::build(inst, positions);
    if (const auto dead = table.first_empty()) {
        detail::ensure(!inst.guaranteed(), "solve_prefix: viability table empty at n = " + std::to_string(*dead) +
                                               " although m >= 4l + 2");
        AvoidanceResult r;
        r.failed_at = *dead;
        r.table_dead_end = true;
        return r;
    }

    std::vector<std::vector<std::uint64_t>> forbidden(positions);
    for (std::size_t n = 0; n < positions; ++n) forbidden[n] = inst.forbidden_codes(n);

    auto extendable = [&](std::uint64_t c, std::size_t n) {
        const std::size_t steps = std::min(lookahead, positions - 1 - n);
        WordSet s = ws.empty_set();
        s.set(c);
        for (std::size_t j = 1; j <= steps; ++j) {
            s = ws.right_extensions(s);
            for (auto f : forbidden[n + j]) s.reset(f);
            if (s.none()) return false;
        }
        return true;
    };

    std::vector<Symbol> x;
    x.reserve(length);
    std::uint64_t prev = 0;
    for (std::size_t n = 0; n < positions; ++n) {
        std::optional<std::uint64_t> chosen;
        if (n == 0) {
            const auto& r0 = table.reachable[0];
            for (auto c = r0.find_first(); c != WordSet::npos && !chosen; c = r0.find_next(c))
                if (extendable(c, 0)) chosen = c;
        } else {
            const std::uint64_t base = (prev % ws.high()) * ws.alphabet();
            for (std::uint64_t a = 0; a < ws.alphabet() && !chosen; ++a) {
                const std::uint64_t c = base + a;
                if (std::binary_search(forbidden[n].begin(), forbidden[n].end(), c)) continue;
                if (extendable(c, n)) chosen = c;
            }
        }
        if (!chosen) {
            AvoidanceResult r;
            r.failed_at = n;
            return r;
        }
        if (n == 0) {
            const auto w = Word::from_code(*chosen, m, p);
            x = w.symbols();
        } else {
            x.push_back(static_cast<Symbol>(*chosen % ws.alphabet()));
        }
        prev = *chosen;
    }

    Word out(std::move(x), p);
    const auto bad = find_violation(inst, out);
    detail::ensure(!bad, "solve_prefix: sliding scan rejects the output at n = " + std::to_string(bad.value_or(0)));
    return {std::move(out)};
}

/// B_n, C_n and the prefix decomposition D_n of C_n, for n < N.
struct Bookkeeping {
    int p = 2;
    std::size_t m = 1;
    /// B_n: windows at n with no valid past; subsets of the p^m words.
    std::vector<WordSet> blocked;
    /// C_n = {c of length m-1 : a c in B_n for every symbol a}.
    std::vector<WordSet> closed;
    /// D_n split by length: decomposition[n][k] holds the codes of the y in D_{n,k}.
    std::vector<std::vector<std::vector<std::uint64_t>>> decomposition;

    std::size_t positions() const noexcept { return blocked.size(); }

    std::size_t d_size(std::size_t n, std::size_t k) const { return decomposition[n][k].size(); }
};

namespace detail {

inline WordSet closed_part(const WindowSpace& ws, const WordSet& b) {
    WordSet c(ws.high());
    for (std::uint64_t tail = 0; tail < ws.high(); ++tail) {
        bool all = true;
        for (std::uint64_t a = 0; a < ws.alphabet() && all; ++a) all = b.test(a * ws.high() + tail);
        if (all) c.set(tail);
    }
    return c;
}

/// Maximal full prefix classes of C: y with y Lambda^{m-1-|y|} inside C whose parent class is not.
inline std::vector<std::vector<std::uint64_t>> prefix_decomposition(const WindowSpace& ws, const WordSet& c) {
    const std::size_t len = ws.length() - 1;
    const std::uint64_t p = ws.alphabet();
    // counts[k][y] = |C cap y Lambda^{len-k}|
    std::vector<std::vector<std::uint64_t>> counts(len + 1);
    counts[len].resize(ws.high());
    for (std::uint64_t y = 0; y < ws.high(); ++y) counts[len][y] = c.test(y) ? 1 : 0;
    for (std::size_t k = len; k-- > 0;) {
        counts[k].assign(counts[k + 1].size() / p, 0);
        for (std::uint64_t y = 0; y < counts[k + 1].size(); ++y) counts[k][y / p] += counts[k + 1][y];
    }
    std::vector<std::vector<std::uint64_t>> d(len + 1);
    std::uint64_t cls = ws.high();
    std::vector<bool> parent_full;
    for (std::size_t k = 0; k <= len; ++k) {
        std::vector<bool> full(counts[k].size());
        for (std::uint64_t y = 0; y < counts[k].size(); ++y) {
            full[y] = counts[k][y] == cls;
            if (full[y] && (k == 0 || !parent_full[y / p])) d[k].push_back(y);
        }
        parent_full = std::move(full);
        cls /= p;
    }
    return d;
}

} // namespace detail

inline Bookkeeping bookkeeping(const AvoidanceInstance& inst, std::size_t n_count) {
    const WindowSpace ws(inst.alphabet(), inst.window());
    if (n_count > 0 && ws.size() > kMaxBookkeepingBits / n_count)
        throw size_limit("bookkeeping: N * p^m exceeds " + std::to_string(kMaxBookkeepingBits));
    detail::require(n_count == 0 || inst.provides(n_count - 1), "bookkeeping: instance provides A_n only for n < " +
                                                                    std::to_string(inst.horizon()));
    Bookkeeping bk;
    bk.p = inst.alphabet();
    bk.m = inst.window();
    for (std::size_t n = 0; n < n_count; ++n) {
        WordSet b = ws.with(inst.forbidden_codes(n));
        if (n > 0) {
#ifdef SYMDYN_INJECT_CN_FAULT
            const WordSet& prev = bk.closed[n >= 2 ? n - 2 : 0];
#else
            const WordSet& prev = bk.closed[n - 1];
#endif
            for (auto c = prev.find_first(); c != WordSet::npos; c = prev.find_next(c))
                for (std::uint64_t a = 0; a < ws.alphabet(); ++a) b.set(c * ws.alphabet() + a);
        }
        bk.closed.push_back(detail::closed_part(ws, b));
        bk.decomposition.push_back(detail::prefix_decomposition(ws, bk.closed.back()));
        bk.blocked.push_back(std::move(b));
    }
    return bk;
}

struct BoundsRow {
    std::size_t n = 0;
    std::size_t b = 0;
    std::size_t c = 0;
    /// |D_{n,k}| for k = 0..m-1.
    std::vector<std::size_t> d;
};

struct BoundsReport {
    std::vector<BoundsRow> rows;
    std::size_t checks = 0;

    /// Header `n,B,C,D0..D{m-1}`.
    std::string to_csv() const {
        std::ostringstream out;
        out << "n,B,C";
        const std::size_t m = rows.empty() ? 0 : rows.front().d.size();
        for (std::size_t k = 0; k < m; ++k) out << ",D" << k;
        out << '\n';
        for (const auto& r : rows) {
            out << r.n << ',' << r.b << ',' << r.c;
            for (auto v : r.d) out << ',' << v;
            out << '\n';
        }
        return out.str();
    }
};

/// Re-derives every bookkeeping set and checks the counting bounds. Throws
/// invariant_failure naming (n, bound) on the first violation.
inline BoundsReport verify_bounds(const Bookkeeping& bk, const AvoidanceInstance& inst) {
    detail::require(bk.p == inst.alphabet() && bk.m == inst.window(), "verify_bounds: bookkeeping/instance mismatch");
    const WindowSpace ws(bk.p, bk.m);
    const std::size_t N = bk.positions();
    const std::size_t m = bk.m;
    const std::uint64_t p = ws.alphabet();
    const std::uint64_t l = inst.bound();
    const auto table = ViabilityTable::build(inst, N);
    BoundsReport report;

    auto check = [&](bool ok, std::size_t n, const std::string& bound) {
        ++report.checks;
        if (!ok) throw invariant_failure("verify_bounds: n = " + std::to_string(n) + ": " + bound);
    };

    for (std::size_t n = 0; n < N; ++n) {
        const WordSet& b = bk.blocked[n];
        const WordSet& c = bk.closed[n];
        const auto& d = bk.decomposition[n];

        WordSet expect_b = ws.with(inst.forbidden_codes(n));
        if (n > 0) {
            const WordSet& prev = bk.closed[n - 1];
            for (auto y = prev.find_first(); y != WordSet::npos; y = prev.find_next(y))
                for (std::uint64_t a = 0; a < p; ++a) expect_b.set(y * p + a);
        }
        check(b == expect_b, n, "recursion B_n = A_n u C_{n-1} Lambda");
        check(c == detail::closed_part(ws, b), n, "C_n = {c : Lambda c in B_n}");

        WordSet rebuilt(ws.high());
        std::uint64_t total = 0;
        for (std::size_t k = 0; k < m; ++k) {
            std::uint64_t cls = 1;
            for (std::size_t i = k; i + 1 < m; ++i) cls *= p;
            for (auto y : d[k]) {
                for (std::uint64_t t = 0; t < cls; ++t) rebuilt.set(y * cls + t);
                total += cls;
            }
        }
        check(rebuilt == c && total == c.count(), n, "C_n is the disjoint union of y Lambda^{m-1-|y|}, y in D_n");

        check(p * c.count() <= (n + 1) * l, n, "|C_n| <= (n+1) l / p");
        for (std::size_t k = 1; k < m; ++k) {
            const std::uint64_t cap = k - 1 >= 40 ? ~std::uint64_t{0} : (std::uint64_t{1} << (k - 1)) * l;
            check(d[m - k].size() <= cap, n, "|D_{n,m-" + std::to_string(k) + "}| <= 2^" + std::to_string(k - 1) + " l");
        }
        if (n + 1 < N) {
            const auto& next = bk.decomposition[n + 1];
            for (std::size_t k = 0; k < m; ++k) {
                std::uint64_t tail = 0;
                for (std::size_t j = k + 1; j < m; ++j) tail += d[j].size();
                check(next[k].size() <= l + tail, n + 1,
                      "|D_{n+1," + std::to_string(k) + "}| <= l + sum_{j>" + std::to_string(k) + "} |D_{n,j}|");
            }
        }

        const WordSet& r = table.reachable[n];
        check((b & r).none() && (b | r).all(), n, "B_n is the complement of the valid-past windows R_n");
        if (inst.guaranteed()) check(!b.all(), n, "B_n != Lambda^m when m >= 4l + 2");

        BoundsRow row{n, b.count(), c.count(), {}};
        for (std::size_t k = 0; k < m; ++k) row.d.push_back(d[k].size());
        report.rows.push_back(std::move(row));
    }
    return report;
}

struct ExplorerRow {
    std::size_t m = 0;
    std::size_t trials = 0;
    std::size_t solved = 0;
    /// (trial, position) of every unsolved trial.
    std::vector<std::pair<std::size_t, std::size_t>> failures;

    double rate() const { return trials ? static_cast<double>(solved) / static_cast<double>(trials) : 0.0; }
};

struct ExplorerTable {
    int p = 2;
    std::size_t l = 0;
    std::size_t length = 0;
    std::vector<ExplorerRow> rows;

    /// Header `m,trials,solved,rate,first_failures`; failures as `trial:pos` joined by ';'.
    std::string to_csv() const {
        std::ostringstream out;
        out << "m,trials,solved,rate,first_failures\n";
        for (const auto& r : rows) {
            out << r.m << ',' << r.trials << ',' << r.solved << ',' << r.solved << '/' << r.trials << ',';
            if (r.failures.empty()) out << '-';
            for (std::size_t i = 0; i < r.failures.size(); ++i)
                out << (i ? ";" : "") << r.failures[i].first << ':' << r.failures[i].second;
            out << '\n';
        }
        return out.str();
    }
};

/// Seed of trial t at window length m.
inline std::uint64_t explorer_seed(std::uint64_t seed, std::size_t m, std::size_t trial) {
    return splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(m) << 32) | trial));
}

/// Solve rate of seeded instances for every m in [1, 4l+2].
inline ExplorerTable minimal_m_explorer(int p, std::size_t l, std::size_t trials, std::uint64_t seed,
                                        std::size_t length = 200, std::size_t lookahead = 0) {
    detail::require(trials >= 1, "explorer: trials must be >= 1");
    ExplorerTable table{p, l, length, {}};
    for (std::size_t m = 1; m <= 4 * l + 2; ++m) {
        ExplorerRow row{m, trials, 0, {}};
        for (std::size_t t = 0; t < trials; ++t) {
            const auto inst = AvoidanceInstance::seeded(p, m, l, explorer_seed(seed, m, t), length);
            const auto r = solve_prefix(inst, length, lookahead);
            if (r.solved())
                ++row.solved;
            else
                row.failures.emplace_back(t, r.failed_at);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace symdyn
