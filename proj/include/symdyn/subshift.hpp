#pragma once

// One-sided subshifts over {0, ..., p-1}: full shifts, shifts of finite type,
// substitution subshifts and (approximate) orbit closures of a finite prefix.
//
// Full shifts and SFTs are presented by a block transition graph whose nodes
// are the W-blocks avoiding every forbidden word and that still admit an
// infinite walk. Substitution languages are computed exactly from the
// two-letter factors; orbit closures only know the factors of their prefix.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "symdyn/errors.hpp"
#include "symdyn/text.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

enum class SubshiftKind { full, sft, substitution, orbit_closure };

inline std::string to_string(SubshiftKind k) {
    switch (k) {
    case SubshiftKind::full: return "full";
    case SubshiftKind::sft: return "sft";
    case SubshiftKind::substitution: return "substitution";
    case SubshiftKind::orbit_closure: return "orbit";
    }
    return "?";
}

struct SubshiftSpec {
    SubshiftKind kind = SubshiftKind::full;
    int alphabet = 2;
    std::vector<Word> forbidden;   ///< sft
    std::vector<Word> rules;       ///< substitution: rules[a] is the image of a
    Word prefix;                   ///< orbit closure generator prefix

    static SubshiftSpec full(int p) {
        SubshiftSpec s;
        s.kind = SubshiftKind::full;
        s.alphabet = p;
        return s;
    }
    static SubshiftSpec sft(int p, std::vector<Word> forbidden) {
        SubshiftSpec s;
        s.kind = SubshiftKind::sft;
        s.alphabet = p;
        s.forbidden = std::move(forbidden);
        return s;
    }
    static SubshiftSpec sft(int p, std::initializer_list<std::string_view> forbidden) {
        std::vector<Word> f;
        for (auto w : forbidden) f.push_back(Word::parse(w, p));
        return sft(p, std::move(f));
    }
    static SubshiftSpec substitution(int p, std::vector<Word> rules) {
        SubshiftSpec s;
        s.kind = SubshiftKind::substitution;
        s.alphabet = p;
        s.rules = std::move(rules);
        return s;
    }
    static SubshiftSpec substitution(int p, std::initializer_list<std::string_view> rules) {
        std::vector<Word> r;
        for (auto w : rules) r.push_back(Word::parse(w, p));
        return substitution(p, std::move(r));
    }
    static SubshiftSpec orbit_closure(Word prefix) {
        SubshiftSpec s;
        s.kind = SubshiftKind::orbit_closure;
        s.alphabet = prefix.alphabet();
        s.prefix = std::move(prefix);
        return s;
    }

    /// Longest forbidden word (0 for a full shift).
    std::size_t max_forbidden_length() const {
        std::size_t m = 0;
        for (const auto& w : forbidden) m = std::max(m, w.size());
        return m;
    }
};

/// Line-oriented spec text: `p=`, `kind=`, `forbidden=`, `rules=`, `prefix=`.
inline std::string to_string(const SubshiftSpec& s) {
    std::ostringstream out;
    out << "p=" << s.alphabet << "\n";
    out << "kind=" << to_string(s.kind) << "\n";
    if (s.kind == SubshiftKind::sft) {
        out << "forbidden=";
        for (std::size_t i = 0; i < s.forbidden.size(); ++i) out << (i ? "," : "") << to_string(s.forbidden[i]);
        out << "\n";
    }
    if (s.kind == SubshiftKind::substitution) {
        out << "rules=";
        for (std::size_t i = 0; i < s.rules.size(); ++i)
            out << (i ? ";" : "") << symbol_char(static_cast<Symbol>(i)) << ":" << to_string(s.rules[i]);
        out << "\n";
    }
    if (s.kind == SubshiftKind::orbit_closure) out << "prefix=" << to_string(s.prefix) << "\n";
    return out.str();
}

inline SubshiftSpec parse_subshift_spec(std::string_view content) {
    std::map<std::string, std::pair<std::string, std::size_t>> fields;
    std::size_t line_no = 0;
    std::istringstream in{std::string(content)};
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        auto line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw parse_error(line_no, "expected key=value, got '" + std::string(line) + "'");
        const std::string key(text::trim(line.substr(0, eq)));
        if (key != "p" && key != "kind" && key != "forbidden" && key != "rules" && key != "prefix")
            throw parse_error(line_no, "unknown key '" + key + "'");
        if (fields.count(key)) throw parse_error(line_no, "duplicate key '" + key + "'");
        fields[key] = {std::string(text::trim(line.substr(eq + 1))), line_no};
    }
    auto get = [&](const std::string& key) -> const std::pair<std::string, std::size_t>* {
        auto it = fields.find(key);
        return it == fields.end() ? nullptr : &it->second;
    };
    const auto* kind_f = get("kind");
    if (!kind_f) throw parse_error(line_no + 1, "missing 'kind='");

    int p = 2;
    if (const auto* pf = get("p")) {
        try {
            p = text::parse_int<int>(pf->first, "alphabet size");
        } catch (const invalid_argument& e) {
            throw parse_error(pf->second, e.what());
        }
        if (p < 2 || p > kMaxAlphabet) throw parse_error(pf->second, "alphabet size must be in [2, 36]");
    } else if (kind_f->first != "orbit") {
        throw parse_error(line_no + 1, "missing 'p='");
    }

    auto words = [&](const std::pair<std::string, std::size_t>& f, char sep) {
        std::vector<Word> out;
        if (text::trim(f.first).empty()) return out;
        for (auto w : text::split(f.first, sep)) {
            try {
                out.push_back(Word::parse(text::trim(w), p));
            } catch (const invalid_argument& e) {
                throw parse_error(f.second, e.what());
            }
        }
        return out;
    };

    const auto& kind = kind_f->first;
    if (kind == "full") return SubshiftSpec::full(p);
    if (kind == "sft") {
        const auto* ff = get("forbidden");
        if (!ff) throw parse_error(kind_f->second, "sft requires 'forbidden='");
        return SubshiftSpec::sft(p, words(*ff, ','));
    }
    if (kind == "substitution") {
        const auto* rf = get("rules");
        if (!rf) throw parse_error(kind_f->second, "substitution requires 'rules='");
        std::vector<std::optional<Word>> rules(static_cast<std::size_t>(p));
        for (auto item : text::split(rf->first, ';')) {
            item = text::trim(item);
            const auto colon = item.find(':');
            if (colon == std::string_view::npos) throw parse_error(rf->second, "rule '" + std::string(item) + "' lacks ':'");
            const auto lhs = text::trim(item.substr(0, colon));
            const int a = lhs.size() == 1 ? symbol_value(lhs[0]) : -1;
            if (a < 0 || a >= p) throw parse_error(rf->second, "bad rule symbol '" + std::string(lhs) + "'");
            if (rules[static_cast<std::size_t>(a)]) throw parse_error(rf->second, "duplicate rule for '" + std::string(lhs) + "'");
            try {
                rules[static_cast<std::size_t>(a)] = Word::parse(text::trim(item.substr(colon + 1)), p);
            } catch (const invalid_argument& e) {
                throw parse_error(rf->second, e.what());
            }
        }
        std::vector<Word> r;
        for (std::size_t a = 0; a < rules.size(); ++a) {
            if (!rules[a]) throw parse_error(rf->second, "no rule for symbol " + std::to_string(a));
            r.push_back(*rules[a]);
        }
        return SubshiftSpec::substitution(p, std::move(r));
    }
    if (kind == "orbit") {
        const auto* pf = get("prefix");
        if (!pf) throw parse_error(kind_f->second, "orbit requires 'prefix='");
        try {
            if (!get("p")) {
                // alphabet inferred from the largest symbol present
                p = 2;
                for (char c : pf->first) p = std::max(p, symbol_value(c) + 1);
            }
            return SubshiftSpec::orbit_closure(Word::parse(pf->first, p));
        } catch (const invalid_argument& e) {
            throw parse_error(pf->second, e.what());
        }
    }
    throw parse_error(kind_f->second, "unknown kind '" + kind + "'");
}

struct LanguageLimits {
    std::size_t max_length = 24;        ///< the cap on word length
    std::size_t max_words = 1u << 22;   ///< memory guard on one table level
};

/// Graph on W-blocks of an SFT. Node codes are base-p values, so ascending
/// code order is lexicographic order.
class BlockGraph {
public:
    BlockGraph() = default;

    BlockGraph(int alphabet, std::size_t block_len, const std::vector<Word>& forbidden)
        : p_(alphabet), w_(block_len) {
        detail::require(block_len >= 1, "block graph: block length must be positive");
        std::uint64_t n = 1;
        for (std::size_t i = 0; i < w_; ++i) {
            n *= static_cast<std::uint64_t>(p_);
            if (n > kMaxNodes) throw size_limit("block graph: " + std::to_string(p_) + "^" + std::to_string(w_) +
                                                " nodes exceed the node budget");
        }
        nodes_ = static_cast<std::size_t>(n);
        high_ = nodes_ / static_cast<std::size_t>(p_);

        // Precompute forbidden words as code/length pairs for the factor scan.
        std::vector<std::pair<std::uint64_t, std::size_t>> forb;
        for (const auto& f : forbidden) forb.emplace_back(f.code(), f.size());
        auto clean = [&](std::uint64_t code, std::size_t len) {
            for (const auto& [fc, fl] : forb) {
                if (fl > len) continue;
                std::uint64_t mod = 1;
                for (std::size_t i = 0; i < fl; ++i) mod *= static_cast<std::uint64_t>(p_);
                std::uint64_t c = code;
                for (std::size_t start = 0; start + fl <= len; ++start) {
                    if (c % mod == fc) return false;
                    c /= static_cast<std::uint64_t>(p_);
                }
            }
            return true;
        };

        succ_.assign(nodes_, {});
        std::vector<std::size_t> outdeg(nodes_, 0);
        alive_.resize(nodes_);
        for (std::size_t v = 0; v < nodes_; ++v) {
            if (!clean(v, w_)) continue;
            for (int a = 0; a < p_; ++a) {
                const std::uint64_t edge = static_cast<std::uint64_t>(v) * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(a);
                if (!clean(edge, w_ + 1)) continue;
                succ_[v].push_back(static_cast<std::uint32_t>(next(v, a)));
            }
            alive_.set(v);
        }
        // Trim nodes without an infinite forward walk.
        for (std::size_t v = 0; v < nodes_; ++v)
            if (alive_.test(v)) outdeg[v] = succ_[v].size();
        std::deque<std::size_t> dead;
        for (std::size_t v = 0; v < nodes_; ++v)
            if (alive_.test(v) && outdeg[v] == 0) dead.push_back(v);
        while (!dead.empty()) {
            const auto v = dead.front();
            dead.pop_front();
            if (!alive_.test(v)) continue;
            alive_.reset(v);
            for (int a = 0; a < p_; ++a) {
                const auto u = static_cast<std::size_t>(a) * high_ + v / static_cast<std::size_t>(p_);
                if (!alive_.test(u)) continue;
                const auto& s = succ_[u];
                if (std::find(s.begin(), s.end(), static_cast<std::uint32_t>(v)) == s.end()) continue;
                if (--outdeg[u] == 0) dead.push_back(u);
            }
        }
        for (std::size_t v = 0; v < nodes_; ++v) {
            auto& s = succ_[v];
            s.erase(std::remove_if(s.begin(), s.end(), [&](std::uint32_t u) { return !alive_.test(u); }), s.end());
            if (!alive_.test(v)) s.clear();
        }
        pred_.assign(nodes_, {});
        for (std::size_t v = 0; v < nodes_; ++v)
            for (auto u : succ_[v]) pred_[u].push_back(static_cast<std::uint32_t>(v));
    }

    static constexpr std::uint64_t kMaxNodes = 1u << 20;

    int alphabet() const noexcept { return p_; }
    std::size_t block_length() const noexcept { return w_; }
    std::size_t node_count() const noexcept { return nodes_; }
    const boost::dynamic_bitset<>& alive() const noexcept { return alive_; }
    const std::vector<std::uint32_t>& successors(std::size_t v) const { return succ_[v]; }
    const std::vector<std::uint32_t>& predecessors(std::size_t v) const { return pred_[v]; }

    std::size_t next(std::size_t v, int a) const {
        return (v % high_) * static_cast<std::size_t>(p_) + static_cast<std::size_t>(a);
    }

    Symbol symbol_of(std::size_t v, std::size_t i) const {
        std::size_t c = v;
        for (std::size_t k = i + 1; k < w_; ++k) c /= static_cast<std::size_t>(p_);
        return static_cast<Symbol>(c % static_cast<std::size_t>(p_));
    }

    boost::dynamic_bitset<> step(const boost::dynamic_bitset<>& s) const {
        boost::dynamic_bitset<> out(nodes_);
        for (auto v = s.find_first(); v != boost::dynamic_bitset<>::npos; v = s.find_next(v))
            for (auto u : succ_[v]) out.set(u);
        return out;
    }

private:
    int p_ = 2;
    std::size_t w_ = 1;
    std::size_t nodes_ = 0;
    std::size_t high_ = 1;
    std::vector<std::vector<std::uint32_t>> succ_;
    std::vector<std::vector<std::uint32_t>> pred_;
    boost::dynamic_bitset<> alive_;
};

/// Words of one length stored back to back.
struct WordTable {
    std::size_t length = 0;
    int alphabet = 2;
    std::vector<Symbol> data;

    std::size_t size() const { return length == 0 ? (data.empty() ? 0 : 1) : data.size() / length; }
    const Symbol* at(std::size_t i) const { return data.data() + i * length; }
    Word word(std::size_t i) const { return Word({at(i), at(i) + length}, alphabet); }
};

/// An immutable subshift built once from its spec.
class Subshift {
public:
    explicit Subshift(SubshiftSpec spec) : spec_(std::move(spec)) {
        const int p = spec_.alphabet;
        detail::require(p >= 2 && p <= kMaxAlphabet, "subshift: alphabet size must be in [2, 36]");
        switch (spec_.kind) {
        case SubshiftKind::full:
            detail::require(spec_.forbidden.empty(), "subshift: full shift with forbidden words");
            break;
        case SubshiftKind::sft:
            for (const auto& w : spec_.forbidden) {
                detail::require(!w.empty(), "subshift: empty forbidden word");
                detail::require(w.alphabet() == p, "subshift: forbidden word over a different alphabet");
            }
            break;
        case SubshiftKind::substitution:
            detail::require(spec_.rules.size() == static_cast<std::size_t>(p), "subshift: need one rule per symbol");
            for (const auto& r : spec_.rules) detail::require(!r.empty(), "subshift: empty substitution rule");
            build_substitution();
            break;
        case SubshiftKind::orbit_closure:
            detail::require(!spec_.prefix.empty(), "subshift: empty orbit prefix");
            break;
        }
        if (is_graph_presented()) {
            graph_ = std::make_shared<const BlockGraph>(p, base_block_length(), spec_.forbidden);
            detail::require(graph_->alive().any(), "subshift: the SFT is empty");
        }
    }

    const SubshiftSpec& spec() const noexcept { return spec_; }
    int alphabet() const noexcept { return spec_.alphabet; }
    SubshiftKind kind() const noexcept { return spec_.kind; }
    bool is_graph_presented() const { return kind() == SubshiftKind::full || kind() == SubshiftKind::sft; }

    /// Languages of orbit closures are only the factors of a finite prefix.
    bool approximate() const { return kind() == SubshiftKind::orbit_closure; }

    /// For substitutions: the incidence matrix has a strictly positive power.
    bool primitive_substitution() const { return primitive_; }

    /// Memory of the SFT presentation: max(m_f - 1, 1).
    std::size_t base_block_length() const {
        const auto mf = spec_.max_forbidden_length();
        return std::max<std::size_t>(mf > 0 ? mf - 1 : 1, 1);
    }

    /// The W-block graph (W >= the SFT memory) used by constraint queries.
    std::shared_ptr<const BlockGraph> block_graph(std::size_t w) const {
        if (!is_graph_presented()) throw unsupported_operation("block_graph: only full shifts and SFTs have one");
        w = std::max(w, base_block_length());
        if (w == graph_->block_length()) return graph_;
        return std::make_shared<const BlockGraph>(alphabet(), w, spec_.forbidden);
    }

    /// Allowed words of length n, lexicographically sorted and distinct.
    WordTable language_table(std::size_t n, const LanguageLimits& limits = {}) const {
        if (n > limits.max_length)
            throw size_limit("language: length " + std::to_string(n) + " exceeds the cap " + std::to_string(limits.max_length));
        WordTable t;
        t.length = n;
        t.alphabet = alphabet();
        if (n == 0) return t;
        switch (kind()) {
        case SubshiftKind::full:
        case SubshiftKind::sft: graph_language(n, limits, t); break;
        case SubshiftKind::substitution: substitution_language(n, limits, t); break;
        case SubshiftKind::orbit_closure: orbit_language(n, t); break;
        }
        return t;
    }

    std::vector<Word> language(std::size_t n, const LanguageLimits& limits = {}) const {
        const auto t = language_table(n, limits);
        std::vector<Word> out;
        out.reserve(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) out.push_back(t.word(i));
        return out;
    }

    /// Membership of a single word in the language.
    bool allows(const Word& w) const {
        if (w.empty()) return true;
        if (w.alphabet() != alphabet()) return false;
        if (is_graph_presented()) {
            const auto& g = *graph_;
            const auto bw = g.block_length();
            const auto head = std::min(bw, w.size());
            boost::dynamic_bitset<> cur(g.node_count());
            const auto& alive = g.alive();
            for (auto v = alive.find_first(); v != boost::dynamic_bitset<>::npos; v = alive.find_next(v)) {
                bool match = true;
                for (std::size_t i = 0; i < head && match; ++i) match = g.symbol_of(v, i) == w[i];
                if (match) cur.set(v);
            }
            for (std::size_t j = bw; j < w.size() && cur.any(); ++j) {
                boost::dynamic_bitset<> nxt(g.node_count());
                for (auto v = cur.find_first(); v != boost::dynamic_bitset<>::npos; v = cur.find_next(v))
                    for (auto u : g.successors(v))
                        if (g.symbol_of(u, bw - 1) == w[j]) nxt.set(u);
                cur = std::move(nxt);
            }
            return cur.any();
        }
        if (kind() == SubshiftKind::orbit_closure) return spec_.prefix.contains_factor(w);
        const auto t = language_table(w.size(), {w.size(), LanguageLimits{}.max_words});
        for (std::size_t i = 0; i < t.size(); ++i)
            if (std::equal(w.symbols().begin(), w.symbols().end(), t.at(i))) return true;
        return false;
    }

    /// sigma^k(a) for a substitution.
    Word iterate_substitution(Symbol a, std::size_t k) const {
        if (kind() != SubshiftKind::substitution) throw unsupported_operation("iterate_substitution: not a substitution");
        Word w({a}, alphabet());
        for (std::size_t i = 0; i < k; ++i) w = apply_substitution(w);
        return w;
    }

    Word apply_substitution(const Word& w) const {
        std::vector<Symbol> out;
        for (auto s : w.symbols()) {
            const auto& r = spec_.rules[s].symbols();
            out.insert(out.end(), r.begin(), r.end());
        }
        return Word(std::move(out), alphabet());
    }

private:
    static constexpr std::size_t kMaxIterations = 256;

    void build_substitution() {
        const auto p = static_cast<std::size_t>(alphabet());
        // two-letter factors: closure of ab -> 2-factors of sigma(a)sigma(b)
        std::set<std::pair<Symbol, Symbol>> l2;
        std::deque<std::pair<Symbol, Symbol>> work;
        auto add_factors = [&](const Word& w) {
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                const std::pair<Symbol, Symbol> f{w[i], w[i + 1]};
                if (l2.insert(f).second) work.push_back(f);
            }
        };
        for (std::size_t a = 0; a < p; ++a) add_factors(spec_.rules[a]);
        while (!work.empty()) {
            const auto [a, b] = work.front();
            work.pop_front();
            add_factors(spec_.rules[a] + spec_.rules[b]);
        }
        two_factors_.assign(l2.begin(), l2.end());

        std::vector<std::vector<bool>> reach(p, std::vector<bool>(p, false));
        for (std::size_t a = 0; a < p; ++a)
            for (auto s : spec_.rules[a].symbols()) reach[a][s] = true;
        auto power = reach;
        primitive_ = false;
        for (std::size_t k = 1; k <= (p - 1) * (p - 1) + 1; ++k) {
            bool all = true;
            for (std::size_t a = 0; a < p && all; ++a)
                for (std::size_t b = 0; b < p && all; ++b) all = power[a][b];
            if (all) {
                primitive_ = true;
                break;
            }
            std::vector<std::vector<bool>> nextp(p, std::vector<bool>(p, false));
            for (std::size_t a = 0; a < p; ++a)
                for (std::size_t c = 0; c < p; ++c)
                    if (power[a][c])
                        for (std::size_t b = 0; b < p; ++b)
                            if (reach[c][b]) nextp[a][b] = true;
            power = std::move(nextp);
        }
    }

    void graph_language(std::size_t n, const LanguageLimits& limits, WordTable& t) const {
        const auto& g = *graph_;
        const auto w = g.block_length();
        const auto& alive = g.alive();
        auto push = [&](const std::vector<Symbol>& word) {
            if (t.size() >= limits.max_words) throw size_limit("language: table exceeds the word budget");
            t.data.insert(t.data.end(), word.begin(), word.end());
        };
        std::vector<Symbol> word;
        if (n <= w) {
            // prefixes of live blocks; node order is lexicographic
            std::optional<std::vector<Symbol>> last;
            for (auto v = alive.find_first(); v != boost::dynamic_bitset<>::npos; v = alive.find_next(v)) {
                word.clear();
                for (std::size_t i = 0; i < n; ++i) word.push_back(g.symbol_of(v, i));
                if (last && *last == word) continue;
                push(word);
                last = word;
            }
            return;
        }
        // Walks of n - w + 1 nodes, successors in ascending order, are the
        // allowed words in lexicographic order.
        std::vector<std::pair<std::size_t, std::size_t>> stack;
        for (auto v = alive.find_first(); v != boost::dynamic_bitset<>::npos; v = alive.find_next(v)) {
            word.clear();
            for (std::size_t i = 0; i < w; ++i) word.push_back(g.symbol_of(v, i));
            stack.assign(1, {v, 0});
            while (!stack.empty()) {
                auto& [node, next] = stack.back();
                if (word.size() == n) {
                    push(word);
                    stack.pop_back();
                    word.pop_back();
                    continue;
                }
                const auto& succ = g.successors(node);
                if (next == succ.size()) {
                    stack.pop_back();
                    if (!stack.empty()) word.pop_back();
                    continue;
                }
                const auto u = succ[next++];
                word.push_back(g.symbol_of(u, w - 1));
                stack.emplace_back(u, 0);
            }
        }
    }

    void substitution_language(std::size_t n, const LanguageLimits& limits, WordTable& t) const {
        const auto p = static_cast<std::size_t>(alphabet());
        std::vector<Word> images;
        for (std::size_t a = 0; a < p; ++a) images.push_back(Word({static_cast<Symbol>(a)}, alphabet()));
        std::size_t iterations = 0;
        auto min_len = [&] {
            std::size_t m = images[0].size();
            for (const auto& w : images) m = std::min(m, w.size());
            return m;
        };
        while (min_len() < n) {
            if (++iterations > kMaxIterations)
                throw unsupported_operation("language: substitution images do not grow past length " + std::to_string(n));
            for (auto& w : images) w = apply_substitution(w);
        }
        std::set<std::vector<Symbol>> words;
        auto collect = [&](const Word& w) {
            for (std::size_t i = 0; i + n <= w.size(); ++i) {
                words.emplace(w.symbols().begin() + static_cast<std::ptrdiff_t>(i),
                              w.symbols().begin() + static_cast<std::ptrdiff_t>(i + n));
                if (words.size() > limits.max_words) throw size_limit("language: table exceeds the word budget");
            }
        };
        for (const auto& w : images) collect(w);
        for (const auto& [a, b] : two_factors_) collect(images[a] + images[b]);
        for (const auto& w : words) t.data.insert(t.data.end(), w.begin(), w.end());
    }

    void orbit_language(std::size_t n, WordTable& t) const {
        std::set<std::vector<Symbol>> words;
        const auto& s = spec_.prefix.symbols();
        for (std::size_t i = 0; i + n <= s.size(); ++i)
            words.emplace(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(i + n));
        for (const auto& w : words) t.data.insert(t.data.end(), w.begin(), w.end());
    }

    SubshiftSpec spec_;
    std::shared_ptr<const BlockGraph> graph_;
    std::vector<std::pair<Symbol, Symbol>> two_factors_;
    bool primitive_ = false;
};

} // namespace symdyn
