#pragma once

// Certificates that a syndetic set F is not an independence set for
// ([0]_X, [1]_X) in a minimal binary subshift X.
//
// With l the largest gap of F and m = 4l + 2, a word a of length m*l
// allowed in X yields forbidden window sets A_j (|A_j| <= l). A word x
// avoiding every A_j cannot be read off along F by any y in X, so some
// finite J0 of F-indices admits no y with y(n_j) = x(j) for j in J0.

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
#include "symdyn/subshift_queries.hpp"
#include "symdyn/text.hpp"
#include "symdyn/window_avoidance.hpp"

namespace symdyn {

/// F = {n_0 < n_1 < ...} within its horizon, with gap bound l.
struct SyndeticInput {
    SubsetWindow f;
    std::size_t gap = 0;

    static SyndeticInput of(SubsetWindow f) {
        detail::require(f.size() >= 2, "syndetic input: F needs at least two elements");
        const auto& e = f.elements();
        std::int64_t g = 0;
        for (std::size_t i = 1; i < e.size(); ++i) g = std::max(g, e[i] - e[i - 1]);
        detail::require(e.front() <= g, "syndetic input: n_0 = " + std::to_string(e.front()) + " exceeds the gap bound " +
                                            std::to_string(g));
        return {std::move(f), static_cast<std::size_t>(g)};
    }
};

enum class CertificateStatus { refuted, inconclusive };

inline std::string to_string(CertificateStatus s) { return s == CertificateStatus::refuted ? "refuted" : "inconclusive"; }

struct ObstructionCertificate {
    SubshiftSpec subshift;
    SubsetWindow f;
    std::size_t gap = 0;
    std::size_t m = 0;
    /// Minimality was checked at this (n, R) scale only.
    std::pair<std::size_t, std::size_t> scale{0, 0};
    std::size_t depth = 0;
    CertificateStatus status = CertificateStatus::inconclusive;
    bool approximate = false;
    Word a;
    /// A_j for 0 <= j < |F| - m + 1, each sorted.
    std::vector<std::vector<Word>> forbidden;
    Word x;
    /// Number of leading F-indices needed before the pattern became unrealizable.
    std::size_t refutation_depth = 0;
    /// Indices j into F; the refuting pattern is y(n_j) = x(j).
    std::vector<std::size_t> j0;
    std::vector<Symbol> assignment;

    std::vector<std::int64_t> positions() const {
        std::vector<std::int64_t> out;
        for (auto j : j0) out.push_back(f.elements()[j]);
        return out;
    }
};

struct ObstructionOptions {
    std::size_t depth = 64;
    std::pair<std::size_t, std::size_t> scale{3, 12};
    /// Overrides the lexicographically least allowed word of length m*l.
    std::optional<Word> a;
    SearchLimits limits;
};

namespace detail {

/// A_j per the window rule: (a(k), a(k + n_{j+1} - n_j), ..., a(k + n_{j+m-1} - n_j)), 1 <= k <= l.
inline std::vector<std::vector<Word>> derive_forbidden_sets(const Word& a, const SubsetWindow& f, std::size_t gap,
                                                            std::size_t m) {
    const auto& e = f.elements();
    std::vector<std::vector<Word>> out;
    if (e.size() < m) return out;
    for (std::size_t j = 0; j + m <= e.size(); ++j) {
        std::vector<Word> set;
        for (std::size_t k = 0; k < gap; ++k) {
            std::vector<Symbol> w;
            for (std::size_t i = 0; i < m; ++i) w.push_back(a[k + static_cast<std::size_t>(e[j + i] - e[j])]);
            set.emplace_back(std::move(w), a.alphabet());
        }
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        out.push_back(std::move(set));
    }
    return out;
}

inline AvoidanceInstance obstruction_instance(const std::vector<std::vector<Word>>& sets, std::size_t gap,
                                              std::size_t m) {
    std::map<std::size_t, std::vector<Word>> byn;
    for (std::size_t j = 0; j < sets.size(); ++j) byn[j] = sets[j];
    return AvoidanceInstance::explicit_sets(2, m, gap, sets.size(), byn);
}

inline std::vector<Constraint> pattern_constraints(const SubsetWindow& f, const Word& x,
                                                   const std::vector<std::size_t>& idx) {
    std::vector<Constraint> cs;
    for (auto j : idx)
        cs.push_back({static_cast<std::size_t>(f.elements()[j]), Target::of(Word({x[j]}, x.alphabet()))});
    return cs;
}

inline Word lex_least_allowed(const Subshift& x, std::size_t len, const SearchLimits& limits) {
    detail::require(len >= 1, "lex_least_allowed: empty length");
    const ConstraintSolver solver(x, len, 1, limits);
    Target any;
    for (int s = 0; s < x.alphabet(); ++s) any.bases.push_back(Word({static_cast<Symbol>(s)}, x.alphabet()));
    const auto w = solver.realize({{len - 1, any}});
    detail::ensure(w.has_value(), "lex_least_allowed: nonempty subshift has no word of length " + std::to_string(len));
    return w->sub(0, len);
}

inline CylinderTuple symbol_tuple(const Subshift& x) {
    auto ptr = std::make_shared<const Subshift>(x);
    return CylinderTuple::of_words(ptr, {Word::parse("0", 2), Word::parse("1", 2)});
}

} // namespace detail

inline ObstructionCertificate build_obstruction(const Subshift& x, const SyndeticInput& in,
                                                const ObstructionOptions& opt = {}) {
    if (x.alphabet() != 2) throw precondition_failure("build_obstruction: X must be a binary subshift");
    if (!is_minimal_window(x, opt.scale.first, opt.scale.second))
        throw precondition_failure("build_obstruction: X is not minimal at scale (" + std::to_string(opt.scale.first) +
                                   ", " + std::to_string(opt.scale.second) + ")");
    ObstructionCertificate cert;
    cert.subshift = x.spec();
    cert.f = in.f;
    cert.gap = in.gap;
    cert.m = 4 * in.gap + 2;
    cert.scale = opt.scale;
    cert.approximate = x.approximate();
    const std::size_t fsize = in.f.size();
    detail::require(fsize >= cert.m, "build_obstruction: F has " + std::to_string(fsize) +
                                         " elements within its horizon, need at least m = " + std::to_string(cert.m));

    const std::size_t alen = cert.m * cert.gap;
    cert.a = opt.a ? *opt.a : detail::lex_least_allowed(x, alen, opt.limits);
    detail::require(cert.a.size() == alen, "build_obstruction: a must have length m*l = " + std::to_string(alen));
    detail::require(x.allows(cert.a), "build_obstruction: a = " + to_string(cert.a) + " is not allowed in X");

    cert.forbidden = detail::derive_forbidden_sets(cert.a, in.f, cert.gap, cert.m);
    const auto inst = detail::obstruction_instance(cert.forbidden, cert.gap, cert.m);
    const auto sol = solve_prefix(inst, fsize);
    if (!sol.solved()) {
        cert.x = Word({}, 2);
        cert.depth = 0;
        return cert;
    }
    cert.x = *sol.x;

    detail::require(opt.depth >= 1, "build_obstruction: depth must be >= 1");
    cert.depth = std::min(opt.depth, fsize);
    const ConstraintSolver solver(x, static_cast<std::size_t>(in.f.elements()[cert.depth - 1]) + 1, 1, opt.limits);
    std::vector<std::size_t> idx;
    std::optional<std::size_t> refuted_at;
    for (std::size_t j = 0; j < cert.depth && !refuted_at; ++j) {
        idx.push_back(j);
        if (!solver.satisfiable(detail::pattern_constraints(in.f, cert.x, idx))) refuted_at = j + 1;
    }
    if (!refuted_at) return cert;

    cert.status = CertificateStatus::refuted;
    cert.refutation_depth = *refuted_at;
    // Drop indices greedily while the pattern stays unrealizable.
    for (std::size_t i = 0; i < idx.size();) {
        auto trial = idx;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (!trial.empty() && !solver.satisfiable(detail::pattern_constraints(in.f, cert.x, trial)))
            idx = std::move(trial);
        else
            ++i;
    }
    cert.j0 = idx;
    for (auto j : idx) cert.assignment.push_back(cert.x[j]);

    const auto tuple = detail::symbol_tuple(x);
    const auto pos = cert.positions();
    const auto check = is_independence_set(tuple, SubsetWindow(pos, pos.back() + 1), opt.limits);
    detail::ensure(!check.independent, "build_obstruction: engine accepts the refuting set as independent");
    return cert;
}

struct CertificateCheck {
    bool ok = false;
    /// "instance", "x", "independence" or "refutation"; empty when ok.
    std::string stage;
    std::string detail;

    explicit operator bool() const noexcept { return ok; }
};

/// Re-derives A_j from (a, F), rescans x, and re-checks the refutation with
/// the independence engine.
inline CertificateCheck verify_certificate(const ObstructionCertificate& cert, const Subshift& x,
                                           const SubsetWindow& f, const SearchLimits& limits = {}) {
    auto fail = [](std::string stage, std::string why) { return CertificateCheck{false, std::move(stage), std::move(why)}; };

    if (x.alphabet() != 2) return fail("instance", "X is not binary");
    if (!(f == cert.f)) return fail("instance", "F differs from the certificate");
    SyndeticInput in;
    try {
        in = SyndeticInput::of(f);
    } catch (const invalid_argument& e) {
        return fail("instance", e.what());
    }
    if (in.gap != cert.gap) return fail("instance", "gap bound differs");
    if (cert.m != 4 * cert.gap + 2) return fail("instance", "m is not 4l + 2");
    if (cert.a.size() != cert.m * cert.gap || cert.a.alphabet() != 2) return fail("instance", "a has the wrong length");
    if (!x.allows(cert.a)) return fail("instance", "a is not allowed in X");
    if (cert.scale.first < 1 || cert.scale.first > cert.scale.second ||
        !is_minimal_window(x, cert.scale.first, cert.scale.second))
        return fail("instance", "X is not minimal at the recorded scale");
    const auto sets = detail::derive_forbidden_sets(cert.a, f, cert.gap, cert.m);
    if (sets != cert.forbidden) return fail("instance", "recorded A_j differ from the ones derived from (a, F)");
    for (std::size_t j = 0; j < sets.size(); ++j)
        if (sets[j].size() > cert.gap) return fail("instance", "|A_" + std::to_string(j) + "| exceeds l");

    if (cert.status != CertificateStatus::refuted) return fail("refutation", "certificate is inconclusive");

    if (cert.x.size() != f.size()) return fail("x", "x length differs from |F|");
    const auto inst = detail::obstruction_instance(sets, cert.gap, cert.m);
    if (const auto bad = find_violation(inst, cert.x))
        return fail("x", "sliding scan: x[" + std::to_string(*bad) + ", " + std::to_string(*bad + cert.m - 1) +
                             "] is in A_" + std::to_string(*bad));
    if (cert.j0.empty() || cert.j0.size() != cert.assignment.size()) return fail("x", "malformed refutation");
    for (std::size_t i = 0; i < cert.j0.size(); ++i) {
        if (cert.j0[i] >= f.size() || (i > 0 && cert.j0[i] <= cert.j0[i - 1]))
            return fail("x", "J0 indices not ascending within F");
        if (cert.assignment[i] != cert.x[cert.j0[i]])
            return fail("x", "assignment disagrees with x at j = " + std::to_string(cert.j0[i]));
    }

    const auto tuple = detail::symbol_tuple(x);
    const auto pos = cert.positions();
    const SubsetWindow j0set(pos, pos.back() + 1);
    std::vector<std::size_t> s;
    for (auto sym : cert.assignment) s.push_back(std::size_t{sym} + 1);
    try {
        if (is_independence_set(tuple, j0set, limits).independent)
            return fail("independence", "J0 is an independence set");
        if (realize_assignment(tuple, j0set, s, limits))
            return fail("independence", "the recorded assignment is realizable");
    } catch (const size_limit& e) {
        return fail("independence", e.what());
    }
    return {true, "", ""};
}

inline std::string to_string(const ObstructionCertificate& c) {
    std::ostringstream out;
    out << "[instance]\n";
    std::istringstream spec(to_string(c.subshift));
    for (std::string line; std::getline(spec, line);)
        if (!line.empty()) out << "X." << line << '\n';
    out << "F=" << to_string(c.f) << '\n';
    out << "l=" << c.gap << '\n';
    out << "m=" << c.m << '\n';
    out << "scale=" << c.scale.first << ',' << c.scale.second << '\n';
    out << "depth=" << c.depth << '\n';
    out << "status=" << to_string(c.status) << '\n';
    out << "approximate=" << (c.approximate ? 1 : 0) << '\n';
    for (std::size_t j = 0; j < c.forbidden.size(); ++j) {
        out << 'A' << j << '=';
        for (std::size_t i = 0; i < c.forbidden[j].size(); ++i) out << (i ? "," : "") << to_string(c.forbidden[j][i]);
        out << '\n';
    }
    out << "[a]\n" << to_string(c.a) << '\n';
    out << "[x]\n" << to_string(c.x) << '\n';
    out << "[refutation]\n";
    if (c.status == CertificateStatus::refuted) {
        out << "depth=" << c.refutation_depth << '\n';
        out << "J0=" << text::join(c.j0, ",") << '\n';
        out << "positions=" << text::join(c.positions(), ",") << '\n';
        out << "assignment=";
        for (auto s : c.assignment) out << symbol_char(s);
        out << '\n';
    } else {
        out << "none\n";
    }
    return out.str();
}

inline ObstructionCertificate parse_certificate(std::string_view content) {
    std::istringstream in{std::string(content)};
    std::string section;
    std::map<std::string, std::map<std::string, std::pair<std::string, std::size_t>>> kv;
    std::map<std::string, std::pair<std::string, std::size_t>> bodies;
    std::string spec_text;
    std::size_t line_no = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        const auto line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw parse_error(line_no, "unterminated section header");
            section = std::string(line.substr(1, line.size() - 2));
            if (section != "instance" && section != "a" && section != "x" && section != "refutation")
                throw parse_error(line_no, "unknown section [" + section + "]");
            if (kv.count(section) || bodies.count(section)) throw parse_error(line_no, "duplicate section");
            kv[section];
            continue;
        }
        if (section.empty()) throw parse_error(line_no, "content before the first section");
        if (section == "a" || section == "x") {
            if (bodies.count(section)) throw parse_error(line_no, "section [" + section + "] holds one word");
            bodies[section] = {std::string(line), line_no};
            continue;
        }
        if (section == "refutation" && line == "none") {
            kv[section]["none"] = {"", line_no};
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw parse_error(line_no, "expected key=value");
        const std::string key(line.substr(0, eq));
        const std::string value(line.substr(eq + 1));
        if (section == "instance" && key.starts_with("X.")) {
            spec_text += key.substr(2) + "=" + value + "\n";
            continue;
        }
        if (kv[section].count(key)) throw parse_error(line_no, "duplicate key '" + key + "'");
        kv[section][key] = {value, line_no};
    }
    for (const char* s : {"instance", "a", "x", "refutation"})
        if (!kv.count(s)) throw parse_error(line_no + 1, std::string("missing section [") + s + "]");

    auto get = [&](const std::string& sec, const std::string& key) -> const std::pair<std::string, std::size_t>& {
        auto it = kv[sec].find(key);
        if (it == kv[sec].end()) throw parse_error(line_no + 1, "missing '" + key + "' in [" + sec + "]");
        return it->second;
    };
    auto with_line = [](std::size_t ln, auto&& fn) {
        try {
            return fn();
        } catch (const parse_error&) {
            throw;
        } catch (const invalid_argument& e) {
            throw parse_error(ln, e.what());
        }
    };

    ObstructionCertificate c;
    c.subshift = with_line(1, [&] { return parse_subshift_spec(spec_text); });
    {
        const auto& [v, ln] = get("instance", "F");
        c.f = with_line(ln, [&] { return parse_subset_window(v); });
    }
    auto num = [&](const std::string& sec, const std::string& key) {
        const auto& [v, ln] = get(sec, key);
        return with_line(ln, [&] { return text::parse_int<std::size_t>(v, key); });
    };
    c.gap = num("instance", "l");
    c.m = num("instance", "m");
    c.depth = num("instance", "depth");
    {
        const auto& [v, ln] = get("instance", "scale");
        const auto sc = with_line(ln, [&] { return text::parse_int_list<std::size_t>(v); });
        if (sc.size() != 2) throw parse_error(ln, "scale must be 'n,R'");
        c.scale = {sc[0], sc[1]};
    }
    {
        const auto& [v, ln] = get("instance", "status");
        if (v == "refuted") c.status = CertificateStatus::refuted;
        else if (v == "inconclusive") c.status = CertificateStatus::inconclusive;
        else throw parse_error(ln, "status must be refuted or inconclusive");
    }
    c.approximate = num("instance", "approximate") != 0;
    for (std::size_t j = 0;; ++j) {
        auto it = kv["instance"].find("A" + std::to_string(j));
        if (it == kv["instance"].end()) break;
        const auto& [v, ln] = it->second;
        std::vector<Word> set;
        with_line(ln, [&] {
            for (auto w : text::split(v, ',')) set.push_back(Word::parse(text::trim(w), 2));
            return 0;
        });
        c.forbidden.push_back(std::move(set));
    }
    auto body = [&](const std::string& sec) {
        auto it = bodies.find(sec);
        if (it == bodies.end()) return Word({}, 2);
        return with_line(it->second.second, [&] { return Word::parse(it->second.first, 2); });
    };
    c.a = body("a");
    c.x = body("x");
    if (c.status == CertificateStatus::refuted) {
        c.refutation_depth = num("refutation", "depth");
        {
            const auto& [v, ln] = get("refutation", "J0");
            c.j0 = with_line(ln, [&] { return text::parse_int_list<std::size_t>(v); });
        }
        const auto& [v, ln] = get("refutation", "assignment");
        const auto w = with_line(ln, [&] { return Word::parse(v, 2); });
        c.assignment = w.symbols();
        for (auto j : c.j0)
            if (j >= c.f.size()) throw parse_error(get("refutation", "J0").second, "J0 index outside F");
    }
    return c;
}

} // namespace symdyn
