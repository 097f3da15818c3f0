#pragma once

// Batch front end. Every subcommand writes one artifact (to --out or the
// output stream) and maps its outcome to an exit status:
//   0 ok, 1 inconclusive, 2 invariant failure, 3 invalid input.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "symdyn/constructions.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/independence.hpp"
#include "symdyn/integer_sets.hpp"
#include "symdyn/subset_window.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/subshift_queries.hpp"
#include "symdyn/syndetic_certificates.hpp"
#include "symdyn/window_avoidance.hpp"

namespace symdyn::cli {

enum ExitCode : int { ok = 0, inconclusive = 1, invariant = 2, invalid_input = 3 };

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_argument("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Runs a parser over a file, prefixing diagnostics with the path.
template <class F>
auto parse_file(const std::string& path, F&& parse) {
    const auto content = read_file(path);
    try {
        return parse(content);
    } catch (const parse_error& e) {
        throw parse_error(e.line(), path + ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    }
}

inline std::shared_ptr<const Subshift> load_subshift(const std::string& path) {
    return std::make_shared<const Subshift>(parse_file(path, [](const std::string& s) { return parse_subshift_spec(s); }));
}

inline std::vector<Word> parse_targets(const std::string& s, int alphabet) {
    std::vector<Word> out;
    for (auto piece : text::split(s, ',')) out.push_back(Word::parse(text::trim(piece), alphabet));
    symdyn::detail::require(!out.empty(), "no targets");
    return out;
}

inline std::string fixed(double v, int digits = 6) {
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out << std::fixed << std::setprecision(digits) << v;
    return out.str();
}

inline std::string squares_window(std::int64_t bound) {
    std::vector<std::int64_t> sq;
    for (std::int64_t i = 0; i * i <= bound; ++i) sq.push_back(i * i);
    return to_string(SubsetWindow(sq, bound + 1));
}

} // namespace detail

struct SelfcheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// The embedded invariant suite; never throws.
inline std::vector<SelfcheckLine> selfcheck_lines() {
    std::vector<SelfcheckLine> out;
    auto run = [&](const std::string& name, const std::function<std::string()>& body) {
        try {
            const auto why = body();
            out.push_back({name, why.empty(), why});
        } catch (const std::exception& e) {
            out.push_back({name, false, e.what()});
        }
    };

    run("fekete", [] {
        auto full2 = std::make_shared<const Subshift>(SubshiftSpec::full(2));
        auto golden = std::make_shared<const Subshift>(SubshiftSpec::sft(2, {Word::parse("11", 2)}));
        const std::vector<Word> targets{Word::parse("0", 2), Word::parse("1", 2)};
        const auto rf = max_independence_within(CylinderTuple::of_words(full2, targets), 10);
        const auto rg = max_independence_within(CylinderTuple::of_words(golden, targets), 10);
        if (!rf.subadditive || !rg.subadditive) return std::string("a_{k+j} > a_k + a_j");
        for (std::int64_t k = 1; k <= 10; ++k) {
            if (rf.a[k - 1] != k) return "full(2): a_" + std::to_string(k) + " = " + std::to_string(rf.a[k - 1]);
            if (rg.a[k - 1] != (k + 1) / 2) return "golden mean: a_" + std::to_string(k) + " = " + std::to_string(rg.a[k - 1]);
        }
        return std::string();
    });

    run("verify_bounds", [] {
        // l = 1 keeps C_n empty, so the l = 2 instance is what exercises the recursion.
        for (const auto& inst : {AvoidanceInstance::seeded(2, 6, 1, 42, 200), AvoidanceInstance::seeded(2, 4, 2, 7, 200)}) {
            const auto rep = verify_bounds(bookkeeping(inst, inst.horizon()), inst);
            if (rep.rows.size() != inst.horizon()) return std::string("bookkeeping rows missing");
        }
        const auto inst = AvoidanceInstance::seeded(2, 6, 1, 42, 1000);
        const auto r = solve_prefix(inst, 1000);
        if (!r.solved()) return "solve_prefix: " + r.verdict();
        return std::string();
    });

    run("k_blocks", [] {
        KExampleParams p;
        p.y = parse_compact_word("12 0^400", 3);
        p.z[1] = {Word::parse("12", 3)};
        p.z[2] = {Word::parse("12", 3), Word::parse("21", 3)};
        p.phi = {1, 1};
        p.depth = 3;
        const auto run = proximal_k_point(p);
        const auto& l1 = run.blocks.level(1);
        if (to_string(l1.a) != "10" || to_string(l1.c[0]) != "0000" || to_string(l1.c[1]) != "1000")
            return std::string("level-1 literals differ");
        const auto check = verify_k_blocks(p, run.blocks);
        if (!check.ok) return "verify_k_blocks: " + check.failure;
        if (!verify_syndetic_zeros(run.x_prefix, run.blocks).pass()) return std::string("verify_syndetic_zeros");
        return std::string();
    });

    run("thue_morse_refutation", [] {
        const Subshift tm(SubshiftSpec::substitution(2, {"01", "10"}));
        const auto f = SubsetWindow::interval(0, 40, 40);
        const auto cert = build_obstruction(tm, SyndeticInput::of(f));
        if (cert.status != CertificateStatus::refuted) return std::string("no refutation");
        if (cert.refutation_depth > 3) return "refutation depth " + std::to_string(cert.refutation_depth);
        const auto check = verify_certificate(cert, tm, f);
        if (!check.ok) return check.stage + ": " + check.detail;
        return std::string();
    });
    return out;
}

/// Parses args (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symbolic dynamics toolkit: independence sets, window avoidance, obstruction certificates"};
    app.name("symdyn");
    app.require_subcommand(1);
    app.set_version_flag("--version", "1.0.0");

    std::string out_path;
    int status = ok;
    std::function<void()> action;
    auto emit = [&](const std::string& artifact) {
        if (out_path.empty()) {
            out << artifact;
            return;
        }
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw invalid_argument("cannot write '" + out_path + "'");
        f << artifact;
    };
    auto leaf = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "Write the artifact to this path");
        return sub;
    };

    // families
    auto* families = app.add_subcommand("families", "Integer-set families and their predicates");
    families->require_subcommand(1);
    std::string set_text, set_file, family_text;
    std::int64_t window = 0, gap = 1, thick = 1, horizon = 0, bound = 0, growth = 3;
    std::size_t count = 0;

    auto* fam_analyze = leaf(families->add_subcommand("analyze", "Densities and syndetic/thick/piecewise syndetic checks"));
    auto* set_opt = fam_analyze->add_option("--set", set_text, "Window as 'horizon;e1,e2,...'");
    fam_analyze->add_option("--set-file", set_file, "File holding a window")->excludes(set_opt);
    fam_analyze->add_option("--window", window, "Interval length for the density scan")->required();
    fam_analyze->add_option("--gap", gap, "Gap bound for syndeticity");
    fam_analyze->add_option("--thick", thick, "Interval length for thickness");
    fam_analyze->callback([&] {
        action = [&] {
            const auto s = set_file.empty()
                               ? parse_subset_window(set_text)
                               : detail::parse_file(set_file, [](const std::string& c) { return parse_subset_window(c); });
            const auto d = densities(s, window);
            const auto fp = family_predicates(s, gap, thick);
            std::ostringstream r;
            r << "horizon=" << s.horizon() << "\nsize=" << s.size() << "\nlower_density=" << to_string(d.lower)
              << "\nupper_density=" << to_string(d.upper) << "\nbanach_upper=" << to_string(d.banach_upper)
              << "\nsyndetic=" << fp.syndetic_with_gap << "\nthick=" << fp.thick_up_to << "\npiecewise_syndetic=";
            if (fp.pws_witness)
                r << "[" << fp.pws_witness->lo << "," << fp.pws_witness->hi << ") gap " << fp.pws_witness->gap << '\n';
            else
                r << "none\n";
            emit(r.str());
        };
    });

    auto* fam_member = leaf(families->add_subcommand("member", "Canonical family member truncated to a horizon"));
    fam_member->add_option("--family", family_text, "arith:k,off | ip:g1+g2 | explicit:<window> | cofinite:t | syndetic:L")
        ->required();
    fam_member->add_option("--horizon", horizon)->required();
    fam_member->callback([&] {
        action = [&] { emit(to_string(family_member(parse_family_spec(family_text), horizon)) + "\n"); };
    });

    auto* fam_fss = leaf(families->add_subcommand("fss", "3-AP-free set containing a copy of every block"));
    fam_fss->add_option("--blocks", count)->required();
    fam_fss->add_option("--growth", growth, "Shift growth factor (>= 3)");
    fam_fss->callback([&] {
        action = [&] {
            const auto c = fss_construct(count, growth);
            std::ostringstream r;
            r << "i,t_i,A_i\n";
            for (std::size_t i = 0; i < c.blocks.size(); ++i)
                r << i + 1 << ',' << c.blocks[i].shift << ',' << text::join(c.blocks[i].block, " ") << '\n';
            r << "S=" << to_string(c.set) << '\n';
            emit(r.str());
        };
    });

    auto* fam_anti = leaf(families->add_subcommand("anti-ss", "Sparse set meeting every translate of S at most twice"));
    auto* squares_opt = fam_anti->add_option("--squares", bound, "Use S = squares up to this bound");
    fam_anti->add_option("--set", set_text, "S as 'horizon;e1,e2,...'")->excludes(squares_opt);
    fam_anti->add_option("--n", count, "Number of elements")->required();
    fam_anti->callback([&] {
        action = [&] {
            const auto s = parse_subset_window(bound > 0 ? detail::squares_window(bound) : set_text);
            const auto r = anti_ss_sparse(s, count);
            emit("F=" + to_string(r.set) + "\nmax_intersection=" + std::to_string(r.max_intersection) +
                 "\ncomplete=" + std::to_string(r.complete) + "\n");
            if (!r.complete) status = inconclusive;
        };
    });

    // subshift
    auto* subshift = app.add_subcommand("subshift", "Subshift languages and finite-scale properties");
    subshift->require_subcommand(1);
    std::string spec_path, targets_text;
    std::size_t n = 1, r_len = 1;

    auto* sub_lang = leaf(subshift->add_subcommand("language", "Allowed words of length n, lexicographic"));
    sub_lang->add_option("--spec", spec_path)->required();
    sub_lang->add_option("--n", n)->required();
    sub_lang->callback([&] {
        action = [&] {
            const auto x = detail::load_subshift(spec_path);
            std::string r;
            for (const auto& w : x->language(n)) r += to_string(w) + "\n";
            emit(r);
        };
    });

    auto* sub_info = leaf(subshift->add_subcommand("info", "Kind, complexity and minimality/mixing at a scale"));
    sub_info->add_option("--spec", spec_path)->required();
    sub_info->add_option("--n", n, "Word length for minimality")->required();
    sub_info->add_option("--r", r_len, "Return length for minimality")->required();
    sub_info->callback([&] {
        action = [&] {
            const auto x = detail::load_subshift(spec_path);
            std::ostringstream rep;
            rep << "kind=" << to_string(x->kind()) << "\nalphabet=" << x->alphabet()
                << "\napproximate=" << x->approximate() << "\ncomplexity_" << n << "=" << x->language(n).size()
                << "\nminimal_at_scale=" << is_minimal_window(*x, n, r_len) << '\n';
            emit(rep.str());
        };
    });

    // indep
    auto* indep = app.add_subcommand("indep", "Independence sets of cylinder tuples");
    indep->require_subcommand(1);
    std::size_t depth = 4;
    std::int64_t k_max = 14, step_horizon = 64;
    auto tuple_opts = [&](CLI::App* sub) {
        sub->add_option("--spec", spec_path, "Subshift spec file")->required();
        sub->add_option("--targets", targets_text, "Comma-separated cylinder words, e.g. 0,1")->required();
    };
    auto load_tuple = [&] {
        const auto x = detail::load_subshift(spec_path);
        return CylinderTuple::of_words(x, detail::parse_targets(targets_text, x->alphabet()));
    };

    auto* ind_check = leaf(indep->add_subcommand("check", "Decide whether F is an independence set"));
    tuple_opts(ind_check);
    ind_check->add_option("--set", set_text, "F as 'horizon;e1,e2,...'")->required();
    ind_check->callback([&] {
        action = [&] {
            const auto t = load_tuple();
            const auto r = is_independence_set(t, parse_subset_window(set_text));
            std::string rep = "independent=" + std::to_string(r.independent) + "\n";
            if (!r.independent) rep += "refuting=" + text::join(r.refuting, ",") + "\n";
            emit(rep);
        };
    });

    auto* ind_density = leaf(indep->add_subcommand("density", "Profile a_k for k <= K and the Fekete bound"));
    tuple_opts(ind_density);
    ind_density->add_option("--K", k_max)->required();
    ind_density->callback([&] {
        action = [&] {
            const auto r = max_independence_within(load_tuple(), k_max);
            symdyn::detail::ensure(r.subadditive, "indep density: profile is not subadditive");
            emit(to_csv(r));
            if (r.partial) status = inconclusive;
        };
    });

    auto* ind_ip = leaf(indep->add_subcommand("ip", "Build IP generators whose finite sums are independent"));
    tuple_opts(ind_ip);
    ind_ip->add_option("--depth", depth)->required();
    ind_ip->add_option("--step-horizon", step_horizon, "Largest generator tried per step");
    ind_ip->callback([&] {
        action = [&] {
            const auto r = ip_independence_builder(load_tuple(), depth, step_horizon);
            emit("generators=" + text::join(r.generators, ",") + "\nsums=" + to_string(r.verified_sums) + "\n");
            if (!r.complete()) status = inconclusive;
        };
    });

    auto* ind_entropy = leaf(indep->add_subcommand("entropy", "Sequence entropy bracket along F"));
    tuple_opts(ind_entropy);
    ind_entropy->add_option("--set", set_text, "F as 'horizon;e1,e2,...'")->required();
    ind_entropy->add_option("--depth", depth)->required();
    ind_entropy->callback([&] {
        action = [&] {
            const auto x = detail::load_subshift(spec_path);
            const auto b = sequence_entropy_bracket(x, detail::parse_targets(targets_text, x->alphabet()),
                                                    parse_subset_window(set_text), depth);
            std::string rep = "m,patterns,independent,lower,upper\n";
            for (const auto& row : b.rows)
                rep += std::to_string(row.m) + "," + std::to_string(row.patterns) + "," + std::to_string(row.independent) +
                       "," + detail::fixed(row.lower) + "," + detail::fixed(row.upper) + "\n";
            rep += "bracket," + detail::fixed(b.lower) + "," + detail::fixed(b.upper) + "\n";
            emit(rep);
        };
    });

    // avoid
    auto* avoid = leaf(app.add_subcommand("avoid", "Infinite word avoiding the windowed forbidden sets"));
    int p = 2;
    std::size_t m = 6, l = 1, len = 5000, lookahead = 0, bounds_n = 0;
    std::uint64_t seed = 0;
    std::string instance_path;
    avoid->add_option("--instance", instance_path, "Instance file (overrides --p/--m/--l/--seed)");
    avoid->add_option("--p", p);
    avoid->add_option("--m", m);
    avoid->add_option("--l", l);
    avoid->add_option("--seed", seed);
    avoid->add_option("--len", len, "Prefix length to solve");
    avoid->add_option("--lookahead", lookahead, "Forward-set lookahead (0 = 2m)");
    avoid->add_option("--bounds", bounds_n, "Emit the bookkeeping CSV for n < N instead of a word");
    avoid->callback([&] {
        action = [&] {
            const auto inst = instance_path.empty()
                                  ? AvoidanceInstance::seeded(p, m, l, seed, std::max(len, bounds_n))
                                  : detail::parse_file(instance_path,
                                                       [](const std::string& c) { return parse_avoidance_instance(c); });
            if (bounds_n > 0) {
                emit(verify_bounds(bookkeeping(inst, std::min(bounds_n, inst.horizon())), inst).to_csv());
                return;
            }
            const auto r = solve_prefix(inst, std::min(len, inst.horizon()), lookahead);
            err << r.verdict() << '\n';
            if (!r.solved()) {
                status = inconclusive;
                return;
            }
            emit(to_string(*r.x) + "\n");
        };
    });

    // obstruct
    auto* obstruct = leaf(app.add_subcommand("obstruct", "Certificate that a syndetic F is not an independence set"));
    std::string cert_path, scale_text = "3,12";
    obstruct->add_option("--spec", spec_path, "Minimal subshift spec file");
    obstruct->add_option("--set", set_text, "F as 'horizon;e1,e2,...'");
    obstruct->add_option("--depth", depth, "Largest prefix of F tried for a refutation")->default_val(64);
    obstruct->add_option("--scale", scale_text, "Minimality check scale 'n,R'");
    obstruct->add_option("--verify", cert_path, "Re-check a certificate file instead of building one");
    obstruct->callback([&] {
        action = [&] {
            if (!cert_path.empty()) {
                const auto cert =
                    detail::parse_file(cert_path, [](const std::string& c) { return parse_certificate(c); });
                const Subshift x(cert.subshift);
                const auto check = verify_certificate(cert, x, cert.f);
                emit(check.ok ? std::string("ok\n") : "rejected stage=" + check.stage + ": " + check.detail + "\n");
                if (!check.ok) status = invalid_input;
                return;
            }
            symdyn::detail::require(!spec_path.empty() && !set_text.empty(), "obstruct: need --spec and --set");
            const auto x = detail::load_subshift(spec_path);
            const auto sc = text::parse_int_list<std::size_t>(scale_text);
            symdyn::detail::require(sc.size() == 2, "obstruct: --scale expects 'n,R'");
            ObstructionOptions opt;
            opt.depth = depth;
            opt.scale = {sc[0], sc[1]};
            const auto cert = build_obstruction(*x, SyndeticInput::of(parse_subset_window(set_text)), opt);
            emit(to_string(cert));
            if (cert.status != CertificateStatus::refuted) status = inconclusive;
        };
    });

    // construct
    auto* construct = app.add_subcommand("construct", "Explicit constructions");
    construct->require_subcommand(1);
    std::string params_path, report = "prefix", ie_text;
    auto* con_k = leaf(construct->add_subcommand("k", "Recurrent point with a K orbit closure"));
    con_k->add_option("--params", params_path)->required();
    con_k->add_option("--report", report, "prefix | blocks | zeros")
        ->check(CLI::IsMember({"prefix", "blocks", "zeros"}));
    con_k->add_option("--ie", ie_text, "IE window check 'j,s,horizon[,level]' on a truncated prefix");
    con_k->callback([&] {
        action = [&] {
            const auto params =
                detail::parse_file(params_path, [](const std::string& c) { return parse_kexample_params(c); });
            const auto run = proximal_k_point(params);
            const auto check = verify_k_blocks(params, run.blocks);
            symdyn::detail::ensure(check.ok, "verify_k_blocks: " + check.failure);
            if (!ie_text.empty()) {
                const auto v = text::parse_int_list<std::int64_t>(ie_text);
                symdyn::detail::require(v.size() == 3 || v.size() == 4, "construct k: --ie expects 'j,s,horizon[,level]'");
                symdyn::detail::require(v[0] >= 1 && v[1] >= 0 && v[2] >= 1, "construct k: --ie values out of range");
                const std::size_t cut = std::min<std::size_t>(run.x_prefix.size(), static_cast<std::size_t>(v[2]) + 2 * 600);
                const auto r = verify_ie_window(run.x_prefix.sub(0, cut), run.blocks, v[0], v[1], v[2],
                                                v.size() == 4 ? v[3] : 0);
                emit("found=" + std::to_string(r.found) + "\nlevel=" + std::to_string(r.level) +
                     "\nwitness=" + to_string(r.witness) + "\n");
                if (!r.found) status = inconclusive;
                return;
            }
            if (report == "zeros") {
                const auto z = verify_syndetic_zeros(run.x_prefix, run.blocks);
                emit(z.to_csv());
                symdyn::detail::ensure(z.pass(), "verify_syndetic_zeros: gap bound fails");
            } else if (report == "blocks") {
                std::ostringstream r;
                r << "k,n_k,m,ell,b,markers\n";
                for (const auto& lv : run.blocks.levels) {
                    r << lv.k << ',' << lv.n << ',';
                    if (lv.m)
                        r << *lv.m << ',' << lv.ell << ',' << lv.b << ',' << text::join(lv.markers, "");
                    else
                        r << "-,-,-,-";
                    r << '\n';
                }
                emit(r.str());
            } else {
                emit(compact_string(run.x_prefix) + "\n");
            }
        };
    });

    std::size_t multiples = 4;
    auto* con_bern = leaf(construct->add_subcommand("bernoulli", "Step k for which kN is independent in a full shift"));
    tuple_opts(con_bern);
    con_bern->add_option("--multiples", multiples, "Number of multiples checked");
    con_bern->callback([&] {
        action = [&] {
            const auto w = bernoulli_rs_witness(load_tuple(), multiples);
            symdyn::detail::ensure(w.verified, "bernoulli witness failed the engine check");
            emit("step=" + std::to_string(w.step) + "\nchecked=" + to_string(w.checked) + "\n");
        };
    });

    // explore
    auto* explore = leaf(app.add_subcommand("explore", "Solve rate of seeded avoidance instances for m <= 4l+2"));
    std::size_t trials = 20;
    explore->add_option("--p", p);
    explore->add_option("--l", l);
    explore->add_option("--trials", trials);
    explore->add_option("--seed", seed);
    explore->add_option("--len", len, "Prefix length per trial")->default_val(200);
    explore->add_option("--lookahead", lookahead);
    explore->callback([&] {
        action = [&] { emit(minimal_m_explorer(p, l, trials, seed, len, lookahead).to_csv()); };
    });

    // selfcheck
    auto* self = leaf(app.add_subcommand("selfcheck", "Run the embedded invariant suite"));
    self->callback([&] {
        action = [&] {
            std::string rep;
            bool all = true;
            for (const auto& line : selfcheck_lines()) {
                rep += (line.pass ? "PASS " : "FAIL ") + line.name;
                if (!line.pass) rep += ": " + line.detail;
                rep += "\n";
                all = all && line.pass;
            }
            emit(rep);
            if (!all) status = invariant;
        };
    });

    std::vector<const char*> argv{"symdyn"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << '\n';
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
    }

    try {
        if (action) action();
        return status;
    } catch (const invariant_failure& e) {
        err << "invariant failure: " << e.what() << '\n';
        return invariant;
    } catch (const parse_error& e) {
        err << "invalid input: " << e.what() << '\n';
        return invalid_input;
    } catch (const invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return invalid_input;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return invariant;
    }
}

} // namespace symdyn::cli
