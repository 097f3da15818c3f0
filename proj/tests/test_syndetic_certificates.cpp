#include <gtest/gtest.h>

#include "symdyn/syndetic_certificates.hpp"

using namespace symdyn;

namespace symdyn {
void PrintTo(const Word& w, std::ostream* os) { *os << to_string(w); }
} // namespace symdyn

namespace {

Subshift thue_morse() { return Subshift(SubshiftSpec::substitution(2, {"01", "10"})); }
Subshift fibonacci() { return Subshift(SubshiftSpec::substitution(2, {"01", "0"})); }

SubsetWindow evens(std::int64_t horizon) {
    std::vector<std::int64_t> e;
    for (std::int64_t v = 0; v < horizon; v += 2) e.push_back(v);
    return SubsetWindow(e, horizon);
}

} // namespace

TEST(SyndeticInput, GapAndFirstElement) {
    const auto in = SyndeticInput::of(SubsetWindow({1, 3, 4, 7}, 10));
    EXPECT_EQ(in.gap, 3u);
    EXPECT_THROW(SyndeticInput::of(SubsetWindow({5, 6, 7}, 10)), invalid_argument);
    EXPECT_THROW(SyndeticInput::of(SubsetWindow({0}, 10)), invalid_argument);
}

TEST(Obstruction, ForbiddenSetsFollowTheWindowRule) {
    const auto a = Word::parse("0010110100", 2);
    const SubsetWindow f({0, 1, 3, 4, 6}, 8);
    const auto sets = detail::derive_forbidden_sets(a, f, 2, 3);
    ASSERT_EQ(sets.size(), 3u);
    // j = 0: offsets 0, 1, 3 read from k = 1, 2
    EXPECT_EQ(sets[0], (std::vector<Word>{Word::parse("000", 2), Word::parse("011", 2)}));
    // j = 1: offsets 0, 2, 3
    EXPECT_EQ(sets[1], (std::vector<Word>{Word::parse("001", 2), Word::parse("010", 2)}));
    for (const auto& s : sets) EXPECT_LE(s.size(), 2u);
}

TEST(Obstruction, ThueMorseIntegersRefutedAtDepthThree) {
    const auto tm = thue_morse();
    const auto f = SubsetWindow::interval(0, 40, 40);
    const auto cert = build_obstruction(tm, SyndeticInput::of(f));
    ASSERT_EQ(cert.status, CertificateStatus::refuted);
    EXPECT_EQ(cert.m, 6u);
    EXPECT_EQ(cert.a.size(), 6u);
    EXPECT_EQ(cert.a, tm.language(6).front());
    EXPECT_LE(cert.refutation_depth, 3u);
    EXPECT_EQ(cert.j0, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(cert.assignment, (std::vector<Symbol>{0, 0, 0}));
    EXPECT_FALSE(tm.allows(Word::parse("000", 2)));
    EXPECT_TRUE(verify_certificate(cert, tm, f).ok);
}

TEST(Obstruction, FibonacciEvensVerified) {
    const auto fib = fibonacci();
    const auto f = evens(200);
    const auto cert = build_obstruction(fib, SyndeticInput::of(f));
    ASSERT_EQ(cert.status, CertificateStatus::refuted);
    EXPECT_EQ(cert.gap, 2u);
    EXPECT_EQ(cert.m, 10u);
    for (const auto& s : cert.forbidden) EXPECT_LE(s.size(), 2u);
    EXPECT_FALSE(find_violation(detail::obstruction_instance(cert.forbidden, 2, 10), cert.x));

    // Independent engine refutation of J0 with the recorded assignment.
    const auto tuple = CylinderTuple::of_words(std::make_shared<const Subshift>(fib),
                                               {Word::parse("0", 2), Word::parse("1", 2)});
    const auto pos = cert.positions();
    const SubsetWindow j0(pos, pos.back() + 1);
    EXPECT_FALSE(is_independence_set(tuple, j0).independent);
    std::vector<std::size_t> s;
    for (auto sym : cert.assignment) s.push_back(sym + 1u);
    EXPECT_FALSE(realize_assignment(tuple, j0, s).has_value());
    // J0 is minimal: every one-smaller subset realizes its part of the pattern.
    for (std::size_t drop = 0; drop < pos.size() && pos.size() > 1; ++drop) {
        std::vector<std::int64_t> p2;
        std::vector<std::size_t> s2;
        for (std::size_t i = 0; i < pos.size(); ++i)
            if (i != drop) {
                p2.push_back(pos[i]);
                s2.push_back(s[i]);
            }
        EXPECT_TRUE(realize_assignment(tuple, SubsetWindow(p2, p2.back() + 1), s2).has_value());
    }
    EXPECT_TRUE(verify_certificate(cert, fib, f).ok);
}

TEST(Obstruction, NonMinimalInputRejected) {
    const Subshift full2(SubshiftSpec::full(2));
    EXPECT_THROW(build_obstruction(full2, SyndeticInput::of(SubsetWindow::interval(0, 20, 20))), precondition_failure);
    const Subshift ternary(SubshiftSpec::substitution(3, {"01", "12", "20"}));
    EXPECT_THROW(build_obstruction(ternary, SyndeticInput::of(SubsetWindow::interval(0, 20, 20))),
                 precondition_failure);
}

TEST(Obstruction, ShortDepthIsInconclusive) {
    const auto fib = fibonacci();
    ObstructionOptions opt;
    opt.depth = 1;
    const auto cert = build_obstruction(fib, SyndeticInput::of(evens(200)), opt);
    EXPECT_EQ(cert.status, CertificateStatus::inconclusive);
    const auto check = verify_certificate(cert, fib, evens(200));
    EXPECT_FALSE(check.ok);
    EXPECT_EQ(check.stage, "refutation");
}

TEST(Obstruction, ExplicitChoiceOfA) {
    const auto tm = thue_morse();
    const auto f = SubsetWindow::interval(0, 30, 30);
    ObstructionOptions opt;
    opt.a = Word::parse("011010", 2);
    const auto cert = build_obstruction(tm, SyndeticInput::of(f), opt);
    EXPECT_EQ(cert.a, *opt.a);
    ASSERT_EQ(cert.status, CertificateStatus::refuted);
    EXPECT_TRUE(verify_certificate(cert, tm, f).ok);
    opt.a = Word::parse("000000", 2);
    EXPECT_THROW(build_obstruction(tm, SyndeticInput::of(f), opt), invalid_argument);
}

TEST(Verify, FlippedBitFailsAtScanStage) {
    const auto tm = thue_morse();
    const auto f = SubsetWindow::interval(0, 40, 40);
    auto cert = build_obstruction(tm, SyndeticInput::of(f));
    auto sym = cert.x.symbols();
    sym[cert.j0.front()] ^= 1;
    cert.x = Word(sym, 2);
    const auto check = verify_certificate(cert, tm, f);
    EXPECT_FALSE(check.ok);
    EXPECT_EQ(check.stage, "x");
}

TEST(Verify, NonRefutingSetFailsAtIndependenceStage) {
    const auto fib = fibonacci();
    const auto f = evens(200);
    auto cert = build_obstruction(fib, SyndeticInput::of(f));
    cert.j0 = {0};
    cert.assignment = {cert.x[0]};
    const auto check = verify_certificate(cert, fib, f);
    EXPECT_FALSE(check.ok);
    EXPECT_EQ(check.stage, "independence");
}

TEST(Verify, TamperedInstanceFailsAtInstanceStage) {
    const auto tm = thue_morse();
    const auto f = SubsetWindow::interval(0, 40, 40);
    auto cert = build_obstruction(tm, SyndeticInput::of(f));
    cert.forbidden[3] = {Word::parse("111111", 2)};
    EXPECT_EQ(verify_certificate(cert, tm, f).stage, "instance");
    EXPECT_EQ(verify_certificate(build_obstruction(tm, SyndeticInput::of(f)), tm,
                                 SubsetWindow::interval(0, 41, 41))
                  .stage,
              "instance");
}

TEST(Serialization, RoundTripAndDeterminism) {
    const auto fib = fibonacci();
    const auto f = evens(200);
    const auto cert = build_obstruction(fib, SyndeticInput::of(f));
    const auto text = to_string(cert);
    EXPECT_EQ(text, to_string(build_obstruction(fib, SyndeticInput::of(f))));
    EXPECT_NE(text.find("[instance]\n"), std::string::npos);
    EXPECT_NE(text.find("\n[a]\n"), std::string::npos);
    EXPECT_NE(text.find("\n[x]\n"), std::string::npos);
    EXPECT_NE(text.find("\n[refutation]\n"), std::string::npos);
    const auto back = parse_certificate(text);
    EXPECT_EQ(to_string(back), text);
    const Subshift x(back.subshift);
    EXPECT_TRUE(verify_certificate(back, x, back.f).ok);
}

TEST(Serialization, ParseErrorsCarryLineNumbers) {
    auto line_of = [](const std::string& text) {
        try {
            parse_certificate(text);
        } catch (const parse_error& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    EXPECT_EQ(line_of("[instance]\n[bogus]\n"), 2u);
    EXPECT_EQ(line_of("junk\n"), 1u);
    EXPECT_EQ(line_of("[instance]\nX.p=2\nX.kind=full\nF=5;0,1\nl=zz\n[a]\n[x]\n[refutation]\nnone\n"), 5u);
    EXPECT_EQ(line_of("[instance]\nX.p=2\n"), 3u);
}
