#include <gtest/gtest.h>

#include <set>

#include "symdyn/window_avoidance.hpp"

using namespace symdyn;

namespace {

// Enumerates every word of length n+m and keeps the last windows of those
// avoiding A_0..A_n.
std::set<std::uint64_t> brute_valid_past(const AvoidanceInstance& inst, std::size_t n) {
    const int p = inst.alphabet();
    const std::size_t m = inst.window();
    const std::size_t len = n + m;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= static_cast<std::uint64_t>(p);
    std::set<std::uint64_t> out;
    std::vector<std::vector<std::uint64_t>> forbidden;
    for (std::size_t j = 0; j <= n; ++j) forbidden.push_back(inst.forbidden_codes(j));
    const std::uint64_t pm = inst.word_count();
    for (std::uint64_t code = 0; code < total; ++code) {
        // window j is the base-p digit block starting j symbols from the left
        std::uint64_t tail = code;
        std::vector<std::uint64_t> windows(n + 1);
        for (std::size_t j = n + 1; j-- > 0;) {
            windows[j] = tail % pm;
            tail /= static_cast<std::uint64_t>(p);
        }
        bool ok = true;
        for (std::size_t j = 0; j <= n && ok; ++j)
            ok = !std::binary_search(forbidden[j].begin(), forbidden[j].end(), windows[j]);
        if (ok) out.insert(windows[n]);
    }
    return out;
}

// Lex-least word of length L avoiding the instance, by brute force.
std::optional<Word> brute_lex_least(const AvoidanceInstance& inst, std::size_t len) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= static_cast<std::uint64_t>(inst.alphabet());
    for (std::uint64_t code = 0; code < total; ++code) {
        auto w = Word::from_code(code, len, inst.alphabet());
        if (!find_violation(inst, w)) return w;
    }
    return std::nullopt;
}

AvoidanceInstance constant_instance(std::size_t n_count, const char* word, std::size_t l = 1) {
    std::map<std::size_t, std::vector<Word>> sets;
    const std::string_view w(word);
    for (std::size_t n = 0; n < n_count; ++n) sets[n] = {Word::parse(w, 2)};
    return AvoidanceInstance::explicit_sets(2, w.size(), l, n_count, sets);
}

} // namespace

TEST(Instance, SeededSetsAreDeterministicAndBounded) {
    const auto a = AvoidanceInstance::seeded(2, 6, 3, 42, 100);
    const auto b = AvoidanceInstance::seeded(2, 6, 3, 42, 100);
    for (std::size_t n = 0; n < 100; ++n) {
        EXPECT_EQ(a.forbidden_codes(n), b.forbidden_codes(n));
        EXPECT_LE(a.forbidden_codes(n).size(), 3u);
        for (auto c : a.forbidden_codes(n)) EXPECT_LT(c, 64u);
    }
    EXPECT_NE(a.forbidden_codes(0), AvoidanceInstance::seeded(2, 6, 3, 43, 100).forbidden_codes(0));
}

TEST(Instance, ParseRoundTrip) {
    const auto inst = parse_avoidance_instance("# sample\n2 3 2 5\n0: 000,111\n3: 010\n");
    EXPECT_EQ(inst.alphabet(), 2);
    EXPECT_EQ(inst.window(), 3u);
    EXPECT_EQ(inst.forbidden_codes(0), (std::vector<std::uint64_t>{0, 7}));
    EXPECT_TRUE(inst.forbidden_codes(1).empty());
    EXPECT_EQ(to_string(inst), "2 3 2 5\n0: 000,111\n3: 010\n");
    EXPECT_EQ(to_string(parse_avoidance_instance(to_string(inst))), to_string(inst));

    const auto seeded = parse_avoidance_instance("2 6 1 10\nseed=7\n");
    EXPECT_EQ(seeded.seed(), std::optional<std::uint64_t>(7));
    EXPECT_EQ(to_string(seeded), "2 6 1 10\nseed=7\n");
}

TEST(Instance, ParseErrorsCarryLineNumbers) {
    auto line_of = [](const char* text) {
        try {
            parse_avoidance_instance(text);
        } catch (const parse_error& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    EXPECT_EQ(line_of("2 3 1\n"), 1u);
    EXPECT_EQ(line_of("2 3 1 4\n0: 00\n"), 2u);
    EXPECT_EQ(line_of("2 3 1 4\n0: 000\n0: 001\n"), 3u); // duplicate position
    EXPECT_EQ(line_of("2 3 1 4\n1 000\n"), 2u);
    EXPECT_EQ(line_of(""), 1u);
    EXPECT_EQ(line_of("2 3 1 4\n\n0: 000,001\n"), 3u); // |A_0| > l
    EXPECT_EQ(line_of("2 3 1 4\n5: 000\n"), 2u);      // position >= N
}

TEST(Solve, NoConstraintsGivesZeros) {
    const auto inst = AvoidanceInstance::seeded(2, 6, 0, 1, 0);
    const auto r = solve_prefix(inst, 300);
    ASSERT_TRUE(r.solved());
    EXPECT_EQ(*r.x, Word::repeat(0, 300, 2));
}

TEST(Solve, AvoidingSixZerosIsPeriodic) {
    const auto inst = constant_instance(400, "000000");
    const auto r = solve_prefix(inst, 400);
    ASSERT_TRUE(r.solved());
    std::string expect;
    while (expect.size() < 400) expect += "000001";
    expect.resize(400);
    EXPECT_EQ(to_string(*r.x), expect);
    EXPECT_FALSE(r.x->contains_factor(Word::repeat(0, 6, 2)));
}

TEST(Solve, HundredSeededInstancesAtThreshold) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto inst = AvoidanceInstance::seeded(2, 6, 1, seed, 5000);
        const auto r = solve_prefix(inst, 5000);
        ASSERT_TRUE(r.solved()) << "seed " << seed << ": " << r.verdict();
        EXPECT_EQ(r.x->size(), 5000u);
        EXPECT_FALSE(find_violation(inst, *r.x));
    }
}

TEST(Solve, Deterministic) {
    const auto inst = AvoidanceInstance::seeded(3, 4, 2, 99, 1000);
    const auto a = solve_prefix(inst, 1000);
    const auto b = solve_prefix(inst, 1000);
    ASSERT_TRUE(a.solved());
    EXPECT_EQ(*a.x, *b.x);
}

TEST(Solve, FullLookaheadMatchesBruteForceLexLeast) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        for (std::size_t m = 2; m <= 4; ++m) {
            const auto inst = AvoidanceInstance::seeded(2, m, 2, seed, 12);
            const auto r = solve_prefix(inst, 12, 12);
            const auto oracle = brute_lex_least(inst, 12);
            ASSERT_EQ(r.solved(), oracle.has_value()) << "seed " << seed << " m " << m;
            if (oracle) {
                EXPECT_EQ(*r.x, *oracle);
            }
        }
    }
}

TEST(Solve, DeadEndBelowThresholdIsReported) {
    std::map<std::size_t, std::vector<Word>> sets{
        {0, {Word::parse("00", 2), Word::parse("10", 2)}},
        {1, {Word::parse("10", 2), Word::parse("11", 2)}},
    };
    const auto inst = AvoidanceInstance::explicit_sets(2, 2, 2, 10, sets);
    const auto r = solve_prefix(inst, 10);
    ASSERT_FALSE(r.solved());
    EXPECT_TRUE(r.table_dead_end);
    EXPECT_EQ(r.failed_at, 1u);
    EXPECT_EQ(r.verdict(), "exhausted at position 1 (no valid prefix)");
}

TEST(Solve, ExplicitInstanceMustCoverLength) {
    const auto inst = constant_instance(10, "000000");
    EXPECT_THROW(solve_prefix(inst, 100), invalid_argument);
}

TEST(Bookkeeping, SingleForbiddenWordAtStart) {
    const auto inst = AvoidanceInstance::explicit_sets(2, 4, 1, 8, {{0, {Word::parse("0110", 2)}}});
    const auto bk = bookkeeping(inst, 8);
    EXPECT_EQ(bk.blocked[0].count(), 1u);
    EXPECT_TRUE(bk.blocked[0].test(Word::parse("0110", 2).code()));
    EXPECT_TRUE(bk.closed[0].none());
    for (std::size_t n = 1; n < 8; ++n) EXPECT_TRUE(bk.blocked[n].none());
    const auto rep = verify_bounds(bk, inst);
    EXPECT_EQ(rep.rows.size(), 8u);
    EXPECT_LE(2 * rep.rows[0].c, 1u); // |C_0| <= l / p
}

TEST(Bookkeeping, MatchesBruteForceOracle) {
    std::size_t compared = 0;
    std::vector<AvoidanceInstance> instances;
    {
        std::map<std::size_t, std::vector<Word>> alt;
        for (std::size_t n = 0; n < 13; ++n) alt[n] = {Word::parse("000", 2), Word::parse("111", 2)};
        instances.push_back(AvoidanceInstance::explicit_sets(2, 3, 2, 13, alt));
    }
    for (std::size_t m = 1; m <= 4; ++m)
        for (std::size_t l = 1; l <= 3; ++l)
            for (std::uint64_t seed = 0; seed < 4; ++seed)
                instances.push_back(AvoidanceInstance::seeded(2, m, l, seed * 31 + m * 7 + l, 13));
    for (const auto& inst : instances) {
        const auto bk = bookkeeping(inst, 13);
        for (std::size_t n = 0; n <= 12; ++n) {
            const auto valid = brute_valid_past(inst, n);
            for (std::uint64_t w = 0; w < bk.blocked[n].size(); ++w) {
                ASSERT_EQ(bk.blocked[n].test(w), valid.count(w) == 0) << to_string(inst) << "n=" << n << " w=" << w;
                ++compared;
            }
        }
    }
    EXPECT_GT(compared, 0u);
}

TEST(Bookkeeping, DecompositionOfSmallExample) {
    // B_0 = {000, 100, 001, 101} gives C_0 = {00, 01} = 0 Lambda, so D_0 = {0}.
    const auto inst = AvoidanceInstance::explicit_sets(
        2, 3, 4, 1,
        {{0, {Word::parse("000", 2), Word::parse("100", 2), Word::parse("001", 2), Word::parse("101", 2)}}});
    const auto bk = bookkeeping(inst, 1);
    EXPECT_EQ(bk.closed[0].count(), 2u);
    EXPECT_TRUE(bk.decomposition[0][0].empty());
    EXPECT_EQ(bk.decomposition[0][1], (std::vector<std::uint64_t>{0}));
    EXPECT_TRUE(bk.decomposition[0][2].empty());
}

TEST(Bookkeeping, SaturationBelowThreshold) {
    // Search adversarial A_0, A_1 with m = 2, l = 2 until some B_n is everything.
    bool saturated = false;
    for (std::uint64_t a0 = 0; a0 < 16 && !saturated; ++a0)
        for (std::uint64_t a1 = 0; a1 < 16 && !saturated; ++a1) {
            if (__builtin_popcountll(a0) > 2 || __builtin_popcountll(a1) > 2) continue;
            std::map<std::size_t, std::vector<Word>> sets;
            for (std::uint64_t w = 0; w < 4; ++w) {
                if (a0 >> w & 1) sets[0].push_back(Word::from_code(w, 2, 2));
                if (a1 >> w & 1) sets[1].push_back(Word::from_code(w, 2, 2));
            }
            const auto inst = AvoidanceInstance::explicit_sets(2, 2, 2, 2, sets);
            const auto bk = bookkeeping(inst, 2);
            if (bk.blocked[1].all()) {
                saturated = true;
                EXPECT_NO_THROW(verify_bounds(bk, inst));
                EXPECT_FALSE(solve_prefix(inst, 3).solved());
            }
        }
    EXPECT_TRUE(saturated);
}

TEST(Bounds, HoldOnSeededInstances) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto inst = AvoidanceInstance::seeded(2, 6, 1, seed, 500);
        const auto rep = verify_bounds(bookkeeping(inst, 500), inst);
        ASSERT_EQ(rep.rows.size(), 500u);
        for (const auto& row : rep.rows) EXPECT_LE(2 * row.c, row.n + 1);
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = AvoidanceInstance::seeded(2, 10, 2, seed, 300);
        EXPECT_NO_THROW(verify_bounds(bookkeeping(inst, 300), inst));
        const auto wide = AvoidanceInstance::seeded(3, 4, 4, seed, 200);
        EXPECT_NO_THROW(verify_bounds(bookkeeping(wide, 200), wide));
    }
}

TEST(Bounds, DetectTamperedBookkeeping) {
    const auto inst = AvoidanceInstance::seeded(2, 4, 2, 5, 50);
    auto bk = bookkeeping(inst, 50);
    bk.blocked[10].flip(3);
    EXPECT_THROW(verify_bounds(bk, inst), invariant_failure);
}

TEST(Bounds, CsvHasOneRowPerPosition) {
    const auto inst = AvoidanceInstance::seeded(2, 3, 1, 3, 4);
    const auto csv = verify_bounds(bookkeeping(inst, 4), inst).to_csv();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,B,C,D0,D1,D2");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(Bookkeeping, BudgetIsEnforced) {
    const auto inst = AvoidanceInstance::seeded(2, 23, 1, 0, 10);
    EXPECT_THROW(bookkeeping(inst, 10), size_limit);
    EXPECT_THROW(solve_prefix(inst, 100), size_limit);
}

TEST(Explorer, ThresholdRowAlwaysSolves) {
    const auto t = minimal_m_explorer(2, 1, 20, 11);
    ASSERT_EQ(t.rows.size(), 6u);
    for (const auto& row : t.rows) EXPECT_EQ(row.rate(), 1.0) << "m = " << row.m;
    EXPECT_EQ(t.to_csv(), minimal_m_explorer(2, 1, 20, 11).to_csv());

    const auto t2 = minimal_m_explorer(2, 2, 10, 3);
    ASSERT_EQ(t2.rows.size(), 10u);
    EXPECT_EQ(t2.rows.back().rate(), 1.0);
    EXPECT_LT(t2.rows.front().rate(), 1.0); // m = 1 with two forbidden symbols blocks everything
    EXPECT_FALSE(t2.rows.front().failures.empty());
}

TEST(Explorer, NoConstraintsAlwaysSolves) {
    const auto t = minimal_m_explorer(3, 0, 5, 1);
    ASSERT_EQ(t.rows.size(), 2u);
    for (const auto& row : t.rows) EXPECT_EQ(row.rate(), 1.0);
    EXPECT_EQ(t.to_csv(), "m,trials,solved,rate,first_failures\n1,5,5,5/5,-\n2,5,5,5/5,-\n");
}
