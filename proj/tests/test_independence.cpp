#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "symdyn/independence.hpp"

using namespace symdyn;

namespace {

std::shared_ptr<const Subshift> make(SubshiftSpec s) { return std::make_shared<const Subshift>(std::move(s)); }
std::shared_ptr<const Subshift> full2() { return make(SubshiftSpec::full(2)); }
std::shared_ptr<const Subshift> golden() { return make(SubshiftSpec::sft(2, {"11"})); }
std::shared_ptr<const Subshift> fibonacci() { return make(SubshiftSpec::substitution(2, {"01", "0"})); }

CylinderTuple zero_one(std::shared_ptr<const Subshift> x) {
    return CylinderTuple::of_words(std::move(x), {Word::parse("0", 2), Word::parse("1", 2)});
}

SubsetWindow window(std::vector<std::int64_t> v) {
    const auto h = v.empty() ? 0 : v.back() + 1;
    return SubsetWindow(std::move(v), h);
}

// Literal definition: every nonempty J ⊆ F and every s: J -> targets has a
// word of the language carrying base(A_s(j)) at j. Language tables only.
bool independent_by_definition(const CylinderTuple& t, const std::vector<std::int64_t>& f) {
    if (f.empty()) return true;
    const auto len = static_cast<std::size_t>(f.back()) + t.max_base_length();
    const auto words = t.subshift().language(len, {64, 1u << 22});
    const auto n = f.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::int64_t> j;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1u) j.push_back(f[i]);
        std::size_t combos = 1;
        for (std::size_t i = 0; i < j.size(); ++i) combos *= t.size();
        for (std::size_t c = 0; c < combos; ++c) {
            std::size_t code = c;
            bool realized = false;
            std::vector<std::size_t> s(j.size());
            for (auto& v : s) {
                v = code % t.size();
                code /= t.size();
            }
            for (const auto& w : words) {
                bool ok = true;
                for (std::size_t i = 0; i < j.size() && ok; ++i) {
                    bool hit = false;
                    for (const auto& b : t.targets()[s[i]].bases) {
                        bool eq = true;
                        for (std::size_t q = 0; q < b.size(); ++q) eq = eq && w[static_cast<std::size_t>(j[i]) + q] == b[q];
                        hit = hit || eq;
                    }
                    ok = hit;
                }
                if (ok) {
                    realized = true;
                    break;
                }
            }
            if (!realized) return false;
        }
    }
    return true;
}

// a_k by enumerating every subset of [0, k): F is independent for ([0],[1])
// iff the words of the language project onto all 2^|F| patterns.
std::vector<std::int64_t> profile_by_enumeration(const Subshift& x, std::int64_t horizon) {
    const auto words = x.language(static_cast<std::size_t>(horizon));
    std::vector<std::int64_t> a(static_cast<std::size_t>(horizon), 0);
    for (std::uint32_t mask = 1; mask < (1u << horizon); ++mask) {
        std::set<std::uint32_t> seen;
        for (const auto& w : words) {
            std::uint32_t pat = 0;
            for (std::int64_t i = 0; i < horizon; ++i)
                if (mask >> i & 1u) pat = pat * 2 + w[static_cast<std::size_t>(i)];
            seen.insert(pat);
        }
        const auto size = __builtin_popcount(mask);
        if (seen.size() != (1u << size)) continue;
        const auto top = 32 - __builtin_clz(mask);
        for (auto k = top; k <= horizon; ++k) a[static_cast<std::size_t>(k - 1)] = std::max<std::int64_t>(a[k - 1], size);
    }
    return a;
}

}  // namespace

TEST(CylinderTuple, Guards) {
    EXPECT_THROW(CylinderTuple(golden(), {}), invalid_argument);
    EXPECT_THROW(CylinderTuple(golden(), {Target{}}), invalid_argument);
    EXPECT_THROW(CylinderTuple::of_words(golden(), {Word::parse("11", 2)}), invalid_argument);
}

TEST(IsIndependenceSet, Examples) {
    EXPECT_TRUE(is_independence_set(zero_one(full2()), SubsetWindow::interval(0, 10, 10)).independent);
    const auto r = is_independence_set(zero_one(golden()), window({0, 1}));
    EXPECT_FALSE(r.independent);
    EXPECT_EQ(r.refuting, (std::vector<std::size_t>{2, 2}));
    EXPECT_TRUE(is_independence_set(zero_one(golden()), window({0, 2})).independent);
}

TEST(IsIndependenceSet, RefutationIsUnrealizable) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::int64_t> f;
        for (std::int64_t i = 0; i < 12; ++i)
            if (rng() % 3 == 0) f.push_back(i);
        const auto fw = window(f);
        for (const auto& x : {golden(), fibonacci()}) {
            const auto t = zero_one(x);
            const auto r = is_independence_set(t, fw);
            if (r.independent) continue;
            EXPECT_FALSE(realize_assignment(t, fw, r.refuting).has_value());
        }
    }
}

TEST(IsIndependenceSet, AgreesWithDefinitionOnRandomSfts) {
    std::mt19937_64 rng(21);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Word> forb;
        for (int i = 0; i < 2; ++i) {
            std::vector<Symbol> s(2 + rng() % 2);
            for (auto& c : s) c = static_cast<Symbol>(rng() % 2);
            forb.emplace_back(s, 2);
        }
        std::shared_ptr<const Subshift> x;
        try {
            x = make(SubshiftSpec::sft(2, forb));
        } catch (const invalid_argument&) {
            continue;
        }
        std::vector<Target> targets;
        for (const auto* b : {"0", "1", "01", "10"}) {
            const auto w = Word::parse(b, 2);
            if (x->allows(w)) targets.push_back(Target::of(w));
        }
        if (targets.size() < 2) continue;
        targets.resize(2);
        const CylinderTuple t(x, targets);
        std::vector<std::int64_t> f;
        for (std::int64_t i = 0; i < 8 && f.size() < 5; ++i)
            if (rng() % 2) f.push_back(i);
        EXPECT_EQ(is_independence_set(t, window(f)).independent, independent_by_definition(t, f)) << trial;
        ++checked;
    }
    EXPECT_GT(checked, 20);
}

TEST(IsIndependenceSet, HereditaryAndTranslationInvariant) {
    std::mt19937_64 rng(4);
    const auto t = zero_one(golden());
    const auto evens = window({0, 2, 4, 6, 8, 10, 12});
    ASSERT_TRUE(is_independence_set(t, evens).independent);
    for (int i = 0; i < 30; ++i) {
        std::vector<std::int64_t> sub;
        for (auto v : evens.elements())
            if (rng() % 2) sub.push_back(v);
        EXPECT_TRUE(is_independence_set(t, window(sub)).independent);
    }
    for (int i = 0; i < 30; ++i) {
        std::vector<std::int64_t> f;
        for (std::int64_t v = 0; v < 10; ++v)
            if (rng() % 2) f.push_back(v);
        const auto a = is_independence_set(t, window(f)).independent;
        for (auto& v : f) v += 7;
        EXPECT_EQ(a, is_independence_set(t, window(f)).independent);
    }
}

TEST(IsIndependenceSet, BudgetIsEnforced) {
    SearchLimits tiny;
    tiny.node_budget = 10;
    EXPECT_THROW(is_independence_set(zero_one(full2()), SubsetWindow::interval(0, 12, 12), tiny), size_limit);
}

TEST(MaxIndependence, FullShiftProfile) {
    const auto r = max_independence_within(zero_one(full2()), 14);
    for (std::int64_t k = 1; k <= 14; ++k) EXPECT_EQ(r.a[k - 1], k);
    EXPECT_EQ(r.upper_bound_i, Rational(1));
    EXPECT_TRUE(r.subadditive);
}

TEST(MaxIndependence, GoldenMeanMatchesEnumeration) {
    const auto r = max_independence_within(zero_one(golden()), 14);
    const auto oracle = profile_by_enumeration(*golden(), 14);
    EXPECT_EQ(r.a, oracle);
    for (std::int64_t k = 1; k <= 14; ++k) EXPECT_EQ(r.a[k - 1], (k + 1) / 2);
    EXPECT_EQ(r.upper_bound_i, Rational(1, 2));
    EXPECT_TRUE(is_independence_set(zero_one(golden()), r.witness).independent);
    EXPECT_EQ(static_cast<std::int64_t>(r.witness.size()), r.a.back());
    EXPECT_TRUE(r.subadditive);
    EXPECT_FALSE(r.partial);
}

TEST(MaxIndependence, FibonacciMatchesEnumeration) {
    const auto r = max_independence_within(zero_one(fibonacci()), 12);
    EXPECT_EQ(r.a, profile_by_enumeration(*fibonacci(), 12));
    EXPECT_TRUE(r.subadditive);
    for (std::size_t k = 0; k < r.ratios.size(); ++k) EXPECT_GE(r.ratios[k], r.upper_bound_i);
}

TEST(MaxIndependence, CsvExport) {
    const auto csv = to_csv(max_independence_within(zero_one(golden()), 3));
    EXPECT_EQ(csv, "k,a_k,ratio\n1,1,1/1\n2,1,1/2\n3,2,2/3\n");
}

TEST(DensityWitness, Examples) {
    const auto full = density_witness(zero_one(full2()), Rational(1), 5, 20);
    ASSERT_TRUE(full.set);
    EXPECT_EQ(full.set->size(), 20u);

    const auto gm = density_witness(zero_one(golden()), Rational(1, 2), 10, 30);
    ASSERT_TRUE(gm.set);
    std::vector<std::int64_t> evens;
    for (std::int64_t v = 0; v < 30; v += 2) evens.push_back(v);
    EXPECT_EQ(gm.set->elements(), evens);

    const auto deg = density_witness(zero_one(golden()), Rational(1, 2), 1, 10);
    ASSERT_TRUE(deg.set);
    EXPECT_FALSE(deg.set->empty());
}

TEST(IpBuilder, FullShift) {
    const auto r = ip_independence_builder(zero_one(full2()), 2, 20);
    EXPECT_EQ(r.generators, (std::vector<std::int64_t>{1, 2}));
    for (std::int64_t v = 0; v < 4; ++v) EXPECT_TRUE(r.verified_sums.contains(v));
}

TEST(IpBuilder, GoldenMeanEverySubsetSumSetIsIndependent) {
    const auto t = zero_one(golden());
    const auto r = ip_independence_builder(t, 4, 20);
    ASSERT_TRUE(r.complete());
    ASSERT_EQ(r.generators.size(), 4u);
    for (std::uint32_t mask = 1; mask < 16; ++mask) {
        std::vector<std::int64_t> g;
        for (std::size_t i = 0; i < 4; ++i)
            if (mask >> i & 1u) g.push_back(r.generators[i]);
        const auto sums = ip_generate(g);
        EXPECT_TRUE(is_independence_set(t, sums).independent);
        EXPECT_TRUE(independent_by_definition(t, {sums.elements().begin(), sums.elements().begin() +
                                                      std::min<std::ptrdiff_t>(4, static_cast<std::ptrdiff_t>(sums.size()))}));
    }
}

TEST(IpBuilder, SingleTargetAndGuards) {
    const auto one = CylinderTuple::of_words(full2(), {Word::parse("1", 2)});
    EXPECT_TRUE(ip_independence_builder(one, 3, 5).complete());
    EXPECT_THROW(ip_independence_builder(zero_one(fibonacci()), 2, 5), precondition_failure);
    EXPECT_THROW(ip_independence_builder(zero_one(make(SubshiftSpec::sft(2, {"00", "11"}))), 2, 5),
                 precondition_failure);
    const auto tight = ip_independence_builder(zero_one(golden()), 2, 1);
    EXPECT_FALSE(tight.complete());
    EXPECT_EQ(*tight.exhausted_at, 1u);
}

TEST(SequenceEntropy, FullShiftUpperIsLogTwo) {
    const std::vector<Word> cyl{Word::parse("0", 2), Word::parse("1", 2)};
    const auto b = sequence_entropy_bracket(full2(), cyl, SubsetWindow::interval(0, 12, 12), 12);
    for (const auto& row : b.rows) EXPECT_EQ(row.patterns, std::uint64_t{1} << row.m);
    EXPECT_DOUBLE_EQ(b.upper, std::log(2.0));
    EXPECT_GE(b.lower, 0.5 * std::log(2.0) - 0.006);
    EXPECT_LE(b.lower, b.upper + 1e-12);
}

TEST(SequenceEntropy, FullThreeWithThreeCylinders) {
    const std::vector<Word> cyl{Word::parse("0", 3), Word::parse("1", 3), Word::parse("2", 3)};
    const auto b = sequence_entropy_bracket(make(SubshiftSpec::full(3)), cyl, SubsetWindow::interval(0, 6, 6), 6);
    for (const auto& row : b.rows) EXPECT_NEAR(row.upper, std::log(3.0), 1e-12);
}

TEST(SequenceEntropy, DegenerateAndGolden) {
    const auto one = sequence_entropy_bracket(full2(), {Word::parse("0", 2)}, SubsetWindow::interval(0, 5, 5), 5);
    EXPECT_EQ(one.lower, 0.0);
    EXPECT_EQ(one.upper, 0.0);

    const auto gm = sequence_entropy_bracket(golden(), {Word::parse("0", 2), Word::parse("1", 2)},
                                             window({0, 2, 4, 6, 8, 10}), 6);
    EXPECT_GE(gm.lower, 0.5 * std::log(2.0));
    EXPECT_LE(gm.lower, gm.upper + 1e-12);
    EXPECT_THROW(sequence_entropy_bracket(full2(), {Word::parse("0", 2), Word::parse("0", 2)}, window({0}), 1),
                 invalid_argument);
}

TEST(SingleSet, ArithmeticExamples) {
    const auto f = FamilySpec::arithmetic(1, 0);
    const auto a = single_set_independence(full2(), Word::parse("0", 2), f, 12);
    ASSERT_TRUE(a.step);
    EXPECT_EQ(*a.step, 1);
    const auto g = single_set_independence(golden(), Word::parse("1", 2), f, 12);
    ASSERT_TRUE(g.step);
    EXPECT_EQ(*g.step, 2);
    const auto fib = single_set_independence(fibonacci(), Word::parse("1", 2), f, 12);
    EXPECT_FALSE(fib.witness);
    EXPECT_THROW(single_set_independence(full2(), Word::parse("1", 2), FamilySpec::cofinite(3), 12),
                 unsupported_operation);
}

TEST(SingleSet, FibonacciOracle) {
    // no k <= 12 puts a 1 at all of 0, k, ..., 11k in any allowed word
    const auto fib = fibonacci();
    for (std::int64_t k = 1; k <= 12; ++k) {
        bool any = false;
        for (const auto& w : fib->language(static_cast<std::size_t>(11 * k + 1), {200, 1u << 22})) {
            bool all = true;
            for (std::int64_t j = 0; j < 12 && all; ++j) all = w[static_cast<std::size_t>(j * k)] == 1;
            any = any || all;
        }
        EXPECT_FALSE(any) << k;
    }
}

TEST(SingleSet, IpAndExplicit) {
    const auto ip = single_set_independence(golden(), Word::parse("1", 2), FamilySpec::ip({2, 4}), 50);
    ASSERT_TRUE(ip.witness);
    EXPECT_EQ(ip.witness->elements(), (std::vector<std::int64_t>{2, 4, 6}));
    const auto ex = single_set_independence(golden(), Word::parse("1", 2), FamilySpec::explicit_set(window({0, 1})), 5);
    EXPECT_FALSE(ex.witness);
}
