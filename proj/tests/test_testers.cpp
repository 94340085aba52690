#include <monoamp/testers.hpp>

#include <gtest/gtest.h>

using namespace monoamp;

namespace {

AmplifyConfig config(std::uint64_t k, std::uint64_t w, PadPolicy pad = PadPolicy::never)
{
    AmplifyConfig cfg;
    cfg.k = k;
    cfg.tribe_width = w;
    cfg.pad = pad;
    return cfg;
}

int rejections(const Tester& t, const BoolFn& f, int trials, std::uint64_t seed)
{
    int rejected = 0;
    for (int i = 0; i < trials; ++i) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
        rejected += t.run(f.with_fresh_counter(), rng).verdict == Verdict::reject ? 1 : 0;
    }
    return rejected;
}

} // namespace

TEST(EdgeTester, NeverRejectsMonotone)
{
    const auto t = edge_tester(40);
    for (std::size_t n = 1; n <= 3; ++n)
        enumerate_monotone(n, [&](std::uint64_t bits) {
            EXPECT_EQ(rejections(t, fns::from_bits(n, bits), 20, bits), 0);
        });
}

// Each probe of the single edge of not(x1) rejects; 100 probes all miss never.
TEST(EdgeTester, RejectsAntidictator)
{
    EXPECT_GE(rejections(edge_tester(200), fns::antidictator(1, 0), 1000, 3), 990);
    EXPECT_EQ(rejections(edge_tester(200), fns::constant(4, true), 100, 3), 0);
}

TEST(EdgeTester, BudgetRespected)
{
    EXPECT_THROW(edge_tester(1), Degenerate);
    const auto t = edge_tester(51);
    const auto f = fns::parity(5);
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        const auto before = f.query_count();
        const auto v = t.run(f, rng);
        EXPECT_EQ(v.queries_used, 50U);
        EXPECT_EQ(v.queries_used, f.query_count() - before);
    }
}

TEST(ReduceTester, OneSidedOnMonotoneInputs)
{
    const auto t = reduce_tester(edge_tester(60), config(4, 2));
    EXPECT_TRUE(t.one_sided);
    for (const auto& f : {fns::dictator(2, 0), fns::majority(3), fns::disjunction(1)}) {
        int rejected = 0;
        for (int i = 0; i < 40; ++i) {
            Rng rng = Rng::stream(5, static_cast<std::uint64_t>(i));
            const auto v = t.run(f, rng);
            EXPECT_NE(v.verdict, Verdict::error) << v.message;
            rejected += v.verdict == Verdict::reject ? 1 : 0;
        }
        EXPECT_EQ(rejected, 0);
    }
}

TEST(ReduceTester, QueryAccounting)
{
    const auto inner = edge_tester(30);
    auto cfg = config(5, 2);
    cfg.sample_budget = 40;
    const auto t = reduce_tester(inner, cfg);
    EXPECT_EQ(t.query_budget, 40U + 5U * 30U);
    const auto f = fns::dictator(3, 2);
    for (int i = 0; i < 20; ++i) {
        Rng rng = Rng::stream(6, static_cast<std::uint64_t>(i));
        EXPECT_EQ(t.run(f.with_fresh_counter(), rng).queries_used, 40U + 5U * 30U);
        EXPECT_EQ(t.run(fns::antidictator(3, 0), rng).queries_used, 40U + 5U * 30U);
    }
}

TEST(ReduceTester, FailedAmplificationIsAnErrorNotAReject)
{
    const auto t = reduce_tester(edge_tester(10), config(4, 2));
    Rng rng(1);
    const auto v = t.run(fns::constant(2, true), rng);
    EXPECT_EQ(v.verdict, Verdict::error);
    EXPECT_FALSE(v.message.empty());
    EXPECT_EQ(v.queries_used, 64U);
}

// Both testers reject not(x1) on two variables with constant probability.
// Counts out of 500 are regression values from the first run.
TEST(ReduceTester, RejectsFarInputs)
{
    const auto f = fns::antidictator(2, 0);
    const int direct = rejections(edge_tester(8), f, 500, 11);
    const int reduced = rejections(reduce_tester(edge_tester(8), config(6, 2)), f, 500, 11);
    EXPECT_GT(direct, 250);
    EXPECT_GT(reduced, 50);
    EXPECT_EQ(direct, 462);
    EXPECT_EQ(reduced, 219);
}
