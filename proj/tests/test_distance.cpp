#include <monoamp/distance.hpp>
#include <monoamp/json_io.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace monoamp;

namespace {

std::set<std::pair<std::string, std::string>> edge_strings(const ViolationGraph& g)
{
    std::set<std::pair<std::string, std::string>> out;
    for (auto [a, b] : g.edges)
        out.emplace(index_to_string(g.arity, a), index_to_string(g.arity, b));
    return out;
}

// Largest set of pairwise disjoint edges, by trying every subset (tiny graphs only).
std::size_t max_matching_by_subsets(const ViolationGraph& g)
{
    const std::size_t m = g.edges.size();
    std::size_t best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::set<Vertex> seen;
        bool ok = true;
        for (std::size_t e = 0; e < m && ok; ++e)
            if ((mask >> e) & 1U)
                ok = seen.insert(g.edges[e].first).second && seen.insert(g.edges[e].second).second;
        if (ok)
            best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(mask)));
    }
    return best;
}

BoolFn random_function(std::size_t n, Rng& rng)
{
    return BoolFn::from_table(TruthTable::from_predicate(n, [&](std::uint64_t) { return rng.bernoulli(0.5); }));
}

} // namespace

TEST(ViolationGraph, Examples)
{
    EXPECT_TRUE(build_violation_graph(fns::majority(3)).edges.empty());

    const auto neg = build_violation_graph(fns::antidictator(1, 0));
    EXPECT_EQ(edge_strings(neg), (std::set<std::pair<std::string, std::string>>{{"0", "1"}}));

    const auto par = build_violation_graph(fns::parity(2));
    EXPECT_EQ(edge_strings(par), (std::set<std::pair<std::string, std::string>>{{"01", "11"}, {"10", "11"}}));
    EXPECT_EQ(par.left.size(), 2U);
    EXPECT_EQ(par.right.size(), 2U);
}

TEST(ViolationGraph, EdgesAreExactlyTheViolatingPairs)
{
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = random_function(1 + rng.below(6), rng);
        const auto g = build_violation_graph(f);
        std::set<std::pair<Vertex, Vertex>> expected;
        const auto& t = f.table();
        for (std::uint64_t a = 0; a < t.size(); ++a)
            for (std::uint64_t b = 0; b < t.size(); ++b)
                if (a != b && index_leq(a, b) && t.get(a) && !t.get(b))
                    expected.emplace(static_cast<Vertex>(a), static_cast<Vertex>(b));
        const std::set<std::pair<Vertex, Vertex>> got(g.edges.begin(), g.edges.end());
        EXPECT_EQ(got.size(), g.edges.size());
        EXPECT_EQ(got, expected);
    }
}

TEST(ViolationGraph, RefusesAboveCap)
{
    const auto f = fns::parity(15);
    try {
        build_violation_graph(f);
        FAIL() << "expected refusal";
    } catch (const Unsupported& e) {
        EXPECT_NE(std::string(e.what()).find("cap 14"), std::string::npos);
    }
    EXPECT_NO_THROW(build_violation_graph(fns::parity(6), 6));
    EXPECT_THROW(build_violation_graph(fns::parity(6), 5), Unsupported);
}

TEST(MaxMatching, Examples)
{
    const auto empty = max_matching(build_violation_graph(fns::conjunction(3)));
    EXPECT_TRUE(empty.matching.empty());
    EXPECT_TRUE(empty.cover.empty());

    const auto g1 = build_violation_graph(fns::antidictator(1, 0));
    const auto single = max_matching(g1);
    EXPECT_EQ(single.matching.size(), 1U);
    EXPECT_EQ(single.cover.size(), 1U);
    EXPECT_EQ(check_certificate(g1, single), "");

    const auto gp = build_violation_graph(fns::parity(2));
    EXPECT_EQ(max_matching_by_subsets(gp), 1U);
    const auto par = max_matching(gp);
    EXPECT_EQ(par.matching.size(), 1U);
    EXPECT_EQ(check_certificate(gp, par), "");
}

TEST(MaxMatching, AgreesWithSubsetEnumerationOnSmallGraphs)
{
    Rng rng(31);
    int checked = 0;
    while (checked < 60) {
        const auto f = random_function(3, rng);
        const auto g = build_violation_graph(f);
        if (g.edges.size() > 16)
            continue;
        const auto cert = max_matching(g);
        EXPECT_EQ(cert.matching.size(), max_matching_by_subsets(g));
        EXPECT_EQ(check_certificate(g, cert), "");
        ++checked;
    }
}

TEST(Certificate, CheckerCatchesBrokenCertificates)
{
    const auto g = build_violation_graph(fns::parity(2));
    auto cert = max_matching(g);
    auto no_cover = cert;
    no_cover.cover.clear();
    EXPECT_NE(check_certificate(g, no_cover), "");
    auto bogus = cert;
    bogus.matching.push_back({0, 3});
    EXPECT_NE(check_certificate(g, bogus), "");
    auto doubled = cert;
    doubled.matching.push_back(cert.matching.front());
    EXPECT_NE(check_certificate(g, doubled), "");
}

TEST(EpsilonExact, Examples)
{
    EXPECT_EQ(epsilon_exact(fns::majority(3)).matching_size, 0U);
    const auto neg = epsilon_exact(fns::antidictator(1, 0));
    EXPECT_EQ(neg.matching_size, 1U);
    EXPECT_EQ(neg.cube_size, 2U);
    EXPECT_EQ(neg.epsilon(), 0.5);
    EXPECT_EQ(epsilon_exact(fns::parity(2)).epsilon(), 0.25);
    EXPECT_EQ(epsilon_exact(fns::parity(2)).method, DistanceMethod::exact_matching);
}

TEST(EpsilonBruteForce, MonotoneCountsAreDedekindNumbers)
{
    const std::uint64_t expected[] = {2, 3, 6, 20, 168, 7581};
    for (std::size_t n = 0; n <= 5; ++n) {
        std::uint64_t count = 0;
        enumerate_monotone(n, [&](std::uint64_t bits) {
            ++count;
            if (n >= 1 && n <= 3) {
                EXPECT_TRUE(is_monotone(fns::from_bits(n, bits)).monotone);
            }
        });
        EXPECT_EQ(count, expected[n]) << "n=" << n;
    }
    EXPECT_THROW(enumerate_monotone(6, [](std::uint64_t) {}), Unsupported);
}

TEST(EpsilonBruteForce, ExamplesAndCap)
{
    EXPECT_EQ(epsilon_bruteforce(fns::constant(4, true)).matching_size, 0U);
    EXPECT_EQ(epsilon_bruteforce(fns::constant(4, false)).matching_size, 0U);
    EXPECT_EQ(epsilon_bruteforce(fns::antidictator(2, 0)).matching_size,
              epsilon_exact(fns::antidictator(2, 0)).matching_size);
    EXPECT_EQ(epsilon_bruteforce(fns::parity(2)).method, DistanceMethod::brute_force);
    EXPECT_THROW(epsilon_bruteforce(fns::parity(6)), Unsupported);
}

TEST(EpsilonExact, MatchesBruteForceOnAllArity3Functions)
{
    for (std::uint64_t b = 0; b < 256; ++b) {
        const auto f = fns::from_bits(3, b);
        const auto exact = epsilon_exact(f);
        EXPECT_EQ(exact.matching_size, epsilon_bruteforce(f).matching_size) << "bits=" << b;
        EXPECT_EQ(check_certificate(build_violation_graph(f), *exact.certificate), "");
    }
}

TEST(EpsilonExact, MatchesBruteForceOnRandomArity4And5)
{
    Rng rng(404);
    for (std::size_t n : {4U, 5U})
        for (int trial = 0; trial < 150; ++trial) {
            const auto f = random_function(n, rng);
            EXPECT_EQ(epsilon_exact(f).matching_size, epsilon_bruteforce(f).matching_size);
        }
}

TEST(EpsilonExact, ZeroIffMonotoneIffNoEdges)
{
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << (std::uint64_t{1} << n)); ++b) {
            const auto f = fns::from_bits(n, b);
            const bool mono = is_monotone(f).monotone;
            EXPECT_EQ(epsilon_exact(f).matching_size == 0, mono);
            EXPECT_EQ(build_violation_graph(f).edges.empty(), mono);
        }
}

TEST(EpsilonExact, NeverAboveOneHalf)
{
    Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const auto f = random_function(4 + rng.below(7), rng);
        const auto r = epsilon_exact(f);
        EXPECT_LE(2 * r.matching_size, r.cube_size);
        EXPECT_EQ(check_certificate(build_violation_graph(f), *r.certificate), "");
    }
}

TEST(CertificateJson, BitstringPoints)
{
    const auto r = epsilon_exact(fns::antidictator(1, 0));
    const auto j = certificate_to_json(1, *r.certificate);
    EXPECT_EQ(j.dump(), R"({"matching":[["0","1"]],"cover":["0"]})");
}
