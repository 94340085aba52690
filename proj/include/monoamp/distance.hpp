#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "boolfn.hpp"
#include "errors.hpp"

namespace monoamp {

inline constexpr std::size_t kDefaultExactDistanceCap = 14;
inline constexpr std::size_t kBruteForceArityCap = 5;

using Vertex = std::uint32_t; // point index in the n-cube

/// Bipartite graph of violating pairs: left = f^{-1}(1), right = f^{-1}(0),
/// edge (a, b) whenever a < b coordinatewise with f(a) = 1, f(b) = 0.
struct ViolationGraph {
    std::size_t arity = 0;
    std::vector<Vertex> left;
    std::vector<Vertex> right;
    std::vector<std::pair<Vertex, Vertex>> edges; // grouped by left endpoint, in `left` order
    std::vector<std::size_t> offsets;             // edges of left[i] are [offsets[i], offsets[i+1])
};

struct MatchingCertificate {
    std::vector<std::pair<Vertex, Vertex>> matching; // (left, right)
    std::vector<Vertex> cover;
};

/// Empty string when `cert` is a valid König certificate for `g`:
/// matching edges belong to g and are vertex-disjoint, the cover meets every
/// edge, and both have the same size. Otherwise the first problem found.
inline std::string check_certificate(const ViolationGraph& g, const MatchingCertificate& cert)
{
    const std::size_t cube = std::size_t{1} << g.arity;
    std::vector<char> used(cube, 0);
    std::vector<char> in_cover(cube, 0);
    for (auto [a, b] : cert.matching) {
        if (a >= cube || b >= cube)
            return "matching vertex outside the cube";
        if (used[a] || used[b])
            return "matching edges share a vertex";
        used[a] = used[b] = 1;
    }
    {
        std::vector<std::pair<Vertex, Vertex>> sorted = g.edges;
        std::sort(sorted.begin(), sorted.end());
        for (const auto& e : cert.matching)
            if (!std::binary_search(sorted.begin(), sorted.end(), e))
                return "matching edge is not a violating pair";
    }
    for (Vertex v : cert.cover) {
        if (v >= cube)
            return "cover vertex outside the cube";
        if (in_cover[v])
            return "cover lists a vertex twice";
        in_cover[v] = 1;
    }
    for (auto [a, b] : g.edges)
        if (!in_cover[a] && !in_cover[b])
            return "cover misses an edge";
    if (cert.matching.size() != cert.cover.size())
        return "matching size " + std::to_string(cert.matching.size()) + " differs from cover size "
               + std::to_string(cert.cover.size());
    return {};
}

inline ViolationGraph build_violation_graph(const BoolFn& f, std::size_t cap = kDefaultExactDistanceCap)
{
    const TruthTable& t = f.table();
    const std::size_t n = t.arity();
    if (n > cap)
        throw Unsupported("arity " + std::to_string(n) + " exceeds exact-distance cap " + std::to_string(cap));

    ViolationGraph g;
    g.arity = n;
    const std::uint64_t full = t.size() - 1;
    for (std::uint64_t x = 0; x < t.size(); ++x)
        (t.get(x) ? g.left : g.right).push_back(static_cast<Vertex>(x));

    g.offsets.reserve(g.left.size() + 1);
    g.offsets.push_back(0);
    for (Vertex a : g.left) {
        // Strict supersets of a's support.
        const std::uint64_t free = full & ~static_cast<std::uint64_t>(a);
        for (std::uint64_t s = free; s != 0; s = (s - 1) & free) {
            const std::uint64_t b = a | s;
            if (!t.get(b))
                g.edges.emplace_back(a, static_cast<Vertex>(b));
        }
        g.offsets.push_back(g.edges.size());
    }
    return g;
}

/// Maximum matching by Hopcroft-Karp, with the König vertex cover read off
/// the alternating-reachability set of the final matching.
inline MatchingCertificate max_matching(const ViolationGraph& g)
{
    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    const std::size_t cube = std::size_t{1} << g.arity;
    const std::size_t nl = g.left.size();

    std::vector<std::uint32_t> right_id(cube, kNone);
    for (std::size_t j = 0; j < g.right.size(); ++j)
        right_id[g.right[j]] = static_cast<std::uint32_t>(j);

    std::vector<std::uint32_t> adj(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        adj[e] = right_id[g.edges[e].second];

    std::vector<std::uint32_t> match_l(nl, kNone), match_r(g.right.size(), kNone);
    std::vector<std::uint32_t> dist(nl);
    std::vector<std::size_t> it(nl);

    auto bfs = [&] {
        std::queue<std::uint32_t> q;
        bool found = false;
        for (std::uint32_t u = 0; u < nl; ++u) {
            if (match_l[u] == kNone) {
                dist[u] = 0;
                q.push(u);
            } else {
                dist[u] = kNone;
            }
        }
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (std::size_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
                const auto w = match_r[adj[e]];
                if (w == kNone)
                    found = true;
                else if (dist[w] == kNone) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    };

    // Iterative DFS along the layered graph.
    auto augment = [&](std::uint32_t root) {
        std::vector<std::uint32_t> stack{root};
        while (!stack.empty()) {
            const auto u = stack.back();
            bool advanced = false;
            for (; it[u] < g.offsets[u + 1]; ++it[u]) {
                const auto v = adj[it[u]];
                const auto w = match_r[v];
                if (w == kNone) {
                    // Flip the path root .. u, v.
                    for (std::size_t s = stack.size(); s-- > 0;) {
                        const auto lu = stack[s];
                        const auto rv = adj[it[lu]];
                        match_l[lu] = rv;
                        match_r[rv] = lu;
                    }
                    return true;
                }
                if (dist[w] == dist[u] + 1) {
                    stack.push_back(w);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                dist[u] = kNone;
                stack.pop_back();
                if (!stack.empty())
                    ++it[stack.back()];
            }
        }
        return false;
    };

    while (bfs()) {
        for (std::uint32_t u = 0; u < nl; ++u)
            it[u] = g.offsets[u];
        for (std::uint32_t u = 0; u < nl; ++u)
            if (match_l[u] == kNone)
                augment(u);
    }

    // König: Z = vertices reachable from free left vertices by alternating
    // paths; cover = (L \ Z) u (R n Z).
    std::vector<char> zl(nl, 0), zr(g.right.size(), 0);
    std::queue<std::uint32_t> q;
    for (std::uint32_t u = 0; u < nl; ++u)
        if (match_l[u] == kNone) {
            zl[u] = 1;
            q.push(u);
        }
    while (!q.empty()) {
        const auto u = q.front();
        q.pop();
        for (std::size_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
            const auto v = adj[e];
            if (zr[v])
                continue;
            zr[v] = 1;
            const auto w = match_r[v];
            if (w != kNone && !zl[w]) {
                zl[w] = 1;
                q.push(w);
            }
        }
    }

    MatchingCertificate cert;
    for (std::uint32_t u = 0; u < nl; ++u) {
        if (match_l[u] != kNone)
            cert.matching.emplace_back(g.left[u], g.right[match_l[u]]);
        if (!zl[u])
            cert.cover.push_back(g.left[u]);
    }
    for (std::uint32_t v = 0; v < g.right.size(); ++v)
        if (zr[v])
            cert.cover.push_back(g.right[v]);
    return cert;
}

enum class DistanceMethod { exact_matching, brute_force, sampled_lower_bound };

inline const char* to_string(DistanceMethod m)
{
    switch (m) {
    case DistanceMethod::exact_matching: return "exact-matching";
    case DistanceMethod::brute_force: return "brute-force";
    case DistanceMethod::sampled_lower_bound: return "sampled-lower-bound";
    }
    return "unknown";
}

/// Distance to monotonicity as the rational matching_size / cube_size.
struct EpsilonReport {
    std::uint64_t matching_size = 0;
    std::uint64_t cube_size = 1;
    DistanceMethod method = DistanceMethod::exact_matching;
    std::optional<MatchingCertificate> certificate;

    double epsilon() const noexcept
    {
        return static_cast<double>(matching_size) / static_cast<double>(cube_size);
    }
};

inline EpsilonReport epsilon_exact(const BoolFn& f, std::size_t cap = kDefaultExactDistanceCap)
{
    const ViolationGraph g = build_violation_graph(f, cap);
    EpsilonReport r;
    r.certificate = max_matching(g);
    r.matching_size = r.certificate->matching.size();
    r.cube_size = std::uint64_t{1} << g.arity;
    r.method = DistanceMethod::exact_matching;
    return r;
}

/// Calls `visit(bits)` for every monotone function of arity n <= 5, where
/// bit x of `bits` is the value at index x. Values are assigned in index
/// order (a linear extension of the cube); a point is forced to 1 as soon
/// as one of its lower neighbours is 1, so only monotone prefixes are
/// ever extended.
inline void enumerate_monotone(std::size_t n, const std::function<void(std::uint64_t)>& visit)
{
    if (n > kBruteForceArityCap)
        throw Unsupported("monotone enumeration limited to arity " + std::to_string(kBruteForceArityCap));
    const std::uint64_t cube = std::uint64_t{1} << n;
    std::function<void(std::uint64_t, std::uint64_t)> extend = [&](std::uint64_t x, std::uint64_t bits) {
        if (x == cube) {
            visit(bits);
            return;
        }
        bool forced = false;
        for (std::uint64_t rest = x; rest != 0 && !forced; rest &= rest - 1) {
            const std::uint64_t below = x & ~(rest & (~rest + 1));
            forced = (bits >> below) & 1U;
        }
        if (!forced)
            extend(x + 1, bits);
        extend(x + 1, bits | (std::uint64_t{1} << x));
    };
    extend(0, 0);
}

/// Minimum Hamming distance to a monotone function, by enumeration.
inline EpsilonReport epsilon_bruteforce(const BoolFn& f)
{
    const TruthTable& t = f.table();
    const std::size_t n = t.arity();
    if (n > kBruteForceArityCap)
        throw Unsupported("brute-force distance limited to arity " + std::to_string(kBruteForceArityCap) + ", got "
                          + std::to_string(n));
    std::uint64_t fbits = 0;
    for (std::uint64_t x = 0; x < t.size(); ++x)
        if (t.get(x))
            fbits |= std::uint64_t{1} << x;
    std::uint64_t best = t.size();
    enumerate_monotone(n, [&](std::uint64_t g) {
        best = std::min<std::uint64_t>(best, static_cast<std::uint64_t>(std::popcount(g ^ fbits)));
    });
    EpsilonReport r;
    r.matching_size = best;
    r.cube_size = t.size();
    r.method = DistanceMethod::brute_force;
    return r;
}

} // namespace monoamp
