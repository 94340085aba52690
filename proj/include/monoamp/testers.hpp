#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "amplify.hpp"
#include "boolfn.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace monoamp {

enum class Verdict { accept, reject, error };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::accept: return "accept";
    case Verdict::reject: return "reject";
    case Verdict::error: return "error";
    }
    return "unknown";
}

struct TesterVerdict {
    Verdict verdict = Verdict::accept;
    // Queries charged to the oracle the tester was handed.
    std::uint64_t queries_used = 0;
    std::string message; // set for Verdict::error

    bool accepted() const noexcept { return verdict == Verdict::accept; }
};

struct Tester {
    std::function<TesterVerdict(const BoolFn&, Rng&)> run;
    bool one_sided = false;
    std::uint64_t query_budget = 0;
};

/// Edge tester: budget/2 probes of a uniform edge (x with bit i = 0,
/// x with bit i = 1); rejects if any probed edge is violated. One-sided.
/// All probes are always made, so the query count depends only on the budget.
inline Tester edge_tester(std::uint64_t budget)
{
    if (budget < 2)
        throw Degenerate("edge tester needs a budget of at least 2 queries");
    Tester t;
    t.one_sided = true;
    t.query_budget = budget;
    t.run = [probes = budget / 2](const BoolFn& f, Rng& rng) {
        TesterVerdict v;
        const std::size_t n = f.arity();
        for (std::uint64_t s = 0; s < probes; ++s) {
            Point lo = Point::uniform(n, rng);
            const auto i = static_cast<std::size_t>(rng.below(n));
            lo.set(i, false);
            Point hi = lo;
            hi.set(i, true);
            const bool f_lo = f.eval(lo);
            const bool f_hi = f.eval(hi);
            v.queries_used += 2;
            if (f_lo && !f_hi)
                v.verdict = Verdict::reject;
        }
        return v;
    };
    return t;
}

/// Wraps a tester for n'-variate functions into one for n-variate f: build
/// f' by amplification, run `inner` on it and return its verdict. Base
/// queries = estimation budget + k * (inner queries). A failed
/// amplification yields Verdict::error, never a rejection.
inline Tester reduce_tester(Tester inner, AmplifyConfig cfg)
{
    Tester t;
    t.one_sided = inner.one_sided;
    t.query_budget = cfg.budget() * (cfg.pad == PadPolicy::never ? 1 : 2) + cfg.k * inner.query_budget;
    t.run = [inner = std::move(inner), cfg = std::move(cfg)](const BoolFn& f, Rng& rng) {
        const std::uint64_t before = f.query_count();
        TesterVerdict v;
        try {
            const AmplifiedOracle F = amplify(f, cfg, rng);
            const TesterVerdict inner_v = inner.run(F.as_oracle(), rng);
            v.verdict = inner_v.verdict;
            v.message = inner_v.message;
        } catch (const Error& e) {
            v.verdict = Verdict::error;
            v.message = e.what();
        }
        v.queries_used = f.query_count() - before;
        return v;
    };
    return t;
}

} // namespace monoamp
