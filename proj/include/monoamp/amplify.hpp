#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "boolfn.hpp"
#include "distance.hpp"
#include "errors.hpp"
#include "point.hpp"
#include "rng.hpp"
#include "tribes.hpp"

namespace monoamp {

enum class PadPolicy { always, if_unbalanced, never };

inline const char* to_string(PadPolicy p)
{
    switch (p) {
    case PadPolicy::always: return "always";
    case PadPolicy::if_unbalanced: return "if-unbalanced";
    case PadPolicy::never: return "never";
    }
    return "unknown";
}

inline PadPolicy parse_pad_policy(const std::string& s)
{
    if (s == "always")
        return PadPolicy::always;
    if (s == "if-unbalanced")
        return PadPolicy::if_unbalanced;
    if (s == "never")
        return PadPolicy::never;
    throw ParseError("unknown pad policy '" + s + "' (always, if-unbalanced, never)");
}

struct AmplifyConfig {
    std::uint64_t k = 4;
    std::optional<std::uint64_t> sample_budget; // k^3 when unset
    PadPolicy pad = PadPolicy::if_unbalanced;
    std::optional<std::uint64_t> tribe_width; // default_tribe_width(k, alpha_hat) when unset
    std::size_t exact_distance_cap = kDefaultExactDistanceCap;
    // end_to_end_report: fall back to the lifted lower bound above the cap.
    bool allow_lift = false;
    std::uint64_t lift_samples = 10000;

    std::uint64_t budget() const { return sample_budget.value_or(k * k * k); }

    void validate() const
    {
        if (k < 1)
            throw Degenerate("amplification needs k >= 1");
        if (budget() < 1)
            throw Degenerate("sample budget must be at least 1");
    }
};

/// f'(x) = T(f(x(1)), ..., f(x(k))) for x split into k blocks of n bits.
class AmplifiedOracle {
public:
    static AmplifiedOracle compose(BoolFn base, TribesSpec spec, std::optional<double> alpha_hat = std::nullopt,
                                   bool padded = false, std::uint64_t construction_queries = 0)
    {
        spec.validate();
        AmplifiedOracle F(std::move(base), spec);
        F.alpha_hat_ = alpha_hat.value_or(spec.alpha);
        F.padded_ = padded;
        F.construction_queries_ = construction_queries;
        return F;
    }

    const BoolFn& base() const noexcept { return base_; }
    const TribesSpec& spec() const noexcept { return spec_; }
    std::uint64_t k() const noexcept { return spec_.k; }
    std::size_t n_prime() const noexcept { return n_prime_; }
    double alpha_hat() const noexcept { return alpha_hat_; }
    bool padded() const noexcept { return padded_; }
    // Queries charged to the input oracle while building this one.
    std::uint64_t construction_queries() const noexcept { return construction_queries_; }

    /// (f(x(1)), ..., f(x(k))); k queries to the base in the given mode.
    Point block_values(const Point& x, QueryMode mode) const
    {
        if (x.size() != n_prime_)
            throw ArityMismatch("amplified query of length " + std::to_string(x.size()) + ", expected n' = "
                                + std::to_string(n_prime_));
        const std::size_t n = base_.arity();
        Point y(spec_.k);
        for (std::uint64_t j = 0; j < spec_.k; ++j)
            if (base_.query(x.slice(j * n, n), mode))
                y.set(j, true);
        return y;
    }

    bool query(const Point& x, QueryMode mode) const { return tribes_eval(spec_, block_values(x, mode)); }
    bool eval(const Point& x) const { return query(x, QueryMode::counted); }
    bool peek(const Point& x) const { return query(x, QueryMode::silent); }

    /// Oracle handle for f' with its own counter; counted queries to it are
    /// also charged k times to the base.
    BoolFn as_oracle() const
    {
        return BoolFn::from_evaluator(n_prime_, [self = *this](const Point& x, QueryMode mode) {
            return self.query(x, mode);
        });
    }

private:
    AmplifiedOracle(BoolFn base, TribesSpec spec)
        : base_(std::move(base)), spec_(spec), n_prime_(static_cast<std::size_t>(spec.k) * base_.arity())
    {
    }

    BoolFn base_;
    TribesSpec spec_;
    std::size_t n_prime_ = 0;
    double alpha_hat_ = 0.5;
    bool padded_ = false;
    std::uint64_t construction_queries_ = 0;
};

inline bool amplified_query(const AmplifiedOracle& F, const Point& x) { return F.eval(x); }

/// Builds f' from f:
///  1. alpha_hat = mean of f over sample_budget uniform points;
///  2. pads f when the policy asks (if-unbalanced: alpha_hat outside
///     [1/3, 2/3]) and re-estimates alpha_hat on the padded function;
///  3. balances tribes on k inputs at bias alpha_hat.
/// Deterministic given (f, cfg, rng state).
inline AmplifiedOracle amplify(const BoolFn& f, const AmplifyConfig& cfg, Rng& rng)
{
    cfg.validate();
    const std::uint64_t before = f.query_count();
    double alpha_hat = empirical_mean(f, cfg.budget(), rng);
    BoolFn base = f;
    bool padded = false;
    const bool unbalanced = alpha_hat < 1.0 / 3.0 || alpha_hat > 2.0 / 3.0;
    if (cfg.pad == PadPolicy::always || (cfg.pad == PadPolicy::if_unbalanced && unbalanced)) {
        base = pad_to_balanced(f);
        alpha_hat = empirical_mean(base, cfg.budget(), rng);
        padded = true;
    }
    if (alpha_hat <= 0.0 || alpha_hat >= 1.0)
        throw Degenerate("estimated bias " + std::to_string(alpha_hat) + " with pad policy "
                         + to_string(cfg.pad) + ": tribes cannot be balanced at bias 0 or 1");
    const std::uint64_t w = cfg.tribe_width.value_or(default_tribe_width(cfg.k, alpha_hat));
    const TribesSpec spec = build_tribes_calibrated(cfg.k, alpha_hat, w);
    return AmplifiedOracle::compose(std::move(base), spec, alpha_hat, padded, f.query_count() - before);
}

struct LiftReport {
    std::uint64_t samples = 0;
    std::uint64_t event_E_count = 0; // samples with a unique satisfied tribe
    double event_E_frequency = 0.0;
    std::uint64_t candidate_pairs = 0;
    std::uint64_t rejected_pairs = 0; // candidates that failed re-evaluation
    // Vertex-disjoint violating pairs (x, x'): x < x', f'(x) = 1, f'(x') = 0.
    std::vector<std::pair<Point, Point>> matched_pairs;
    double lower_bound = 0.0; // |matched_pairs| / samples
};

/// Lifts a maximum matching M of f's violation graph to violating pairs of
/// f'. For a sampled x whose block values satisfy exactly one tribe, every
/// block j of that tribe with x(j) matched in M yields x' = x with block j
/// replaced by its partner M(x(j)) > x(j), f(M(x(j))) = 0. The tribe loses a
/// coordinate and no other tribe changes, so f'(x') = 0 while f'(x) = 1.
/// Each pair is still re-evaluated before use; pairs are matched greedily in
/// the order found.
inline LiftReport lift_matching_lower_bound(const BoolFn& f, const AmplifiedOracle& F, std::uint64_t samples, Rng& rng,
                                            std::size_t cap = kDefaultExactDistanceCap)
{
    if (f.arity() != F.base().arity())
        throw ArityMismatch("lift: oracle of arity " + std::to_string(f.arity())
                            + " is not the base of the amplified oracle (arity "
                            + std::to_string(F.base().arity()) + ")");
    if (samples == 0)
        throw Degenerate("lift needs at least one sample");
    const BoolFn table = materialize(f);
    const std::size_t n = table.arity();
    const ViolationGraph g = build_violation_graph(table, cap);
    const MatchingCertificate m = max_matching(g);

    std::vector<std::int64_t> partner(std::size_t{1} << n, -1);
    for (auto [a, b] : m.matching)
        partner[a] = b;

    LiftReport rep;
    rep.samples = samples;
    std::unordered_set<Point, PointHash> used;
    const TribesSpec& spec = F.spec();
    for (std::uint64_t s = 0; s < samples; ++s) {
        const Point x = Point::uniform(F.n_prime(), rng);
        const auto tribe = unique_satisfied_tribe(spec, F.block_values(x, QueryMode::silent));
        if (!tribe)
            continue;
        ++rep.event_E_count;
        for (std::uint64_t j = spec.tribe_begin(*tribe); j < spec.tribe_end(*tribe); ++j) {
            const std::uint64_t block = x.slice(j * n, n).to_index();
            if (partner[block] < 0)
                continue;
            Point xp = x;
            xp.assign_slice(j * n, Point::from_index(n, static_cast<std::uint64_t>(partner[block])));
            ++rep.candidate_pairs;
            if (!(x.less(xp) && F.peek(x) && !F.peek(xp))) {
                ++rep.rejected_pairs;
                continue;
            }
            if (used.contains(x) || used.contains(xp))
                continue;
            used.insert(x);
            used.insert(xp);
            rep.matched_pairs.emplace_back(x, std::move(xp));
        }
    }
    rep.event_E_frequency = static_cast<double>(rep.event_E_count) / static_cast<double>(samples);
    rep.lower_bound = static_cast<double>(rep.matched_pairs.size()) / static_cast<double>(samples);
    return rep;
}

struct AmplificationReport {
    std::size_t n = 0;       // arity of the input
    std::size_t n_prime = 0; // arity of f'
    std::uint64_t k = 0;
    std::uint64_t w = 0;
    std::uint64_t r_prime = 0;
    double alpha_hat = 0.0;
    bool padded = false;
    EpsilonReport epsilon_f;
    std::optional<EpsilonReport> epsilon_f_prime; // exact path
    DistanceMethod method = DistanceMethod::exact_matching;
    std::optional<double> lower_bound; // lifted path
    std::uint64_t queries_construction = 0;
    std::uint64_t queries_per_eval = 0;
    std::uint64_t seed = 0;
};

/// Runs the whole pipeline from a seed: exact distance of f, amplification,
/// then the exact distance of f' when n' fits the cap or, if allowed, the
/// lifted lower bound.
inline AmplificationReport end_to_end_report(const BoolFn& f, const AmplifyConfig& cfg, std::uint64_t seed)
{
    Rng rng(seed);
    AmplificationReport rep;
    rep.seed = seed;
    rep.n = f.arity();
    rep.epsilon_f = epsilon_exact(materialize(f), cfg.exact_distance_cap);

    const AmplifiedOracle F = amplify(f, cfg, rng);
    rep.n_prime = F.n_prime();
    rep.k = F.k();
    rep.w = F.spec().w;
    rep.r_prime = F.spec().r_prime;
    rep.alpha_hat = F.alpha_hat();
    rep.padded = F.padded();
    rep.queries_construction = F.construction_queries();
    rep.queries_per_eval = F.k();

    if (F.n_prime() <= cfg.exact_distance_cap) {
        rep.epsilon_f_prime = epsilon_exact(materialize(F.as_oracle()), cfg.exact_distance_cap);
        rep.method = DistanceMethod::exact_matching;
    } else if (cfg.allow_lift) {
        const LiftReport lift = lift_matching_lower_bound(F.base(), F, cfg.lift_samples, rng, cfg.exact_distance_cap);
        rep.lower_bound = lift.lower_bound;
        rep.method = DistanceMethod::sampled_lower_bound;
    } else {
        throw Unsupported("n' = " + std::to_string(F.n_prime()) + " exceeds the exact-distance cap "
                          + std::to_string(cfg.exact_distance_cap)
                          + "; enable the lifted lower bound (--lift) or raise the cap");
    }
    return rep;
}

} // namespace monoamp
