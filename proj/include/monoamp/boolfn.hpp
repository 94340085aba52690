#pragma once

#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "point.hpp"
#include "rng.hpp"

namespace monoamp {

inline constexpr std::size_t kMaxTableArity = 24;

/// Packed truth table of an n-variate function, n <= 24.
/// Bit `index` holds f at Point::from_index(n, index).
class TruthTable {
public:
    TruthTable() = default;
    explicit TruthTable(std::size_t arity) : arity_(arity)
    {
        if (arity > kMaxTableArity)
            throw Unsupported("truth table arity " + std::to_string(arity) + " exceeds cap "
                              + std::to_string(kMaxTableArity));
        bits_.assign((size() + 63) / 64, 0);
    }

    template <class Pred>
    static TruthTable from_predicate(std::size_t arity, Pred&& pred)
    {
        TruthTable t(arity);
        for (std::uint64_t x = 0; x < t.size(); ++x)
            t.set(x, static_cast<bool>(pred(x)));
        return t;
    }

    std::size_t arity() const noexcept { return arity_; }
    std::uint64_t size() const noexcept { return std::uint64_t{1} << arity_; }

    bool get(std::uint64_t index) const noexcept { return (bits_[index / 64] >> (index % 64)) & 1U; }

    void set(std::uint64_t index, bool v) noexcept
    {
        const std::uint64_t mask = std::uint64_t{1} << (index % 64);
        if (v)
            bits_[index / 64] |= mask;
        else
            bits_[index / 64] &= ~mask;
    }

    std::uint64_t count_ones() const noexcept
    {
        std::uint64_t c = 0;
        for (auto w : bits_)
            c += static_cast<std::uint64_t>(std::popcount(w));
        return c;
    }

    friend bool operator==(const TruthTable&, const TruthTable&) = default;

private:
    std::size_t arity_ = 0;
    std::vector<std::uint64_t> bits_;
};

enum class QueryMode { counted, silent };

/// Evaluator of a virtual oracle. It receives the query mode so that a
/// composed oracle forwards it to the oracles it is built from: counted
/// queries are charged all the way down, silent ones (analysis tooling)
/// are charged nowhere.
using Evaluator = std::function<bool(const Point&, QueryMode)>;

/// Oracle handle for f: {0,1}^n -> {0,1}.
///
/// Backed either by a truth table or by an evaluator. Copies of a handle
/// share the function and its query counter; the function itself never
/// changes after construction, so concurrent evaluation is safe and the
/// counter is atomic.
class BoolFn {
public:
    static BoolFn from_table(TruthTable table)
    {
        BoolFn f;
        f.arity_ = table.arity();
        f.table_ = std::make_shared<const TruthTable>(std::move(table));
        return f;
    }

    static BoolFn from_evaluator(std::size_t arity, Evaluator evaluator)
    {
        if (arity == 0)
            throw ArityMismatch("oracle arity must be positive");
        BoolFn f;
        f.arity_ = arity;
        f.evaluator_ = std::make_shared<const Evaluator>(std::move(evaluator));
        return f;
    }

    std::size_t arity() const noexcept { return arity_; }
    bool has_table() const noexcept { return table_ != nullptr; }

    const TruthTable& table() const
    {
        if (!table_)
            throw Unsupported("virtual oracle has no truth table; materialize it first");
        return *table_;
    }

    bool query(const Point& x, QueryMode mode) const
    {
        if (x.size() != arity_)
            throw ArityMismatch("query of arity " + std::to_string(x.size()) + " against oracle of arity "
                                + std::to_string(arity_));
        if (mode == QueryMode::counted)
            counter_->fetch_add(1, std::memory_order_relaxed);
        if (table_)
            return table_->get(x.to_index());
        return (*evaluator_)(x, mode);
    }

    bool eval(const Point& x) const { return query(x, QueryMode::counted); }
    bool peek(const Point& x) const { return query(x, QueryMode::silent); }

    bool query_index(std::uint64_t index, QueryMode mode) const
    {
        if (arity_ > 64 || (arity_ < 64 && (index >> arity_) != 0))
            throw ArityMismatch("index out of range for oracle of arity " + std::to_string(arity_));
        if (table_) {
            if (mode == QueryMode::counted)
                counter_->fetch_add(1, std::memory_order_relaxed);
            return table_->get(index);
        }
        return query(Point::from_index(arity_, index), mode);
    }

    bool eval_index(std::uint64_t index) const { return query_index(index, QueryMode::counted); }
    bool peek_index(std::uint64_t index) const { return query_index(index, QueryMode::silent); }

    // Same function, separate counter (e.g. one per worker).
    BoolFn with_fresh_counter() const
    {
        BoolFn f = *this;
        f.counter_ = std::make_shared<std::atomic<std::uint64_t>>(0);
        return f;
    }

    std::uint64_t query_count() const noexcept { return counter_->load(std::memory_order_relaxed); }
    void reset_query_count() const noexcept { counter_->store(0, std::memory_order_relaxed); }

private:
    BoolFn() = default;

    std::size_t arity_ = 0;
    std::shared_ptr<const TruthTable> table_;
    std::shared_ptr<const Evaluator> evaluator_;
    std::shared_ptr<std::atomic<std::uint64_t>> counter_ = std::make_shared<std::atomic<std::uint64_t>>(0);
};

/// Truth-table copy of any oracle with arity <= 24. Uses silent queries,
/// so no counter anywhere in the composition moves. The result has a
/// fresh counter.
inline BoolFn materialize(const BoolFn& f)
{
    if (f.has_table())
        return BoolFn::from_table(f.table());
    TruthTable t(f.arity());
    for (std::uint64_t x = 0; x < t.size(); ++x)
        t.set(x, f.peek_index(x));
    return BoolFn::from_table(std::move(t));
}

struct MonotonicityResult {
    bool monotone = true;
    // Violated hypercube edge (x, x with one more coordinate set), f(x)=1, f(upper)=0.
    std::optional<std::pair<Point, Point>> witness;
};

/// Edge test for monotonicity. Any violating comparable pair contains a
/// violated edge on a monotone path between them, so scanning the n*2^(n-1)
/// edges suffices. The witness is the first violated edge in
/// (lower point index, coordinate) order.
inline MonotonicityResult is_monotone(const BoolFn& f)
{
    const TruthTable& t = f.table();
    const std::size_t n = t.arity();
    for (std::uint64_t x = 0; x < t.size(); ++x) {
        if (!t.get(x))
            continue;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t bit = coordinate_bit(n, i);
            if ((x & bit) == 0 && !t.get(x | bit))
                return {false, std::make_pair(Point::from_index(n, x), Point::from_index(n, x | bit))};
        }
    }
    return {};
}

/// Per-coordinate probability of a 1 under the p-biased product measure.
struct BiasParams {
    double p = 0.5;

    explicit BiasParams(double p_) : p(p_)
    {
        if (!(p >= 0.0 && p <= 1.0))
            throw Degenerate("bias must lie in [0,1]");
    }
};

inline Point mu_p_sample(std::size_t n, BiasParams bias, Rng& rng)
{
    Point x(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng.bernoulli(bias.p))
            x.set(i, true);
    return x;
}

/// Mean of f over m independent uniform points; exactly m counted queries.
inline double empirical_mean(const BoolFn& f, std::uint64_t m, Rng& rng)
{
    if (m == 0)
        throw Degenerate("empirical_mean needs at least one sample");
    std::uint64_t ones = 0;
    for (std::uint64_t s = 0; s < m; ++s)
        ones += f.eval(Point::uniform(f.arity(), rng)) ? 1 : 0;
    return static_cast<double>(ones) / static_cast<double>(m);
}

inline constexpr std::size_t kPadWidth = 6;

/// Balancing gadget on n+6 variables. The first six coordinates form a
/// selector y: F = 0 when |y| <= 2, F = f(x) when |y| = 3, F = 1 when
/// |y| >= 4. Each value of F then has mass at least 22/64.
inline BoolFn pad_to_balanced(const BoolFn& f)
{
    const std::size_t n = f.arity();
    return BoolFn::from_evaluator(n + kPadWidth, [f, n](const Point& yx, QueryMode mode) {
        std::size_t level = 0;
        for (std::size_t i = 0; i < kPadWidth; ++i)
            level += yx[i] ? 1 : 0;
        if (level < 3)
            return false;
        if (level > 3)
            return true;
        return f.query(yx.slice(kPadWidth, n), mode);
    });
}

/// Common functions, all truth-table backed.
namespace fns {

inline BoolFn from_predicate(std::size_t n, const std::function<bool(const Point&)>& pred)
{
    return BoolFn::from_table(
        TruthTable::from_predicate(n, [&](std::uint64_t x) { return pred(Point::from_index(n, x)); }));
}

inline BoolFn constant(std::size_t n, bool value)
{
    return BoolFn::from_table(TruthTable::from_predicate(n, [value](std::uint64_t) { return value; }));
}

inline BoolFn dictator(std::size_t n, std::size_t i)
{
    return from_predicate(n, [i](const Point& x) { return x[i]; });
}

inline BoolFn antidictator(std::size_t n, std::size_t i)
{
    return from_predicate(n, [i](const Point& x) { return !x[i]; });
}

inline BoolFn parity(std::size_t n)
{
    return from_predicate(n, [](const Point& x) { return x.weight() % 2 == 1; });
}

inline BoolFn conjunction(std::size_t n)
{
    return from_predicate(n, [n](const Point& x) { return x.weight() == n; });
}

inline BoolFn disjunction(std::size_t n)
{
    return from_predicate(n, [](const Point& x) { return x.weight() > 0; });
}

inline BoolFn majority(std::size_t n)
{
    return from_predicate(n, [n](const Point& x) { return 2 * x.weight() > n; });
}

// Function whose truth table is the low 2^n bits of `bits`, n <= 6.
inline BoolFn from_bits(std::size_t n, std::uint64_t bits)
{
    return BoolFn::from_table(TruthTable::from_predicate(n, [bits](std::uint64_t x) { return (bits >> x) & 1U; }));
}

} // namespace fns

} // namespace monoamp
