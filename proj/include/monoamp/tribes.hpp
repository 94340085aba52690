#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "point.hpp"
#include "rng.hpp"

namespace monoamp {

/// OR of ANDs over r' disjoint width-w blocks of [k]. Tribe i occupies
/// coordinates [i*w, (i+1)*w); coordinates past r'*w are ignored. `alpha`
/// is the bias the layout was balanced for.
struct TribesSpec {
    std::uint64_t k = 0;
    std::uint64_t w = 0;
    std::uint64_t r_prime = 0;
    double alpha = 0.5;

    std::uint64_t tribe_begin(std::uint64_t i) const noexcept { return i * w; }
    std::uint64_t tribe_end(std::uint64_t i) const noexcept { return (i + 1) * w; }

    void validate() const
    {
        if (w < 1 || r_prime < 1)
            throw Degenerate("tribes need w >= 1 and r' >= 1 (w=" + std::to_string(w)
                             + ", r'=" + std::to_string(r_prime) + ")");
        if (r_prime > k / w)
            throw Degenerate("tribes do not fit: r'*w = " + std::to_string(r_prime) + "*" + std::to_string(w)
                             + " > k = " + std::to_string(k));
        if (!(alpha > 0.0 && alpha < 1.0))
            throw Degenerate("tribes base bias must lie in (0,1), got " + std::to_string(alpha));
    }

    friend bool operator==(const TribesSpec&, const TribesSpec&) = default;
};

/// Real-valued tribe width log_{1/a} k - 10 log_{1/a} log2 k of the
/// asymptotic recipe; with it, a^width = log2(k)^10 / k.
inline double paper_tribe_width(double k, double alpha)
{
    const double base = std::log(1.0 / alpha);
    return std::log(k) / base - 10.0 * std::log(std::log2(k)) / base;
}

/// Asymptotic recipe: width rounded to nearest, r' = floor(k ln2 / log2(k)^10).
/// Degenerate at every k a desk can enumerate; the calibrated builder is
/// what the rest of the library uses.
inline TribesSpec build_tribes_paper(std::uint64_t k, double alpha)
{
    if (!(alpha >= 0.1 && alpha <= 0.9))
        throw Degenerate("asymptotic recipe needs 1/10 <= alpha <= 9/10");
    if (k < 3)
        throw Degenerate("asymptotic recipe needs k >= 3");
    const double kd = static_cast<double>(k);
    const double width = paper_tribe_width(kd, alpha);
    const double count = std::floor(kd * std::log(2.0) / std::pow(std::log2(kd), 10.0));
    const long long w = std::llround(width);
    if (w < 1 || count < 1.0 || static_cast<double>(w) * count > kd)
        throw Degenerate("asymptotic tribes recipe degenerate at k=" + std::to_string(k) + ", alpha="
                         + std::to_string(alpha) + ": width " + std::to_string(width) + " -> w=" + std::to_string(w)
                         + ", r'=" + std::to_string(count));
    TribesSpec spec{k, static_cast<std::uint64_t>(w), static_cast<std::uint64_t>(count), alpha};
    spec.validate();
    return spec;
}

/// Balances the tribes at finite k: r' minimizes |1 - (1 - alpha^w)^r - 1/2|
/// over r in [1, floor(k/w)], ties going to the smaller r.
inline TribesSpec build_tribes_calibrated(std::uint64_t k, double alpha, std::uint64_t w)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Degenerate("calibrated tribes need 0 < alpha < 1, got " + std::to_string(alpha));
    if (w < 1)
        throw Degenerate("tribe width must be at least 1");
    const std::uint64_t r_max = k / w;
    if (r_max < 1)
        throw Degenerate("no room for a tribe: floor(k/w) = floor(" + std::to_string(k) + "/" + std::to_string(w)
                         + ") = 0");
    const double q = std::pow(alpha, static_cast<double>(w));
    // accept(r) = 1 - (1-q)^r is increasing in r, so the best r brackets 1/2.
    std::uint64_t best = 1;
    double best_gap = std::abs(q - 0.5);
    double none = 1.0 - q;
    for (std::uint64_t r = 2; r <= r_max; ++r) {
        none *= 1.0 - q;
        const double gap = std::abs(0.5 - none);
        if (gap < best_gap) {
            best_gap = gap;
            best = r;
        }
        if (none <= 0.5)
            break;
    }
    TribesSpec spec{k, w, best, alpha};
    spec.validate();
    return spec;
}

/// Widest w whose balanced tribes fit into k coordinates, i.e. the largest
/// w >= 1 with w * ln2 / alpha^w <= k (1 when none does).
inline std::uint64_t default_tribe_width(std::uint64_t k, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Degenerate("default tribe width needs 0 < alpha < 1");
    std::uint64_t best = 1;
    for (std::uint64_t w = 1; w <= k; ++w) {
        const double need = static_cast<double>(w) * std::log(2.0) / std::pow(alpha, static_cast<double>(w));
        if (need > static_cast<double>(k))
            break;
        best = w;
    }
    return best;
}

struct TribeProfile {
    std::uint64_t satisfied = 0;       // tribes with every coordinate 1
    std::uint64_t almost_satisfied = 0; // tribes with exactly one 0
    std::uint64_t first_satisfied = 0;  // valid when satisfied > 0
};

inline TribeProfile tribe_profile(const TribesSpec& spec, const Point& y)
{
    if (y.size() != spec.k)
        throw ArityMismatch("tribes input of length " + std::to_string(y.size()) + ", expected "
                            + std::to_string(spec.k));
    TribeProfile prof;
    for (std::uint64_t i = 0; i < spec.r_prime; ++i) {
        std::uint64_t zeros = 0;
        for (std::uint64_t j = spec.tribe_begin(i); j < spec.tribe_end(i) && zeros < 2; ++j)
            zeros += y[j] ? 0 : 1;
        if (zeros == 0) {
            if (prof.satisfied++ == 0)
                prof.first_satisfied = i;
        } else if (zeros == 1) {
            ++prof.almost_satisfied;
        }
    }
    return prof;
}

inline bool tribes_eval(const TribesSpec& spec, const Point& y) { return tribe_profile(spec, y).satisfied > 0; }

inline std::uint64_t almost_sat_count(const TribesSpec& spec, const Point& y)
{
    return tribe_profile(spec, y).almost_satisfied;
}

/// True iff exactly one tribe is fully satisfied.
inline bool boundary_indicator(const TribesSpec& spec, const Point& y)
{
    return tribe_profile(spec, y).satisfied == 1;
}

inline std::optional<std::uint64_t> unique_satisfied_tribe(const TribesSpec& spec, const Point& y)
{
    const auto prof = tribe_profile(spec, y);
    if (prof.satisfied != 1)
        return std::nullopt;
    return prof.first_satisfied;
}

namespace detail {

inline void check_prob(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw Degenerate("probability must lie in [0,1], got " + std::to_string(p));
}

} // namespace detail

// Closed forms under mu_p. Tribes are disjoint, so their states are independent.

inline double accept_prob_exact(const TribesSpec& spec, double p)
{
    detail::check_prob(p);
    const double q = std::pow(p, static_cast<double>(spec.w));
    return -std::expm1(static_cast<double>(spec.r_prime) * std::log1p(-q));
}

inline double boundary_prob_exact(const TribesSpec& spec, double p)
{
    detail::check_prob(p);
    const double q = std::pow(p, static_cast<double>(spec.w));
    return static_cast<double>(spec.r_prime) * q * std::pow(1.0 - q, static_cast<double>(spec.r_prime - 1));
}

/// Probability that one fixed tribe has exactly one 0: w p^(w-1) (1-p).
inline double almost_sat_single_prob(const TribesSpec& spec, double p)
{
    detail::check_prob(p);
    return static_cast<double>(spec.w) * std::pow(p, static_cast<double>(spec.w - 1)) * (1.0 - p);
}

inline double almost_sat_mean_exact(const TribesSpec& spec, double p)
{
    return static_cast<double>(spec.r_prime) * almost_sat_single_prob(spec, p);
}

/// Pr[as_T >= t] with as_T ~ Bin(r', w p^(w-1) (1-p)).
inline double almost_sat_tail_exact(const TribesSpec& spec, double p, std::uint64_t t)
{
    const double q1 = almost_sat_single_prob(spec, p);
    const std::uint64_t r = spec.r_prime;
    if (t == 0)
        return 1.0;
    if (t > r || q1 <= 0.0)
        return 0.0;
    if (q1 >= 1.0)
        return 1.0;
    const double lq = std::log(q1);
    const double lnq = std::log1p(-q1);
    const double lr = std::lgamma(static_cast<double>(r) + 1.0);
    double tail = 0.0;
    for (std::uint64_t i = t; i <= r; ++i) {
        const double di = static_cast<double>(i);
        const double log_pmf = lr - std::lgamma(di + 1.0) - std::lgamma(static_cast<double>(r - i) + 1.0) + di * lq
                               + static_cast<double>(r - i) * lnq;
        tail += std::exp(log_pmf);
    }
    return std::min(tail, 1.0);
}

struct TribeStats {
    double accept_prob = 0.0;
    double boundary_prob = 0.0;
    double almost_sat_mean = 0.0;
    std::vector<double> almost_sat_tail; // index t = 0 .. r'+1

    double tail(std::uint64_t t) const { return t < almost_sat_tail.size() ? almost_sat_tail[t] : 0.0; }
};

inline TribeStats exact_stats(const TribesSpec& spec, double p)
{
    TribeStats s;
    s.accept_prob = accept_prob_exact(spec, p);
    s.boundary_prob = boundary_prob_exact(spec, p);
    s.almost_sat_mean = almost_sat_mean_exact(spec, p);
    s.almost_sat_tail.reserve(spec.r_prime + 2);
    for (std::uint64_t t = 0; t <= spec.r_prime + 1; ++t)
        s.almost_sat_tail.push_back(almost_sat_tail_exact(spec, p, t));
    return s;
}

/// Monte Carlo estimates with standard errors.
struct TribeStatsEstimate {
    std::uint64_t samples = 0;
    double accept_freq = 0.0;
    double accept_se = 0.0;
    double boundary_freq = 0.0;
    double boundary_se = 0.0;
    double almost_sat_mean = 0.0;
    double almost_sat_se = 0.0;
    std::vector<std::uint64_t> almost_sat_histogram; // index = as_T value
};

/// Samples y ~ mu_p restricted to the tribe coordinates (the others do not
/// affect any statistic). Each tribe only matters through its number of
/// zeros, which is Bin(w, 1-p), so one draw per tribe reproduces the
/// joint law exactly.
inline TribeStatsEstimate monte_carlo_stats(const TribesSpec& spec, double p, std::uint64_t m, Rng& rng)
{
    detail::check_prob(p);
    if (m == 0)
        throw Degenerate("monte_carlo_stats needs at least one sample");
    std::binomial_distribution<std::uint64_t> zeros(spec.w, 1.0 - p);
    TribeStatsEstimate est;
    est.samples = m;
    est.almost_sat_histogram.assign(spec.r_prime + 1, 0);
    std::uint64_t accepted = 0, boundary = 0;
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t s = 0; s < m; ++s) {
        std::uint64_t sat = 0, almost = 0;
        for (std::uint64_t i = 0; i < spec.r_prime; ++i) {
            const auto z = zeros(rng.engine());
            sat += z == 0 ? 1 : 0;
            almost += z == 1 ? 1 : 0;
        }
        accepted += sat > 0 ? 1 : 0;
        boundary += sat == 1 ? 1 : 0;
        ++est.almost_sat_histogram[almost];
        sum += static_cast<double>(almost);
        sum_sq += static_cast<double>(almost) * static_cast<double>(almost);
    }
    const double md = static_cast<double>(m);
    est.accept_freq = static_cast<double>(accepted) / md;
    est.boundary_freq = static_cast<double>(boundary) / md;
    est.accept_se = std::sqrt(est.accept_freq * (1.0 - est.accept_freq) / md);
    est.boundary_se = std::sqrt(est.boundary_freq * (1.0 - est.boundary_freq) / md);
    est.almost_sat_mean = sum / md;
    const double var = m > 1 ? std::max(0.0, (sum_sq - md * est.almost_sat_mean * est.almost_sat_mean) / (md - 1.0)) : 0.0;
    est.almost_sat_se = std::sqrt(var / md);
    return est;
}

} // namespace monoamp
