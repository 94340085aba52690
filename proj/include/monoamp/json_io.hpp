#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "amplify.hpp"
#include "distance.hpp"
#include "errors.hpp"
#include "point.hpp"
#include "tribes.hpp"

namespace monoamp {

using json = nlohmann::ordered_json;

/// {"matching": [[a, b], ...], "cover": [v, ...]} with points as bitstrings.
inline json certificate_to_json(std::size_t arity, const MatchingCertificate& cert)
{
    json m = json::array();
    for (auto [a, b] : cert.matching)
        m.push_back({index_to_string(arity, a), index_to_string(arity, b)});
    json c = json::array();
    for (Vertex v : cert.cover)
        c.push_back(index_to_string(arity, v));
    return json{{"matching", std::move(m)}, {"cover", std::move(c)}};
}

inline json epsilon_to_json(const EpsilonReport& r)
{
    return json{{"epsilon", r.epsilon()},
                {"matching_size", r.matching_size},
                {"cube_size", r.cube_size},
                {"method", to_string(r.method)}};
}

inline json tribes_to_json(const TribesSpec& s)
{
    return json{{"k", s.k}, {"w", s.w}, {"r_prime", s.r_prime}, {"alpha", s.alpha}};
}

inline TribesSpec tribes_from_json(const json& j)
{
    try {
        TribesSpec s{j.at("k").get<std::uint64_t>(), j.at("w").get<std::uint64_t>(),
                     j.at("r_prime").get<std::uint64_t>(), j.at("alpha").get<double>()};
        s.validate();
        return s;
    } catch (const json::exception& e) {
        throw ParseError(std::string("tribes spec: ") + e.what());
    }
}

inline json report_to_json(const AmplificationReport& r)
{
    json j{{"n", r.n},
           {"k", r.k},
           {"w", r.w},
           {"r_prime", r.r_prime},
           {"alpha_hat", r.alpha_hat},
           {"epsilon_f", r.epsilon_f.epsilon()},
           {"epsilon_f_prime", nullptr},
           {"method", to_string(r.method)},
           {"lower_bound", nullptr},
           {"queries_construction", r.queries_construction},
           {"queries_per_eval", r.queries_per_eval},
           {"seed", r.seed},
           {"n_prime", r.n_prime},
           {"padded", r.padded}};
    if (r.epsilon_f_prime)
        j["epsilon_f_prime"] = r.epsilon_f_prime->epsilon();
    if (r.lower_bound)
        j["lower_bound"] = *r.lower_bound;
    return j;
}

inline json stats_to_json(const TribeStats& s)
{
    json tail = json::array();
    for (double t : s.almost_sat_tail)
        tail.push_back(t);
    return json{{"accept_prob", s.accept_prob},
                {"boundary_prob", s.boundary_prob},
                {"almost_sat_mean", s.almost_sat_mean},
                {"almost_sat_tail", std::move(tail)}};
}

inline json estimate_to_json(const TribeStatsEstimate& e)
{
    return json{{"samples", e.samples},
                {"accept_freq", e.accept_freq},
                {"accept_se", e.accept_se},
                {"boundary_freq", e.boundary_freq},
                {"boundary_se", e.boundary_se},
                {"almost_sat_mean", e.almost_sat_mean},
                {"almost_sat_se", e.almost_sat_se},
                {"almost_sat_histogram", e.almost_sat_histogram}};
}

} // namespace monoamp
