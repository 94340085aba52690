#include <monoamp/json_io.hpp>
#include <monoamp/monoamp.hpp>
#include <monoamp/table_io.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace monoamp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitProperty = 1;
constexpr int kExitUsage = 2;

std::uint64_t default_seed()
{
    const char* env = std::getenv("MONOAMP_SEED");
    if (env == nullptr || *env == '\0')
        return 1;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used);
        if (env[used] != '\0')
            throw std::invalid_argument(env);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("MONOAMP_SEED is not an unsigned integer: '") + env + "'");
    }
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

template <class T>
json optional_json(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

// ---- distance ----

struct DistanceArgs {
    std::string file;
    bool emit_cert = false;
    std::size_t cap = kDefaultExactDistanceCap;
};

int cmd_distance(const DistanceArgs& a)
{
    const auto f = BoolFn::from_table(read_truth_table_file(a.file));
    const auto r = epsilon_exact(f, a.cap);
    json out{{"command", "distance"}, {"config", {{"file", a.file}, {"cap", a.cap}, {"emit_cert", a.emit_cert}}},
             {"n", f.arity()}};
    const json eps = epsilon_to_json(r);
    out.insert(eps.begin(), eps.end());
    if (a.emit_cert)
        out["certificate"] = certificate_to_json(f.arity(), *r.certificate);
    print(out);
    return kExitOk;
}

// ---- amplify ----

struct AmplifyArgs {
    std::string file;
    std::uint64_t k = 4;
    std::optional<std::uint64_t> w;
    std::optional<std::uint64_t> seed;
    std::string pad = "if-unbalanced";
    std::optional<std::uint64_t> budget;
    bool lift = false;
    std::uint64_t lift_samples = 10000;
    std::size_t cap = kDefaultExactDistanceCap;
};

AmplifyConfig to_config(std::uint64_t k, std::optional<std::uint64_t> w, const std::string& pad,
                        std::optional<std::uint64_t> budget)
{
    AmplifyConfig cfg;
    cfg.k = k;
    cfg.tribe_width = w;
    cfg.pad = parse_pad_policy(pad);
    cfg.sample_budget = budget;
    return cfg;
}

int cmd_amplify(const AmplifyArgs& a)
{
    const std::uint64_t seed = a.seed.value_or(default_seed());
    auto cfg = to_config(a.k, a.w, a.pad, a.budget);
    cfg.allow_lift = a.lift;
    cfg.lift_samples = a.lift_samples;
    cfg.exact_distance_cap = a.cap;
    const auto f = BoolFn::from_table(read_truth_table_file(a.file));
    const auto rep = end_to_end_report(f, cfg, seed);
    json out{{"command", "amplify"},
             {"config",
              {{"file", a.file},
               {"k", a.k},
               {"w", optional_json(a.w)},
               {"seed", seed},
               {"pad", a.pad},
               {"budget", cfg.budget()},
               {"lift", a.lift},
               {"lift_samples", a.lift_samples},
               {"cap", a.cap}}},
             {"report", report_to_json(rep)}};
    print(out);
    return kExitOk;
}

// ---- tribes-stats ----

struct TribesArgs {
    std::uint64_t k = 0;
    double alpha = 0.5;
    std::optional<std::uint64_t> w;
    std::optional<double> p;
    std::uint64_t mc_samples = 0;
    std::optional<std::uint64_t> seed;
};

int cmd_tribes_stats(const TribesArgs& a)
{
    const std::uint64_t seed = a.seed.value_or(default_seed());
    const std::uint64_t w = a.w.value_or(default_tribe_width(a.k, a.alpha));
    const auto spec = build_tribes_calibrated(a.k, a.alpha, w);
    const double p = a.p.value_or(a.alpha);
    json out{{"command", "tribes-stats"},
             {"config",
              {{"k", a.k}, {"alpha", a.alpha}, {"w", w}, {"p", p}, {"mc_samples", a.mc_samples}, {"seed", seed}}},
             {"spec", tribes_to_json(spec)},
             {"exact", stats_to_json(exact_stats(spec, p))},
             {"monte_carlo", nullptr}};
    if (a.mc_samples > 0) {
        Rng rng(seed);
        out["monte_carlo"] = estimate_to_json(monte_carlo_stats(spec, p, a.mc_samples, rng));
    }
    print(out);
    return kExitOk;
}

// ---- facts-check ----

struct FactRow {
    std::string name;
    double value = 0.0;
    std::string bound;
    bool pass = false;
};

std::vector<FactRow> facts_rows(std::uint64_t mc_samples, std::uint64_t seed)
{
    const std::uint64_t k = 1000000;
    const double alpha = 0.5;
    const auto spec = build_tribes_calibrated(k, alpha, 10);
    std::vector<FactRow> rows;

    const double acc = accept_prob_exact(spec, alpha);
    rows.push_back({"accept(alpha) - 1/2", acc - 0.5, "|x| <= 1e-3", std::abs(acc - 0.5) <= 1e-3});

    double drift = 0.0;
    for (double p : {alpha - 1.0 / static_cast<double>(k), alpha + 1.0 / static_cast<double>(k)})
        drift = std::max(drift, std::abs(accept_prob_exact(spec, p) - acc));
    rows.push_back({"max |accept(alpha +- 1/k) - accept(alpha)|", drift, "<= 0.01", drift <= 0.01});

    const double bnd = boundary_prob_exact(spec, alpha);
    const double ln2_half = std::log(2.0) / 2.0;
    rows.push_back({"boundary(alpha) - ln2/2", bnd - ln2_half, "|x| <= 5e-3", std::abs(bnd - ln2_half) <= 5e-3});

    const double log2k = std::log2(static_cast<double>(k));
    double prev = 2.0;
    bool decreasing = true;
    double at_tenth = 0.0;
    for (double delta : {0.0, 0.1, 0.25, 0.5}) {
        const auto t = static_cast<std::uint64_t>(std::ceil((std::log(2.0) + delta) * log2k));
        const double tail = almost_sat_tail_exact(spec, alpha, t);
        decreasing = decreasing && tail < prev;
        prev = tail;
        if (delta == 0.1)
            at_tenth = tail;
    }
    rows.push_back({"Pr[as >= (ln2+0.1) log2 k]", at_tenth, "<= 0.01", at_tenth <= 0.01});
    rows.push_back({"almost-satisfied tail decreasing in delta", decreasing ? 1.0 : 0.0, "== 1", decreasing});

    Rng rng(seed);
    const auto mc = monte_carlo_stats(spec, alpha, mc_samples, rng);
    const double za = mc.accept_se > 0 ? std::abs(mc.accept_freq - acc) / mc.accept_se : 0.0;
    const double zb = mc.boundary_se > 0 ? std::abs(mc.boundary_freq - bnd) / mc.boundary_se : 0.0;
    const double mean = almost_sat_mean_exact(spec, alpha);
    const double zm = mc.almost_sat_se > 0 ? std::abs(mc.almost_sat_mean - mean) / mc.almost_sat_se : 0.0;
    rows.push_back({"MC accept, standard errors off", za, "<= 3", za <= 3.0});
    rows.push_back({"MC boundary, standard errors off", zb, "<= 3", zb <= 3.0});
    rows.push_back({"MC almost-satisfied mean, standard errors off", zm, "<= 3", zm <= 3.0});
    return rows;
}

int cmd_facts_check(const std::string& profile, std::optional<std::uint64_t> seed_flag)
{
    std::uint64_t mc_samples = 0;
    if (profile == "default")
        mc_samples = 100000;
    else if (profile == "quick")
        mc_samples = 10000;
    else {
        std::cerr << "unknown profile '" << profile << "' (default, quick)\n";
        return kExitUsage;
    }
    const std::uint64_t seed = seed_flag.value_or(default_seed());
    std::printf("# profile=%s seed=%llu k=1000000 alpha=0.5 w=10 mc_samples=%llu\n", profile.c_str(),
                static_cast<unsigned long long>(seed), static_cast<unsigned long long>(mc_samples));
    bool all = true;
    for (const auto& row : facts_rows(mc_samples, seed)) {
        std::printf("%-4s %-48s %14.6g  %s\n", row.pass ? "PASS" : "FAIL", row.name.c_str(), row.value,
                    row.bound.c_str());
        all = all && row.pass;
    }
    return all ? kExitOk : kExitProperty;
}

// ---- reduce-demo ----

struct ReduceArgs {
    std::string file;
    std::uint64_t k = 4;
    std::optional<std::uint64_t> w;
    std::uint64_t inner_budget = 40;
    std::uint64_t trials = 100;
    std::optional<std::uint64_t> seed;
    std::string pad = "if-unbalanced";
    std::optional<std::uint64_t> budget;
};

int cmd_reduce_demo(const ReduceArgs& a)
{
    const std::uint64_t seed = a.seed.value_or(default_seed());
    const auto cfg = to_config(a.k, a.w, a.pad, a.budget);
    const auto f = BoolFn::from_table(read_truth_table_file(a.file));
    const auto tester = reduce_tester(edge_tester(a.inner_budget), cfg);
    std::printf("# file=%s k=%llu w=%s pad=%s budget=%llu inner_budget=%llu trials=%llu seed=%llu\n", a.file.c_str(),
                static_cast<unsigned long long>(a.k), a.w ? std::to_string(*a.w).c_str() : "default",
                a.pad.c_str(), static_cast<unsigned long long>(cfg.budget()),
                static_cast<unsigned long long>(a.inner_budget), static_cast<unsigned long long>(a.trials),
                static_cast<unsigned long long>(seed));
    std::printf("trial,verdict,base_queries\n");
    std::uint64_t accepted = 0;
    for (std::uint64_t i = 0; i < a.trials; ++i) {
        Rng rng = Rng::stream(seed, i);
        const auto v = tester.run(f.with_fresh_counter(), rng);
        accepted += v.accepted() ? 1 : 0;
        std::printf("%llu,%s,%llu\n", static_cast<unsigned long long>(i), to_string(v.verdict),
                    static_cast<unsigned long long>(v.queries_used));
    }
    std::fprintf(stderr, "acceptance rate %llu/%llu\n", static_cast<unsigned long long>(accepted),
                 static_cast<unsigned long long>(a.trials));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Monotonicity distance and tribes amplification experiments"};
    app.require_subcommand(1);
    int code = kExitOk;

    DistanceArgs dist;
    auto* distance = app.add_subcommand("distance", "exact distance to monotonicity of a truth table");
    distance->add_option("file", dist.file, "truth-table file")->required();
    distance->add_flag("--emit-cert", dist.emit_cert, "include the matching and vertex cover");
    distance->add_option("--cap", dist.cap, "largest arity for the exact computation")->capture_default_str();
    distance->callback([&] { code = cmd_distance(dist); });

    AmplifyArgs amp;
    auto* amplify_cmd = app.add_subcommand("amplify", "amplify a function and report both distances");
    amplify_cmd->add_option("file", amp.file, "truth-table file")->required();
    amplify_cmd->add_option("--k", amp.k, "number of blocks")->capture_default_str();
    amplify_cmd->add_option("--w", amp.w, "tribe width (default: derived from k and the estimated bias)");
    amplify_cmd->add_option("--seed", amp.seed, "random seed (default: $MONOAMP_SEED or 1)");
    amplify_cmd->add_option("--pad", amp.pad, "always, if-unbalanced or never")->capture_default_str();
    amplify_cmd->add_option("--budget", amp.budget, "bias-estimation samples (default k^3)");
    amplify_cmd->add_flag("--lift", amp.lift, "fall back to the lifted lower bound above the cap");
    amplify_cmd->add_option("--lift-samples", amp.lift_samples)->capture_default_str();
    amplify_cmd->add_option("--cap", amp.cap, "largest n' for the exact computation")->capture_default_str();
    amplify_cmd->callback([&] { code = cmd_amplify(amp); });

    TribesArgs tri;
    auto* tribes = app.add_subcommand("tribes-stats", "closed-form and Monte Carlo tribes statistics");
    tribes->add_option("--k", tri.k, "number of inputs")->required();
    tribes->add_option("--alpha", tri.alpha, "bias the layout is balanced for")->capture_default_str();
    tribes->add_option("--w", tri.w, "tribe width");
    tribes->add_option("--p", tri.p, "bias to evaluate at (default alpha)");
    tribes->add_option("--mc-samples", tri.mc_samples, "Monte Carlo samples, 0 to skip")->capture_default_str();
    tribes->add_option("--seed", tri.seed, "random seed (default: $MONOAMP_SEED or 1)");
    tribes->callback([&] { code = cmd_tribes_stats(tri); });

    std::string profile = "default";
    std::optional<std::uint64_t> facts_seed;
    auto* facts = app.add_subcommand("facts-check", "check the large-k tribes facts");
    facts->add_option("--profile", profile, "default or quick")->capture_default_str();
    facts->add_option("--seed", facts_seed, "random seed (default: $MONOAMP_SEED or 1)");
    facts->callback([&] { code = cmd_facts_check(profile, facts_seed); });

    ReduceArgs red;
    auto* reduce = app.add_subcommand("reduce-demo", "run the edge tester through the reduction");
    reduce->add_option("file", red.file, "truth-table file")->required();
    reduce->add_option("--k", red.k, "number of blocks")->capture_default_str();
    reduce->add_option("--w", red.w, "tribe width");
    reduce->add_option("--inner-budget", red.inner_budget, "edge-tester queries")->capture_default_str();
    reduce->add_option("--trials", red.trials)->capture_default_str();
    reduce->add_option("--seed", red.seed, "random seed (default: $MONOAMP_SEED or 1)");
    reduce->add_option("--pad", red.pad, "always, if-unbalanced or never")->capture_default_str();
    reduce->add_option("--budget", red.budget, "bias-estimation samples (default k^3)");
    reduce->callback([&] { code = cmd_reduce_demo(red); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    } catch (const Error& e) {
        // bad input files, refused parameters, caps

        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitProperty;
    }
    return code;
}
