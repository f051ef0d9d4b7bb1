#include <doctest.h>

#include <cmath>
#include <sstream>

#include "divcover/harness.hpp"
#include "test_util.hpp"

using namespace divcover;

namespace {

RunConfig escape_config() {
    RunConfig cfg;
    cfg.graph = load_graph("base");
    cfg.graph_path = "base";
    cfg.algorithm = Algorithm::OneMuOneMu;
    cfg.k = 4;
    cfg.mu = 2;
    cfg.lambda = 2;
    cfg.budget = 100000;
    cfg.seed = 1;
    cfg.target_diversity = 8;
    return cfg;
}

} // namespace

TEST_CASE("start presets materialize the pinned populations") {
    const RunConfig cfg = escape_config();
    CHECK_FALSE(make_start_population(cfg, StartPreset::Auto).has_value());

    const auto pair = make_start_population(cfg, StartPreset::Lemma3Pair);
    REQUIRE(pair.has_value());
    CHECK(total_hamming(*pair) == 6);

    RunConfig cfg4 = cfg;
    cfg4.mu = 4;
    const auto quad = make_start_population(cfg4, StartPreset::Lemma4);
    REQUIRE(quad.has_value());
    CHECK(total_hamming(*quad) == 30);

    RunConfig ext = cfg;
    ext.graph = load_graph("extended:2");
    ext.graph_path = "extended:2";
    ext.mu = 4;
    ext.k = 6;
    const auto extended = make_start_population(ext, StartPreset::Extended);
    REQUIRE(extended.has_value());
    CHECK(extended->size() == 4);

    const auto explicit_start = make_start_population(
        cfg, StartPreset::Explicit,
        std::vector<VertexSet>{cover_V3(), cover_V4()});
    REQUIRE(explicit_start.has_value());
    CHECK(total_hamming(*explicit_start) == 8);
}

TEST_CASE("start presets validate their preconditions") {
    RunConfig cfg = escape_config();
    cfg.mu = 3;
    CHECK_THROWS_AS(make_start_population(cfg, StartPreset::Lemma3Pair), std::invalid_argument);

    RunConfig ext = escape_config();
    ext.graph = load_graph("extended:2");
    ext.graph_path = "extended:2";
    ext.mu = 4;
    ext.k = 5; // needs m + 4 = 6
    CHECK_THROWS_AS(make_start_population(ext, StartPreset::Extended), std::invalid_argument);

    CHECK_THROWS_AS(make_start_population(escape_config(), StartPreset::Explicit),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        make_start_population(escape_config(), StartPreset::Explicit,
                              std::vector<VertexSet>{VertexSet::from_vertices(8, {1, 2}),
                                                     cover_V4()}),
        std::invalid_argument);
}

TEST_CASE("a one-trial experiment reproduces run() byte for byte") {
    ExperimentSpec spec;
    spec.base = escape_config();
    spec.trial_count = 1;
    spec.seed_base = 17;
    spec.start = StartPreset::Lemma3Pair;

    const auto records = run_experiment(spec);
    REQUIRE(records.size() == 1);

    RunConfig cfg = spec.base;
    cfg.seed = 17;
    const auto direct = run(cfg, lemma3_pair());
    CHECK(records[0] == direct.record);
}

TEST_CASE("experiments are reproducible and worker-count independent") {
    ExperimentSpec spec;
    spec.base = escape_config();
    spec.base.budget = 3000;
    spec.trial_count = 12;
    spec.seed_base = 100;
    spec.start = StartPreset::Lemma3Pair;

    const auto serial = run_experiment(spec, 1);
    const auto parallel = run_experiment(spec, 4);
    CHECK(serial == parallel);

    for (const auto& r : serial)
        if (r.hitting_time) CHECK(*r.hitting_time <= r.iterations_run);

    std::ostringstream csv_a, csv_b;
    write_trials_csv(csv_a, serial);
    write_trials_csv(csv_b, parallel);
    CHECK(csv_a.str() == csv_b.str());

    // any single trial re-runs to the same record from its seed
    RunConfig cfg = spec.base;
    cfg.seed = 100 + 7;
    CHECK(run(cfg, lemma3_pair()).record == serial[7]);
}

TEST_CASE("stagnating runs never hit the target") {
    ExperimentSpec spec;
    spec.base = escape_config();
    spec.base.algorithm = Algorithm::MuPlusOne;
    spec.base.budget = 10000;
    spec.trial_count = 5;
    spec.seed_base = 300;
    spec.start = StartPreset::Lemma3Pair;

    const auto records = run_experiment(spec, 2);
    for (const auto& r : records) {
        CHECK_FALSE(r.hitting_time.has_value());
        CHECK(r.final_diversity == 6);
        CHECK(r.iterations_run == 10000);
    }
}

TEST_CASE("experiment errors carry the failing trial index") {
    ExperimentSpec spec;
    spec.base = escape_config();
    spec.base.k = 2; // infeasible
    spec.trial_count = 3;
    spec.start = StartPreset::Auto;
    try {
        run_experiment(spec);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(std::string(e.what()).find("trial 0") != std::string::npos);
    }
}

TEST_CASE("estimate_success agrees with itself across disjoint seed ranges") {
    const Graph g = base_instance();
    const Population start = lemma3_pair();
    RandomStream rng_a(1), rng_b(2);
    const auto a = estimate_success(g, 4, 2, start, 200000, rng_a);
    const auto b = estimate_success(g, 4, 2, start, 200000, rng_b);
    CHECK(a.optimal_diversity == 8);

    const double p = (a.frequency + b.frequency) / 2;
    const double sigma = std::sqrt(std::max(p * (1 - p) * 2.0 / 200000.0, 1e-12));
    CHECK(std::abs(a.frequency - b.frequency) <= 5 * sigma);
}

TEST_CASE("estimate_success from the optimum stays strictly positive") {
    const Graph g = base_instance();
    const Population start({cover_V3(), cover_V4()});
    RandomStream rng(3);
    const auto result = estimate_success(g, 4, 2, start, 100000, rng);
    CHECK(result.successes > 0);
}

TEST_CASE("the exact batch success probability is 1/640 from the locally optimal pair") {
    const Graph g = base_instance();
    // independent test-side oracle first
    const auto oracle_value = testutil::pair_success_probability_oracle(
        g, 4, lemma3_pair(), cover_V3(), cover_V4());
    CHECK(oracle_value == testutil::Ratio(1, 640));
    // the library's exact computation must agree
    const Rational exact = exact_success_probability(g, 4, 2, lemma3_pair());
    CHECK(exact.num == 1);
    CHECK(exact.den == 640);
}

TEST_CASE("dominance holds for true geometric samples") {
    const double p0 = 0.01;
    RandomStream rng(7);
    std::vector<TrialRecord> records(400);
    for (auto& r : records) {
        // inverse-CDF geometric sample, support {1, 2, ...}
        const double u = std::max(rng.uniform01(), 1e-300);
        r.hitting_time = 1 + static_cast<std::int64_t>(std::log(u) / std::log1p(-p0));
    }
    const auto report = dominance_report(records, p0);
    CHECK(report.holds);
    CHECK_FALSE(report.inconclusive);
    REQUIRE(report.empirical_mean_hitting_time.has_value());
    CHECK(*report.empirical_mean_hitting_time ==
          doctest::Approx(report.geometric_mean).epsilon(0.25));
    CHECK(report.deciles.size() == 9);
}

TEST_CASE("dominance fails for a clearly slower process") {
    const double p0 = 0.05;
    RandomStream rng(8);
    std::vector<TrialRecord> records(400);
    for (auto& r : records) {
        const double u = std::max(rng.uniform01(), 1e-300);
        // five times slower than the claimed bound
        r.hitting_time = 1 + static_cast<std::int64_t>(std::log(u) / std::log1p(-p0 / 5));
    }
    CHECK_FALSE(dominance_report(records, p0).holds);
}

TEST_CASE("dominance with no finite hitting time is inconclusive") {
    std::vector<TrialRecord> records(10);
    const auto report = dominance_report(records, 0.5);
    CHECK(report.inconclusive);
    CHECK_FALSE(report.holds);
    CHECK_FALSE(report.empirical_mean_hitting_time.has_value());
}

TEST_CASE("dominance validates p0") {
    std::vector<TrialRecord> records(1);
    records[0].hitting_time = 3;
    CHECK_THROWS_AS(dominance_report(records, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(dominance_report(records, 1.0), std::invalid_argument);
}

TEST_CASE("reference lines follow the regime guard") {
    CHECK(theorem1_asymptotic(4, 2) == doctest::Approx(1.0 / 256));
    CHECK_FALSE(theorem1_finite(4, 2, 8).has_value()); // 64 >= 8
    const auto fine = theorem1_finite(1, 1, 100);
    REQUIRE(fine.has_value());
    CHECK(*fine == doctest::Approx(0.5 * (1.0 - 0.01)));
}

TEST_CASE("run configs round-trip through JSON") {
    RunConfig cfg = escape_config();
    cfg.target_diversity = 8;
    const auto j = run_config_to_json(cfg);
    const RunConfig back = run_config_from_json(j);
    CHECK(back.algorithm == cfg.algorithm);
    CHECK(back.k == cfg.k);
    CHECK(back.mu == cfg.mu);
    CHECK(back.lambda == cfg.lambda);
    CHECK(back.budget == cfg.budget);
    CHECK(back.seed == cfg.seed);
    CHECK(back.target_diversity == cfg.target_diversity);
    CHECK(back.graph_path == cfg.graph_path);
    CHECK(back.graph->vertex_count() == 8);

    // null target stays null
    RunConfig no_target = escape_config();
    no_target.target_diversity.reset();
    const RunConfig back2 = run_config_from_json(run_config_to_json(no_target));
    CHECK_FALSE(back2.target_diversity.has_value());
}

TEST_CASE("populations serialize as sorted vertex lists plus their diversity") {
    const auto j = population_to_json(lemma3_pair());
    CHECK(j["diversity"] == 6);
    REQUIRE(j["members"].size() == 2);
    CHECK(j["members"][0] == nlohmann::json({1, 2, 7, 8}));
    CHECK(j["members"][1] == nlohmann::json({2, 4, 5, 6}));
}

TEST_CASE("landscape reports serialize with and without a checked population") {
    const Graph g = base_instance();
    LandscapeReport report;
    report.instance = "base";
    report.k = 4;
    report.mu = 2;
    report.oracle = optimal_diversity(g, 4, 2);

    auto j = landscape_report_to_json(report);
    CHECK(j["optimal_diversity"] == 8);
    CHECK(j["optimum_count"] == 1);
    CHECK(j["feasible_cover_count"] == 9);
    CHECK(j["checked_population"].is_null());

    report.checked_population = lemma3_pair();
    report.checked_result = is_strict_local_optimum(g, 4, lemma3_pair());
    j = landscape_report_to_json(report);
    CHECK(j["checked_population"]["is_strict_local_optimum"] == true);
    CHECK(j["checked_population"]["population"]["diversity"] == 6);
    CHECK(j["checked_population"]["best_move"]["delta"] == -2);
}

TEST_CASE("trial CSV uses the pinned header and the inf marker") {
    TrialRecord r;
    r.seed = 5;
    r.algorithm = Algorithm::MuPlusOne;
    r.mu = 2;
    r.lambda = 1;
    r.k = 4;
    r.final_diversity = 6;
    r.iterations_run = 10;
    r.accepted_count = 3;

    std::ostringstream out;
    write_trials_csv(out, std::vector<TrialRecord>{r});
    const std::string text = out.str();
    CHECK(text.find("seed,algorithm,mu,lambda,k,hitting_time,final_diversity,iterations_run,"
                    "accepted_count\n") != std::string::npos);
    CHECK(text.find("5,mu_plus_one,2,1,4,inf,6,10,3\n") != std::string::npos);

    // JSON uses null instead
    CHECK(trial_to_json(r)["hitting_time"].is_null());
}

TEST_CASE("load_graph resolves builtin names and rejects junk") {
    CHECK(load_graph("base")->vertex_count() == 8);
    CHECK(load_graph("extended:3")->vertex_count() == 14);
    CHECK_THROWS_AS(load_graph("extended:x"), std::invalid_argument);
    CHECK_THROWS_AS(load_graph("/nonexistent/file.graph"), std::invalid_argument);
}
