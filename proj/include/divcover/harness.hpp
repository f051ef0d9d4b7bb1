#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "divcover/algorithms.hpp"
#include "divcover/landscape.hpp"

namespace divcover {

inline constexpr const char* kVersion = "0.1.0";

enum class StartPreset { Auto, Lemma3Pair, Lemma4, Extended, Explicit };

std::string to_string(StartPreset p);
StartPreset start_preset_from_string(const std::string& name);

struct ExperimentSpec {
    RunConfig base;
    std::int64_t trial_count = 1;
    std::uint64_t seed_base = 0; // trial t runs with seed seed_base + t
    StartPreset start = StartPreset::Auto;
    std::optional<std::vector<VertexSet>> explicit_start;
};

/// Materializes a start population for the given preset, or nullopt for
/// Auto (the run then self-initializes). Validates width, population size
/// and feasibility against cfg.
std::optional<Population> make_start_population(const RunConfig& cfg, StartPreset start,
                                                const std::optional<std::vector<VertexSet>>& explicit_members = std::nullopt);

/// trial_count independent runs, trial t seeded seed_base + t. Results are
/// merged in seed order, so the output is identical for any worker count.
/// Run-level errors are rethrown tagged with the failing trial index.
std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec, int workers = 1);

struct EstimateResult {
    std::int64_t samples = 0;
    std::int64_t successes = 0;
    double frequency = 0.0;
    std::int64_t optimal_diversity = 0;
};

/// Monte Carlo estimate of the per-iteration success probability of the
/// wholesale-replacement scheme: each sample draws mu offspring from `start`
/// (independently uniform parents, jump-and-repair) and succeeds when all
/// are feasible and their multiset attains the oracle optimum.
EstimateResult estimate_success(const Graph& g, int k, int mu, const Population& start,
                                std::int64_t samples, RandomStream& rng);

/// Fraction of remove-and-repair draws from x that produce exactly `target`
/// before any padding.
double estimate_prepad_hit(const Graph& g, const VertexSet& x, const VertexSet& target,
                           std::int64_t samples, RandomStream& rng);

/// Exact nonnegative rational, normalized; large enough for the operator
/// probability arithmetic on oracle-scale instances.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    Rational operator+(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    friend bool operator==(const Rational&, const Rational&) = default;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Exact per-batch success probability of the wholesale-replacement scheme
/// from `start`, by enumerating every removal subset and padding completion:
/// offspring are i.i.d. with the parent-averaged outcome distribution, and
/// the batch succeeds when its multiset is one of the oracle's optimal
/// multisets. Requires the oracle witness list to be complete (throws
/// std::invalid_argument when the witness cap truncated it).
Rational exact_success_probability(const Graph& g, int k, int mu, const Population& start);

struct DominanceDecile {
    std::int64_t t = 0;
    double empirical_survival = 0.0;
    double bound_survival = 0.0;
    double slack = 0.0;
    bool ok = false;
};

struct DominanceReport {
    double p0 = 0.0;
    std::size_t trials = 0;
    std::size_t finite = 0;
    std::optional<double> empirical_mean_hitting_time; // over finite times
    double geometric_mean = 0.0;                       // 1 / p0
    std::vector<DominanceDecile> deciles;
    double max_excess = 0.0; // max over deciles of empirical - (bound + slack)
    bool holds = false;
    bool inconclusive = false;
    std::string note;
};

/// One-sided stochastic-dominance check of the hitting times against
/// Geom(p0): at each empirical decile t the empirical survival P(T > t) must
/// stay within the 99% binomial confidence slack above (1-p0)^t. Records
/// without a finite hitting time count as T > t everywhere; with no finite
/// time at all the report is inconclusive.
DominanceReport dominance_report(std::span<const TrialRecord> records, double p0);

/// 2^(-k*mu), the asymptotic per-iteration success reference.
double theorem1_asymptotic(int k, int mu);

/// 2^(-k*mu) * (1 - (k*mu)^2 / n) when (k*mu)^2 < n, nullopt otherwise
/// (the finite-size correction is only meaningful in that regime).
std::optional<double> theorem1_finite(int k, int mu, int n);

// ---- serialization ----

/// Resolves "base", "extended:<m>" or a file path to a shared graph.
std::shared_ptr<const Graph> load_graph(const std::string& path_or_name);

nlohmann::json run_config_to_json(const RunConfig& cfg);
/// Loads the graph named by "graph_path". Keys: algorithm, k, mu, lambda,
/// budget, seed, target_diversity, graph_path.
RunConfig run_config_from_json(const nlohmann::json& j);

nlohmann::json trial_to_json(const TrialRecord& r);
nlohmann::json population_to_json(const Population& p);
nlohmann::json landscape_report_to_json(const LandscapeReport& r);
nlohmann::json estimate_to_json(const EstimateResult& r);
nlohmann::json dominance_to_json(const DominanceReport& r);

/// CSV with a versioned comment line, the fixed header
/// seed,algorithm,mu,lambda,k,hitting_time,final_diversity,iterations_run,accepted_count
/// and one row per record; a missing hitting time is the literal `inf`.
void write_trials_csv(std::ostream& out, std::span<const TrialRecord> records);

} // namespace divcover
