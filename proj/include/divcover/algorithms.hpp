#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "divcover/covers.hpp"
#include "divcover/diversity.hpp"
#include "divcover/graph.hpp"
#include "divcover/mutation.hpp"
#include "divcover/rng.hpp"

namespace divcover {

enum class Algorithm { MuPlusOne, MuPlusLambda, OneMuOneMu };

/// "mu_plus_one", "mu_plus_lambda", "one_mu_one_mu"
std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

/// Exact-selection cap of the (mu+lambda) survivor step: subsets are
/// enumerated while C(stratum, removals) stays at or below this, greedy
/// backward elimination takes over beyond it.
inline constexpr std::uint64_t kDefaultSubsetBudget = 100'000;

struct RunConfig {
    std::shared_ptr<const Graph> graph;
    std::string graph_path; // "base", "extended:<m>" or a file path
    Algorithm algorithm = Algorithm::OneMuOneMu;
    int k = 0;
    int mu = 1;
    int lambda = 1;
    std::int64_t budget = 0;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> target_diversity;
    std::uint64_t subset_budget = kDefaultSubsetBudget;

    void validate() const; // throws std::invalid_argument
};

struct TrialRecord {
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::OneMuOneMu;
    int mu = 0;
    int lambda = 0;
    int k = 0;
    std::optional<std::int64_t> hitting_time; // nullopt: target never reached
    std::int64_t final_diversity = 0;
    std::int64_t iterations_run = 0;
    std::int64_t accepted_count = 0;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Quality threshold B of the capped fitness. Feasible solutions (covers of
/// size <= k) sit exactly at the threshold, so selection pressure above it
/// comes from diversity alone.
inline constexpr std::int64_t kFitnessThreshold = 0;

/// B - penalty with penalty = (#uncovered edges) * (n+1) + max(0, |s| - k).
/// Zero iff s is feasible; larger is better.
std::int64_t capped_fitness(const Graph& g, int k, const VertexSet& s);

bool is_feasible(const Graph& g, int k, const VertexSet& s);

struct StepResult {
    bool accepted = false;           // offspring passed the acceptance gate
    bool offspring_survived = false; // some fresh offspring is in the new population
};

/// One iteration of the elitist single-offspring scheme: mutate a uniformly
/// chosen parent; if the offspring's capped fitness reaches the population
/// minimum, add it, then remove one individual from the minimum-fitness
/// stratum whose removal leaves the diversity maximal. When that choice is a
/// tie of size >= 2 containing the fresh offspring, the offspring is
/// protected and an old member is removed (uniformly among the rest).
StepResult step_mu_plus_one(const Graph& g, int k, Population& pop, RandomStream& rng);

/// One iteration with lambda offspring, each from an independently uniform
/// parent. Whole minimum-fitness strata are discarded while at least mu
/// individuals would remain; the final tie inside the worst stratum is broken
/// by the subset of required size whose removal leaves the survivors'
/// diversity maximal (exact enumeration up to subset_budget, greedy backward
/// elimination beyond), equally good subsets chosen uniformly at random.
StepResult step_mu_plus_lambda(const Graph& g, int k, int lambda, Population& pop,
                               RandomStream& rng,
                               std::uint64_t subset_budget = kDefaultSubsetBudget);

/// One iteration of the wholesale-replacement scheme: mu offspring form a
/// candidate population P'; P is replaced by P' iff every member of P' is
/// feasible and the diversity does not decrease.
StepResult step_one_mu_one_mu(const Graph& g, int k, Population& pop, RandomStream& rng);

/// Survivor selection of the (mu+lambda) step, exposed for direct testing.
/// Returns the ascending pool indices that survive.
std::vector<std::size_t> select_survivors(const Graph& g, int k,
                                          const std::vector<VertexSet>& pool,
                                          std::size_t mu, RandomStream& rng,
                                          std::uint64_t subset_budget = kDefaultSubsetBudget);

/// Removal choice of the (mu+1) step after the offspring was admitted:
/// pool has mu+1 members, fresh_index names the offspring. Returns the index
/// to remove.
std::size_t choose_removal_index(const Graph& g, int k, const Population& pool,
                                 std::size_t fresh_index, RandomStream& rng);

struct RunResult {
    TrialRecord record;
    Population final_population;
};

/// Runs the configured algorithm from an explicit feasible start population.
RunResult run(const RunConfig& cfg, Population initial);

/// Auto-initialized run: initial_cover() supplies one cover of size <= k
/// (InfeasibleError when it fails), and the start population is mu copies of
/// it, each padded independently to size exactly k with uniformly chosen
/// absent vertices.
RunResult run(const RunConfig& cfg);

} // namespace divcover
