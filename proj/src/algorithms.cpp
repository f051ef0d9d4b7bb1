#include "divcover/algorithms.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

#include "divcover/errors.hpp"

namespace divcover {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::MuPlusOne: return "mu_plus_one";
        case Algorithm::MuPlusLambda: return "mu_plus_lambda";
        case Algorithm::OneMuOneMu: return "one_mu_one_mu";
    }
    return "unknown";
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "mu_plus_one") return Algorithm::MuPlusOne;
    if (name == "mu_plus_lambda") return Algorithm::MuPlusLambda;
    if (name == "one_mu_one_mu") return Algorithm::OneMuOneMu;
    throw std::invalid_argument("unknown algorithm `" + name + "`");
}

void RunConfig::validate() const {
    if (!graph) throw std::invalid_argument("run config has no graph");
    if (k < 0) throw std::invalid_argument("k must be nonnegative");
    if (mu < 1) throw std::invalid_argument("mu must be at least 1");
    if (algorithm == Algorithm::MuPlusLambda && lambda < 1)
        throw std::invalid_argument("lambda must be at least 1");
    if (budget < 0) throw std::invalid_argument("budget must be nonnegative");
}

std::int64_t capped_fitness(const Graph& g, int k, const VertexSet& s) {
    assert(s.width() == g.vertex_count());
    std::int64_t uncovered = 0;
    for (const auto& [u, v] : g.edges())
        if (!s.contains(u) && !s.contains(v)) ++uncovered;
    const std::int64_t oversize = std::max<std::int64_t>(0, s.size() - k);
    return kFitnessThreshold - (uncovered * (g.vertex_count() + 1) + oversize);
}

bool is_feasible(const Graph& g, int k, const VertexSet& s) {
    return capped_fitness(g, k, s) == kFitnessThreshold;
}

namespace {

/// Diversity of the population after dropping member `drop`, with counts and
/// size taken from `pool` (size M, survivors M-1).
std::int64_t diversity_without(const Population& pool, std::size_t drop) {
    const auto survivors = static_cast<std::int64_t>(pool.size()) - 1;
    const VertexSet& gone = pool.member(drop);
    std::int64_t d = 0;
    for (int v = 1; v <= pool.width(); ++v) {
        const std::int64_t c = pool.count(v) - (gone.contains(v) ? 1 : 0);
        d += c * (survivors - c);
    }
    return d;
}

std::uint64_t choose_saturating(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        const std::uint64_t factor = n - r + i;
        if (result > std::numeric_limits<std::uint64_t>::max() / factor)
            return std::numeric_limits<std::uint64_t>::max();
        result = result * factor / i;
    }
    return result;
}

} // namespace

std::size_t choose_removal_index(const Graph& g, int k, const Population& pool,
                                 std::size_t fresh_index, RandomStream& rng) {
    const std::size_t m = pool.size();
    if (fresh_index >= m) throw std::out_of_range("fresh offspring index out of range");

    std::int64_t gmin = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> fitness(m);
    for (std::size_t i = 0; i < m; ++i) {
        fitness[i] = capped_fitness(g, k, pool.member(i));
        gmin = std::min(gmin, fitness[i]);
    }

    // among the worst-fitness stratum, candidates whose removal leaves the
    // highest diversity
    std::vector<std::size_t> best;
    std::int64_t best_d = std::numeric_limits<std::int64_t>::min();
    for (std::size_t i = 0; i < m; ++i) {
        if (fitness[i] != gmin) continue;
        const std::int64_t d = diversity_without(pool, i);
        if (d > best_d) {
            best_d = d;
            best.assign(1, i);
        } else if (d == best_d) {
            best.push_back(i);
        }
    }

    // the fresh offspring is protected on ties
    if (best.size() >= 2) {
        const auto it = std::find(best.begin(), best.end(), fresh_index);
        if (it != best.end()) best.erase(it);
    }
    return best[rng.uniform_below(best.size())];
}

StepResult step_mu_plus_one(const Graph& g, int k, Population& pop, RandomStream& rng) {
    const std::size_t mu = pop.size();
    const std::size_t parent = rng.uniform_below(mu);
    VertexSet y = jump_and_repair(g, k, pop.member(parent), rng);

    std::int64_t gmin = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < mu; ++i)
        gmin = std::min(gmin, capped_fitness(g, k, pop.member(i)));
    if (capped_fitness(g, k, y) < gmin) return {false, false};

    pop.add(std::move(y));
    const std::size_t fresh = mu;
    const std::size_t victim = choose_removal_index(g, k, pop, fresh, rng);
    pop.remove_at(victim);
    return {true, victim != fresh};
}

std::vector<std::size_t> select_survivors(const Graph& g, int k,
                                          const std::vector<VertexSet>& pool, std::size_t mu,
                                          RandomStream& rng, std::uint64_t subset_budget) {
    if (pool.size() < mu)
        throw std::invalid_argument("selection pool smaller than the population size");

    std::vector<std::int64_t> fitness(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) fitness[i] = capped_fitness(g, k, pool[i]);

    std::vector<std::size_t> alive(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) alive[i] = i;

    // drop whole worst-fitness strata while at least mu individuals remain
    std::vector<std::size_t> worst;
    for (;;) {
        std::int64_t gmin = std::numeric_limits<std::int64_t>::max();
        for (std::size_t i : alive) gmin = std::min(gmin, fitness[i]);
        worst.clear();
        for (std::size_t i : alive)
            if (fitness[i] == gmin) worst.push_back(i);
        if (alive.size() - worst.size() < mu) break;
        std::erase_if(alive, [&](std::size_t i) { return fitness[i] == gmin; });
        if (alive.size() == mu) return alive;
    }
    if (alive.size() == mu) return alive;

    const std::size_t removals = alive.size() - mu;
    assert(removals < worst.size());

    const int n = g.vertex_count();
    std::vector<std::int64_t> counts(n, 0);
    for (std::size_t i : alive)
        for (int v : pool[i].vertices()) ++counts[v - 1];
    std::int64_t sum_c = 0, sum_c2 = 0;
    for (int v = 0; v < n; ++v) {
        sum_c += counts[v];
        sum_c2 += counts[v] * counts[v];
    }
    const auto survivors_count = static_cast<std::int64_t>(mu);

    const auto drop_member = [&](std::size_t i) {
        for (int v : pool[i].vertices()) {
            sum_c -= 1;
            sum_c2 -= 2 * counts[v - 1] - 1;
            counts[v - 1] -= 1;
        }
    };
    const auto undrop_member = [&](std::size_t i) {
        for (int v : pool[i].vertices()) {
            counts[v - 1] += 1;
            sum_c += 1;
            sum_c2 += 2 * counts[v - 1] - 1;
        }
    };

    std::vector<std::size_t> removed; // positions into `worst`

    if (choose_saturating(worst.size(), removals) <= subset_budget) {
        // exact: enumerate removal subsets of the worst stratum, keep the one
        // leaving maximal diversity, uniform among ties via reservoir
        std::vector<std::size_t> pick(removals), best_pick;
        std::int64_t best_d = std::numeric_limits<std::int64_t>::min();
        std::uint64_t tie_count = 0;

        const std::size_t w = worst.size();
        std::vector<std::size_t> stack;
        stack.reserve(removals);
        // depth-first combination enumeration with incremental count updates
        std::size_t next = 0;
        for (;;) {
            if (stack.size() == removals) {
                const std::int64_t d = survivors_count * sum_c - sum_c2;
                if (d > best_d) {
                    best_d = d;
                    best_pick = stack;
                    tie_count = 1;
                } else if (d == best_d) {
                    ++tie_count;
                    if (rng.uniform_below(tie_count) == 0) best_pick = stack;
                }
            }
            if (stack.size() < removals && next + (removals - stack.size()) <= w) {
                drop_member(worst[next]);
                stack.push_back(next);
                ++next;
                continue;
            }
            if (stack.empty()) break;
            next = stack.back();
            stack.pop_back();
            undrop_member(worst[next]);
            ++next;
        }
        removed = std::move(best_pick);
    } else {
        // greedy backward elimination: repeatedly drop the worst-stratum
        // member with the smallest diversity contribution
        std::vector<bool> gone(worst.size(), false);
        for (std::size_t round = 0; round < removals; ++round) {
            const auto remaining = static_cast<std::int64_t>(alive.size()) -
                                   static_cast<std::int64_t>(round) - 1;
            std::vector<std::size_t> best;
            std::int64_t best_d = std::numeric_limits<std::int64_t>::min();
            for (std::size_t wi = 0; wi < worst.size(); ++wi) {
                if (gone[wi]) continue;
                // diversity of the remaining set after dropping this member
                std::int64_t d = 0;
                const VertexSet& cand = pool[worst[wi]];
                for (int v = 1; v <= n; ++v) {
                    const std::int64_t c = counts[v - 1] - (cand.contains(v) ? 1 : 0);
                    d += c * (remaining - c);
                }
                if (d > best_d) {
                    best_d = d;
                    best.assign(1, wi);
                } else if (d == best_d) {
                    best.push_back(wi);
                }
            }
            const std::size_t chosen = best[rng.uniform_below(best.size())];
            gone[chosen] = true;
            drop_member(worst[chosen]);
            removed.push_back(chosen);
        }
    }

    std::vector<bool> removed_flag(worst.size(), false);
    for (std::size_t wi : removed) removed_flag[wi] = true;
    std::vector<std::size_t> out;
    out.reserve(mu);
    std::size_t wi = 0;
    for (std::size_t i : alive) {
        bool drop = false;
        if (wi < worst.size() && worst[wi] == i) {
            drop = removed_flag[wi];
            ++wi;
        }
        if (!drop) out.push_back(i);
    }
    assert(out.size() == mu);
    return out;
}

StepResult step_mu_plus_lambda(const Graph& g, int k, int lambda, Population& pop,
                               RandomStream& rng, std::uint64_t subset_budget) {
    const std::size_t mu = pop.size();
    std::vector<VertexSet> pool(pop.members().begin(), pop.members().end());
    pool.reserve(mu + lambda);
    for (int i = 0; i < lambda; ++i) {
        const std::size_t parent = rng.uniform_below(mu);
        pool.push_back(jump_and_repair(g, k, pop.member(parent), rng));
    }

    const auto survivors = select_survivors(g, k, pool, mu, rng, subset_budget);
    bool any_offspring = false;
    std::vector<VertexSet> next;
    next.reserve(mu);
    for (std::size_t i : survivors) {
        if (i >= mu) any_offspring = true;
        next.push_back(pool[i]);
    }
    pop = Population(std::move(next));
    return {any_offspring, any_offspring};
}

StepResult step_one_mu_one_mu(const Graph& g, int k, Population& pop, RandomStream& rng) {
    const std::size_t mu = pop.size();
    std::vector<VertexSet> offspring;
    offspring.reserve(mu);
    for (std::size_t i = 0; i < mu; ++i) {
        const std::size_t parent = rng.uniform_below(mu);
        offspring.push_back(jump_and_repair(g, k, pop.member(parent), rng));
    }
    for (const auto& y : offspring)
        if (!is_feasible(g, k, y)) return {false, false};

    Population candidate(std::move(offspring));
    if (total_hamming(candidate) < total_hamming(pop)) return {false, false};
    pop = std::move(candidate);
    return {true, true};
}

namespace {

Population auto_initial_population(const Graph& g, const RunConfig& cfg, RandomStream& rng) {
    const auto cover = initial_cover(g, cfg.k, rng);
    if (!cover)
        throw InfeasibleError("no cover of size <= " + std::to_string(cfg.k) +
                              " found within the initializer budget");
    std::vector<VertexSet> members;
    members.reserve(cfg.mu);
    for (int j = 0; j < cfg.mu; ++j) {
        VertexSet s = *cover;
        if (s.size() < cfg.k) {
            std::vector<int> absent;
            for (int v = 1; v <= g.vertex_count(); ++v)
                if (!s.contains(v)) absent.push_back(v);
            while (s.size() < cfg.k) {
                const auto idx = static_cast<std::size_t>(rng.uniform_below(absent.size()));
                s.insert(absent[idx]);
                absent[idx] = absent.back();
                absent.pop_back();
            }
        }
        members.push_back(std::move(s));
    }
    return Population(std::move(members));
}

RunResult run_loop(const RunConfig& cfg, RandomStream& rng, Population pop) {
    const Graph& g = *cfg.graph;

    TrialRecord record;
    record.seed = cfg.seed;
    record.algorithm = cfg.algorithm;
    record.mu = cfg.mu;
    record.lambda = cfg.algorithm == Algorithm::MuPlusLambda ? cfg.lambda : 1;
    record.k = cfg.k;

    std::int64_t diversity = total_hamming(pop);
    if (cfg.target_diversity && diversity >= *cfg.target_diversity) record.hitting_time = 0;

    for (std::int64_t iter = 1; iter <= cfg.budget && !record.hitting_time; ++iter) {
        StepResult step;
        switch (cfg.algorithm) {
            case Algorithm::MuPlusOne:
                step = step_mu_plus_one(g, cfg.k, pop, rng);
                break;
            case Algorithm::MuPlusLambda:
                step = step_mu_plus_lambda(g, cfg.k, cfg.lambda, pop, rng, cfg.subset_budget);
                break;
            case Algorithm::OneMuOneMu:
                step = step_one_mu_one_mu(g, cfg.k, pop, rng);
                break;
        }
        if (step.accepted) ++record.accepted_count;
        record.iterations_run = iter;
        diversity = total_hamming(pop);
        if (cfg.target_diversity && diversity >= *cfg.target_diversity)
            record.hitting_time = iter;
    }

    record.final_diversity = diversity;
    return {std::move(record), std::move(pop)};
}

} // namespace

RunResult run(const RunConfig& cfg, Population initial) {
    cfg.validate();
    if (static_cast<int>(initial.size()) != cfg.mu)
        throw std::invalid_argument("initial population size does not match mu");
    if (initial.width() != cfg.graph->vertex_count())
        throw std::invalid_argument("initial population width does not match the graph");
    RandomStream rng(cfg.seed);
    return run_loop(cfg, rng, std::move(initial));
}

RunResult run(const RunConfig& cfg) {
    cfg.validate();
    // the initializer draws from the run's stream before the loop does
    RandomStream rng(cfg.seed);
    Population start = auto_initial_population(*cfg.graph, cfg, rng);
    return run_loop(cfg, rng, std::move(start));
}

} // namespace divcover
