#include "divcover/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "divcover/errors.hpp"
#include "divcover/mutation.hpp"

namespace divcover {

std::string to_string(StartPreset p) {
    switch (p) {
        case StartPreset::Auto: return "auto";
        case StartPreset::Lemma3Pair: return "lemma3_pair";
        case StartPreset::Lemma4: return "lemma4";
        case StartPreset::Extended: return "extended";
        case StartPreset::Explicit: return "explicit";
    }
    return "unknown";
}

StartPreset start_preset_from_string(const std::string& name) {
    if (name == "auto") return StartPreset::Auto;
    if (name == "lemma3_pair") return StartPreset::Lemma3Pair;
    if (name == "lemma4") return StartPreset::Lemma4;
    if (name == "extended") return StartPreset::Extended;
    if (name == "explicit") return StartPreset::Explicit;
    throw std::invalid_argument("unknown start preset `" + name + "`");
}

namespace {

void require_feasible_members(const Graph& g, int k, const Population& pop,
                              const std::string& what) {
    for (const auto& s : pop.members())
        if (!is_feasible(g, k, s))
            throw std::invalid_argument(what + " contains an infeasible member " +
                                        s.vertex_list_text() + " for k = " + std::to_string(k));
}

} // namespace

std::optional<Population> make_start_population(
    const RunConfig& cfg, StartPreset start,
    const std::optional<std::vector<VertexSet>>& explicit_members) {
    cfg.validate();
    const Graph& g = *cfg.graph;

    switch (start) {
        case StartPreset::Auto:
            return std::nullopt;
        case StartPreset::Lemma3Pair: {
            if (cfg.mu != 2)
                throw std::invalid_argument("lemma3_pair needs mu = 2, got " +
                                            std::to_string(cfg.mu));
            if (g.vertex_count() != 8)
                throw std::invalid_argument("lemma3_pair lives on the 8-vertex base instance");
            Population pop = lemma3_pair();
            require_feasible_members(g, cfg.k, pop, "lemma3_pair start");
            return pop;
        }
        case StartPreset::Lemma4: {
            if (g.vertex_count() != 8)
                throw std::invalid_argument("lemma4 start lives on the 8-vertex base instance");
            Population pop = lemma4_population(cfg.mu);
            require_feasible_members(g, cfg.k, pop, "lemma4 start");
            return pop;
        }
        case StartPreset::Extended: {
            const int n = g.vertex_count();
            if (n <= 8 || (n - 8) % 2 != 0)
                throw std::invalid_argument(
                    "extended start needs an extended instance (8 + 2m vertices)");
            const int m = (n - 8) / 2;
            if (cfg.k != m + 4)
                throw std::invalid_argument("extended start needs k = m + 4 = " +
                                            std::to_string(m + 4));
            Population pop = extended_population(cfg.mu, m);
            require_feasible_members(g, cfg.k, pop, "extended start");
            return pop;
        }
        case StartPreset::Explicit: {
            if (!explicit_members)
                throw std::invalid_argument("explicit start given without members");
            if (static_cast<int>(explicit_members->size()) != cfg.mu)
                throw std::invalid_argument("explicit start size does not match mu");
            Population pop(*explicit_members);
            if (pop.width() != g.vertex_count())
                throw std::invalid_argument("explicit start width does not match the graph");
            require_feasible_members(g, cfg.k, pop, "explicit start");
            return pop;
        }
    }
    throw std::invalid_argument("unknown start preset");
}

std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec, int workers) {
    if (spec.trial_count < 1) throw std::invalid_argument("trial count must be at least 1");
    spec.base.validate();
    // materialize preset starts once; Auto initializes inside each run
    const auto start = make_start_population(spec.base, spec.start, spec.explicit_start);

    const auto trials = static_cast<std::size_t>(spec.trial_count);
    std::vector<TrialRecord> records(trials);
    std::vector<std::pair<std::size_t, std::exception_ptr>> failures;
    std::mutex failures_mutex;
    std::atomic<std::size_t> cursor{0};

    const auto worker = [&]() {
        for (;;) {
            const std::size_t t = cursor.fetch_add(1);
            if (t >= trials) return;
            try {
                RunConfig cfg = spec.base;
                cfg.seed = spec.seed_base + t;
                RunResult result = start ? run(cfg, *start) : run(cfg);
                records[t] = result.record;
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failures_mutex);
                failures.emplace_back(t, std::current_exception());
            }
        }
    };

    const int thread_count = std::max(1, std::min<int>(workers, static_cast<int>(trials)));
    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(thread_count);
        for (int i = 0; i < thread_count; ++i) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
    }

    if (!failures.empty()) {
        std::sort(failures.begin(), failures.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        const auto& [index, error] = failures.front();
        const std::string tag = "trial " + std::to_string(index) + ": ";
        try {
            std::rethrow_exception(error);
        } catch (const InfeasibleError& e) {
            throw InfeasibleError(tag + e.what());
        } catch (const OracleBudgetError& e) {
            throw OracleBudgetError(tag + e.what());
        } catch (const std::exception& e) {
            throw std::runtime_error(tag + e.what());
        }
    }
    return records;
}

EstimateResult estimate_success(const Graph& g, int k, int mu, const Population& start,
                                std::int64_t samples, RandomStream& rng) {
    if (samples < 1) throw std::invalid_argument("sample count must be at least 1");
    if (static_cast<int>(start.size()) != mu)
        throw std::invalid_argument("start population size does not match mu");
    require_feasible_members(g, k, start, "estimate start");

    const auto oracle = optimal_diversity(g, k, mu);

    EstimateResult result;
    result.samples = samples;
    result.optimal_diversity = oracle.optimal_diversity;

    const auto mu_s = static_cast<std::size_t>(mu);
    std::vector<VertexSet> batch;
    batch.reserve(mu_s);
    for (std::int64_t s = 0; s < samples; ++s) {
        batch.clear();
        bool feasible = true;
        for (std::size_t i = 0; i < mu_s; ++i) {
            const std::size_t parent = rng.uniform_below(mu_s);
            batch.push_back(jump_and_repair(g, k, start.member(parent), rng));
            if (batch.back().size() > k) feasible = false;
        }
        if (!feasible) continue;
        const Population candidate(batch);
        if (total_hamming(candidate) == oracle.optimal_diversity) ++result.successes;
    }
    result.frequency = static_cast<double>(result.successes) / static_cast<double>(samples);
    return result;
}

double estimate_prepad_hit(const Graph& g, const VertexSet& x, const VertexSet& target,
                           std::int64_t samples, RandomStream& rng) {
    if (samples < 1) throw std::invalid_argument("sample count must be at least 1");
    std::int64_t hits = 0;
    for (std::int64_t s = 0; s < samples; ++s)
        if (remove_and_repair(g, x, rng) == target) ++hits;
    return static_cast<double>(hits) / static_cast<double>(samples);
}

// ---- exact operator probability ----

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    while (b) {
        const std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    const __int128 p = static_cast<__int128>(a) * b;
    if (p > std::numeric_limits<std::int64_t>::max() ||
        p < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("rational arithmetic overflow");
    return static_cast<std::int64_t>(p);
}

std::uint64_t choose_exact(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= r; ++i) result = result * (n - r + i) / i;
    return result;
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = gcd64(num == 0 ? den : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    const std::int64_t g = gcd64(den, o.den);
    const std::int64_t scale = o.den / g;
    return Rational(checked_mul(num, scale) + checked_mul(o.num, den / g),
                    checked_mul(den, scale));
}

Rational Rational::operator*(const Rational& o) const {
    const std::int64_t g1 = gcd64(num, o.den);
    const std::int64_t g2 = gcd64(o.num, den);
    return Rational(checked_mul(num / g1, o.num / g2), checked_mul(den / g2, o.den / g1));
}

namespace {

using Distribution = std::map<VertexSet, Rational, LexLess>;

/// Exact outcome distribution of one jump-and-repair application to `parent`,
/// restricted to feasible results (oversized outcomes are dropped, so the
/// distribution sums to the feasibility probability).
Distribution offspring_distribution(const Graph& g, int k, const VertexSet& parent) {
    const auto members = parent.vertices();
    const std::size_t bits = members.size();
    if (bits > 62) throw std::invalid_argument("parent too large for exact enumeration");
    const std::int64_t subset_weight = std::int64_t{1} << bits; // each subset 2^-|x|

    Distribution dist;
    const int n = g.vertex_count();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        VertexSet removal(parent.width());
        for (std::size_t b = 0; b < bits; ++b)
            if ((mask >> b) & 1u) removal.insert(members[b]);
        VertexSet pre = apply_removal_and_repair(g, parent, removal);
        if (pre.size() > k) continue;
        if (pre.size() == k) {
            const Rational p(1, subset_weight);
            auto [it, inserted] = dist.try_emplace(std::move(pre), p);
            if (!inserted) it->second = it->second + p;
            continue;
        }
        // pad completions: uniformly random (k - |pre|)-subset of the absent vertices
        std::vector<int> absent;
        for (int v = 1; v <= n; ++v)
            if (!pre.contains(v)) absent.push_back(v);
        const int need = k - pre.size();
        const auto completions =
            static_cast<std::int64_t>(choose_exact(absent.size(), need));
        const Rational p(1, checked_mul(subset_weight, completions));

        std::vector<int> pick(need);
        for (int i = 0; i < need; ++i) pick[i] = i;
        for (;;) {
            VertexSet out = pre;
            for (int i = 0; i < need; ++i) out.insert(absent[pick[i]]);
            auto [it, inserted] = dist.try_emplace(std::move(out), p);
            if (!inserted) it->second = it->second + p;
            int i = need - 1;
            while (i >= 0 && pick[i] == static_cast<int>(absent.size()) - (need - i)) --i;
            if (i < 0) break;
            ++pick[i];
            for (int t = i + 1; t < need; ++t) pick[t] = pick[t - 1] + 1;
        }
    }
    return dist;
}

} // namespace

Rational exact_success_probability(const Graph& g, int k, int mu, const Population& start) {
    if (static_cast<int>(start.size()) != mu)
        throw std::invalid_argument("start population size does not match mu");
    require_feasible_members(g, k, start, "exact-probability start");

    const auto oracle =
        optimal_diversity(g, k, mu, kDefaultEnumerationBudget, kDefaultPopulationOracleBudget,
                          /*witness_cap=*/1'000'000);
    if (oracle.optimum_count != oracle.witnesses.size())
        throw std::invalid_argument("witness cap truncated the optimal multiset list");

    // parents are drawn independently and uniformly, so offspring are i.i.d.
    // with the parent-averaged distribution
    Distribution marginal;
    for (const auto& parent : start.members()) {
        const Distribution dist = offspring_distribution(g, k, parent);
        for (const auto& [cover, p] : dist) {
            const Rational scaled = p * Rational(1, static_cast<std::int64_t>(start.size()));
            auto [it, inserted] = marginal.try_emplace(cover, scaled);
            if (!inserted) it->second = it->second + scaled;
        }
    }

    std::int64_t mu_factorial = 1;
    for (int i = 2; i <= mu; ++i) mu_factorial = checked_mul(mu_factorial, i);

    Rational total(0, 1);
    for (const auto& witness : oracle.witnesses) {
        // multiset multiplicities
        std::map<VertexSet, int, LexLess> mult;
        for (const auto& c : witness) ++mult[c];

        Rational p(mu_factorial, 1);
        bool reachable = true;
        for (const auto& [cover, count] : mult) {
            const auto it = marginal.find(cover);
            if (it == marginal.end()) {
                reachable = false;
                break;
            }
            std::int64_t perm = 1;
            for (int i = 2; i <= count; ++i) perm = checked_mul(perm, i);
            p = p * Rational(1, perm);
            for (int i = 0; i < count; ++i) p = p * it->second;
        }
        if (reachable) total = total + p;
    }
    return total;
}

// ---- dominance statistics ----

DominanceReport dominance_report(std::span<const TrialRecord> records, double p0) {
    if (!(p0 > 0.0 && p0 < 1.0)) throw std::invalid_argument("p0 must lie in (0, 1)");
    if (records.empty()) throw std::invalid_argument("no records");

    DominanceReport report;
    report.p0 = p0;
    report.trials = records.size();
    report.geometric_mean = 1.0 / p0;

    std::vector<std::int64_t> finite;
    for (const auto& r : records)
        if (r.hitting_time) finite.push_back(*r.hitting_time);
    report.finite = finite.size();

    if (finite.empty()) {
        report.inconclusive = true;
        report.holds = false;
        report.note = "no finite hitting times; nothing to compare against the geometric bound";
        return report;
    }
    std::sort(finite.begin(), finite.end());
    report.empirical_mean_hitting_time =
        static_cast<double>(std::accumulate(finite.begin(), finite.end(), std::int64_t{0})) /
        static_cast<double>(finite.size());

    // one-sided 99% normal quantile for the per-decile binomial slack
    constexpr double z99 = 2.3263478740408408;
    const auto n_total = static_cast<double>(records.size());

    report.max_excess = -1.0;
    for (int decile = 10; decile <= 90; decile += 10) {
        const std::size_t idx =
            std::min(finite.size() - 1, finite.size() * static_cast<std::size_t>(decile) / 100);
        const std::int64_t t = finite[idx];

        std::size_t above = 0;
        for (const auto& r : records)
            if (!r.hitting_time || *r.hitting_time > t) ++above;

        DominanceDecile row;
        row.t = t;
        row.empirical_survival = static_cast<double>(above) / n_total;
        row.bound_survival = std::pow(1.0 - p0, static_cast<double>(t));
        row.slack = z99 * std::sqrt(row.bound_survival * (1.0 - row.bound_survival) / n_total);
        row.ok = row.empirical_survival <= row.bound_survival + row.slack;
        report.max_excess = std::max(report.max_excess, row.empirical_survival -
                                                            (row.bound_survival + row.slack));
        report.deciles.push_back(row);
    }

    report.holds = std::all_of(report.deciles.begin(), report.deciles.end(),
                               [](const DominanceDecile& d) { return d.ok; });
    if (records.size() != finite.size())
        report.note = std::to_string(records.size() - finite.size()) +
                      " record(s) never reached the target and count as T > t everywhere";
    return report;
}

double theorem1_asymptotic(int k, int mu) { return std::exp2(-static_cast<double>(k) * mu); }

std::optional<double> theorem1_finite(int k, int mu, int n) {
    const double km = static_cast<double>(k) * mu;
    if (km * km >= static_cast<double>(n)) return std::nullopt;
    return theorem1_asymptotic(k, mu) * (1.0 - km * km / static_cast<double>(n));
}

// ---- serialization ----

std::shared_ptr<const Graph> load_graph(const std::string& path_or_name) {
    if (path_or_name == "base") return std::make_shared<const Graph>(base_instance());
    if (path_or_name.rfind("extended:", 0) == 0) {
        const std::string arg = path_or_name.substr(9);
        int m = 0;
        try {
            m = std::stoi(arg);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad extended instance spec `" + path_or_name + "`");
        }
        return std::make_shared<const Graph>(extended_instance(m));
    }
    std::ifstream in(path_or_name);
    if (!in) throw std::invalid_argument("cannot open graph file `" + path_or_name + "`");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return std::make_shared<const Graph>(parse_graph(buffer.str()));
}

nlohmann::json run_config_to_json(const RunConfig& cfg) {
    nlohmann::json j{{"algorithm", to_string(cfg.algorithm)},
                     {"k", cfg.k},
                     {"mu", cfg.mu},
                     {"lambda", cfg.lambda},
                     {"budget", cfg.budget},
                     {"seed", cfg.seed},
                     {"graph_path", cfg.graph_path}};
    if (cfg.target_diversity)
        j["target_diversity"] = *cfg.target_diversity;
    else
        j["target_diversity"] = nullptr;
    return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
    RunConfig cfg;
    cfg.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
    cfg.k = j.at("k").get<int>();
    cfg.mu = j.at("mu").get<int>();
    cfg.lambda = j.value("lambda", 1);
    cfg.budget = j.at("budget").get<std::int64_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("target_diversity") && !j.at("target_diversity").is_null())
        cfg.target_diversity = j.at("target_diversity").get<std::int64_t>();
    cfg.graph_path = j.at("graph_path").get<std::string>();
    cfg.graph = load_graph(cfg.graph_path);
    cfg.validate();
    return cfg;
}

nlohmann::json trial_to_json(const TrialRecord& r) {
    nlohmann::json j{{"seed", r.seed},
                     {"algorithm", to_string(r.algorithm)},
                     {"mu", r.mu},
                     {"lambda", r.lambda},
                     {"k", r.k},
                     {"final_diversity", r.final_diversity},
                     {"iterations_run", r.iterations_run},
                     {"accepted_count", r.accepted_count}};
    if (r.hitting_time)
        j["hitting_time"] = *r.hitting_time;
    else
        j["hitting_time"] = nullptr;
    return j;
}

nlohmann::json population_to_json(const Population& p) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& s : p.members()) members.push_back(s.vertices());
    return nlohmann::json{{"members", members}, {"diversity", total_hamming(p)}};
}

nlohmann::json landscape_report_to_json(const LandscapeReport& r) {
    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& w : r.oracle.witnesses) {
        nlohmann::json pop = nlohmann::json::array();
        for (const auto& s : w) pop.push_back(s.vertices());
        witnesses.push_back(pop);
    }
    nlohmann::json j{{"instance", r.instance},
                     {"k", r.k},
                     {"mu", r.mu},
                     {"feasible_cover_count", r.oracle.feasible_cover_count},
                     {"optimal_diversity", r.oracle.optimal_diversity},
                     {"optimum_count", r.oracle.optimum_count},
                     {"optimal_witnesses", witnesses}};
    if (r.checked_population && r.checked_result) {
        nlohmann::json checked{{"population", population_to_json(*r.checked_population)},
                               {"is_strict_local_optimum",
                                r.checked_result->is_strict_local_optimum}};
        if (r.checked_result->best_move) {
            checked["best_move"] = {
                {"member_index", r.checked_result->best_move->member_index},
                {"replacement", r.checked_result->best_move->replacement.vertices()},
                {"delta", r.checked_result->best_move->delta}};
        }
        j["checked_population"] = checked;
    } else {
        j["checked_population"] = nullptr;
    }
    return j;
}

nlohmann::json estimate_to_json(const EstimateResult& r) {
    return nlohmann::json{{"samples", r.samples},
                          {"successes", r.successes},
                          {"frequency", r.frequency},
                          {"optimal_diversity", r.optimal_diversity}};
}

nlohmann::json dominance_to_json(const DominanceReport& r) {
    nlohmann::json deciles = nlohmann::json::array();
    for (const auto& d : r.deciles)
        deciles.push_back({{"t", d.t},
                           {"empirical_survival", d.empirical_survival},
                           {"bound_survival", d.bound_survival},
                           {"slack", d.slack},
                           {"ok", d.ok}});
    nlohmann::json j{{"p0", r.p0},
                     {"trials", r.trials},
                     {"finite", r.finite},
                     {"geometric_mean", r.geometric_mean},
                     {"deciles", deciles},
                     {"max_excess", r.max_excess},
                     {"holds", r.holds},
                     {"inconclusive", r.inconclusive},
                     {"note", r.note}};
    if (r.empirical_mean_hitting_time)
        j["empirical_mean_hitting_time"] = *r.empirical_mean_hitting_time;
    else
        j["empirical_mean_hitting_time"] = nullptr;
    return j;
}

void write_trials_csv(std::ostream& out, std::span<const TrialRecord> records) {
    out << "# divcover " << kVersion << "\n";
    out << "seed,algorithm,mu,lambda,k,hitting_time,final_diversity,iterations_run,"
           "accepted_count\n";
    for (const auto& r : records) {
        out << r.seed << ',' << to_string(r.algorithm) << ',' << r.mu << ',' << r.lambda << ','
            << r.k << ',';
        if (r.hitting_time)
            out << *r.hitting_time;
        else
            out << "inf";
        out << ',' << r.final_diversity << ',' << r.iterations_run << ',' << r.accepted_count
            << '\n';
    }
}

} // namespace divcover
