#include "bergelab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "bergelab/combinatorics.hpp"
#include "bergelab/error.hpp"
#include "bergelab/sparsifier.hpp"

namespace bergelab {

namespace {

using nlohmann::json;

constexpr double kWilsonZ = 1.959963984540054;

[[noreturn]] void invalid(const std::string& what) {
    throw Error(ErrorCode::ConfigInvalid, what);
}

template <typename T>
T get_number(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number()) invalid(std::string("'") + key + "' must be a number");
    if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer() || v.get<double>() < 0) invalid(std::string("'") + key + "' must be a non-negative integer");
    }
    return v.get<T>();
}

// Runs fn(i) for i in [0, count) on `workers` threads. Results are written by
// index, so the merge order does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

json stats_json(const SolveStats& s) {
    return {{"nodes", s.nodes}, {"rotations", s.rotations}, {"exhaustive", s.exhaustive}};
}

Outcome solve_outcome(const std::string& metric, const SolveResult& res) {
    return {metric, to_string(res.status), stats_json(res.stats)};
}

Outcome flag(const std::string& metric, bool value) {
    return {metric, value ? "yes" : "no", json::object()};
}

struct TrialAudit {
    std::size_t certificates = 0;
    std::vector<std::string> violations;
};

// Necessary conditions every reported certificate must satisfy.
void audit_certificate(const Hypergraph& h, const SolveResult& res, const std::string& where, TrialAudit& audit) {
    if (res.status != SolveStatus::found || !res.certificate) return;
    ++audit.certificates;
    const auto& c = *res.certificate;
    const auto verdict = verify_certificate(h, c);
    if (!verdict.valid || !verdict.hamiltonian) audit.violations.push_back(where + ": certificate does not verify");
    if (h.n() >= 3 && !c.weak && h.min_degree() < 2) audit.violations.push_back(where + ": ordinary cycle with min degree < 2");
    if (h.n() >= 3 && c.weak && h.min_degree() < 1) audit.violations.push_back(where + ": weak cycle with an isolated vertex");
    if (h.n() >= 4 && h.r() == 3 && degree1_triple_obstruction(h))
        audit.violations.push_back(where + ": cycle despite a degree-1 triple witness");
}

// Random process up to T_2 (or T_1 when k = 1); returns the edges in order
// and the stopping times.
struct ProcessRun {
    std::vector<std::vector<Vertex>> edges;
    std::size_t t1 = 0;
    std::size_t t2 = 0;
};

ProcessRun run_process(std::size_t n, std::size_t r, std::uint64_t seed, std::size_t k) {
    ProcessRun run;
    ProcessStream stream(n, r, seed);
    MinDegreeTracker tracker(n, k);
    while (tracker.min_degree() < k) {
        const auto rank = stream.next();
        if (!rank) throw Error(ErrorCode::Unreachable, "process ended before the minimum degree was reached");
        run.edges.push_back(colex_unrank(*rank, r));
        tracker.add(run.edges.back());
        if (!run.t1 && tracker.min_degree() >= 1) run.t1 = run.edges.size();
    }
    run.t2 = run.edges.size();
    return run;
}

Hypergraph prefix(const ProcessRun& run, std::size_t n, std::size_t r, std::size_t t) {
    return Hypergraph(n, r, std::vector<std::vector<Vertex>>(run.edges.begin(), run.edges.begin() + t));
}

SolveBudget trial_budget(const ExperimentConfig& cfg, std::uint64_t trial_seed, std::uint64_t salt) {
    SolveBudget b = cfg.budget;
    b.seed = derive_seed(trial_seed, salt);
    return b;
}

using TrialFn = void (*)(const ExperimentConfig&, TrialRecord&, TrialAudit&);

void stopping_trial(const ExperimentConfig& cfg, TrialRecord& rec, TrialAudit& audit) {
    const std::size_t n = cfg.n, r = cfg.r;
    const auto run = run_process(n, r, rec.seed, 2);
    rec.extra["T1"] = run.t1;
    rec.extra["T2"] = run.t2;

    const auto h1 = prefix(run, n, r, run.t1);
    const auto weak = find_weak_hamiltonian(h1, trial_budget(cfg, rec.seed, 1));
    audit_certificate(h1, weak, "weakAtT1", audit);
    rec.outcomes.push_back(solve_outcome("weakAtT1", weak));

    const auto h2 = prefix(run, n, r, run.t2);
    const auto ord = find_hamiltonian_berge(h2, trial_budget(cfg, rec.seed, 2));
    audit_certificate(h2, ord, "ordinaryAtT2", audit);
    rec.outcomes.push_back(solve_outcome("ordinaryAtT2", ord));

    if (cfg.negative_control) {
        const auto h1m = prefix(run, n, r, run.t1 - 1);
        const auto weak_m = find_weak_hamiltonian(h1m, trial_budget(cfg, rec.seed, 3));
        audit_certificate(h1m, weak_m, "weakAtT1minus1", audit);
        rec.outcomes.push_back(solve_outcome("weakAtT1minus1", weak_m));

        const auto h2m = prefix(run, n, r, run.t2 - 1);
        const auto ord_m = find_hamiltonian_berge(h2m, trial_budget(cfg, rec.seed, 4));
        audit_certificate(h2m, ord_m, "ordinaryAtT2minus1", audit);
        rec.outcomes.push_back(solve_outcome("ordinaryAtT2minus1", ord_m));
    }
}

void threshold_trial(const ExperimentConfig& cfg, TrialRecord& rec, TrialAudit& audit) {
    const double p = cfg.p ? *cfg.p : threshold_p(cfg.n, cfg.r, *rec.x, cfg.variant);
    const auto h = gnrp_sample(cfg.n, cfg.r, p, rec.seed);
    rec.extra["p"] = p;
    rec.extra["m"] = h.m();
    const auto budget = trial_budget(cfg, rec.seed, 1);
    const auto res = cfg.variant == Variant::weak ? find_weak_hamiltonian(h, budget) : find_hamiltonian_berge(h, budget);
    audit_certificate(h, res, "hamiltonian", audit);
    rec.outcomes.push_back(solve_outcome("hamiltonian", res));
}

void kout_trial(const ExperimentConfig& cfg, TrialRecord& rec, TrialAudit& audit) {
    const auto sample = kout_sample(cfg.n, cfg.r, cfg.k, cfg.replacement, rec.seed);
    const auto& h = sample.hypergraph;
    rec.extra["m"] = h.m();
    std::size_t degree_one = 0;
    for (Vertex v = 1; v <= h.n(); ++v) degree_one += h.degree(v) == 1;
    rec.extra["degreeOne"] = degree_one;
    rec.outcomes.push_back(flag("distinctEdges", h.m() == cfg.n * cfg.k));

    const auto budget = trial_budget(cfg, rec.seed, 1);
    if (cfg.k == 2) {
        const auto res = kout2_pipeline(sample, budget, derive_seed(rec.seed, 2));
        audit_certificate(h, res, "hamiltonian", audit);
        rec.outcomes.push_back(solve_outcome("hamiltonian", res));
    } else if (cfg.k == 1 && cfg.r == 3) {
        rec.outcomes.push_back(flag("tripleObstruction", degree1_triple_obstruction(h).has_value()));
        const auto res = find_weak_hamiltonian(h, budget);
        audit_certificate(h, res, "weakHamiltonian", audit);
        rec.outcomes.push_back(solve_outcome("weakHamiltonian", res));
    } else if (cfg.k == 1) {
        const auto res = one_out_weak_pipeline(sample, budget);
        audit_certificate(h, res, "weakHamiltonian", audit);
        rec.outcomes.push_back(solve_outcome("weakHamiltonian", res));
    } else {
        const auto res = cfg.variant == Variant::weak ? find_weak_hamiltonian(h, budget) : find_hamiltonian_berge(h, budget);
        audit_certificate(h, res, "hamiltonian", audit);
        rec.outcomes.push_back(solve_outcome("hamiltonian", res));
    }
}

void coupon_trial(const ExperimentConfig& cfg, TrialRecord& rec, TrialAudit&) {
    rec.outcomes.push_back(flag("covered", coupon_cover_estimate(cfg.n, cfg.r, 1, rec.seed) == 1.0));
}

void implication_trial(const ExperimentConfig& cfg, TrialRecord& rec, TrialAudit&) {
    const auto run = run_process(cfg.n, cfg.r, rec.seed, 2);
    const auto h = prefix(run, cfg.n, cfg.r, run.t2);
    const auto sparse = sparsify(h, cfg.epsilon, derive_seed(rec.seed, 1));
    PropertyOptions opts;
    opts.seed = derive_seed(rec.seed, 2);
    const auto v = implication_check(h, sparse, cfg.epsilon, cfg.variant == Variant::weak, opts);
    rec.extra["T2"] = run.t2;
    rec.extra["gamma0Edges"] = sparse.gamma0.m();
    rec.extra["gamma0MinDegree"] = v.min_degree;
    rec.extra["hypothesesExact"] = v.hypotheses_exact;
    rec.extra["degreeOk"] = v.degree_ok;
    static constexpr const char* kNames[] = {"P3", "P4", "P5", "P7"};
    for (std::size_t i = 0; i < 4; ++i) rec.extra[kNames[i]] = to_string(v.hypotheses[i]);
    rec.outcomes.push_back(flag("hypothesesHold", v.hypotheses_hold));
    rec.outcomes.push_back(flag("conclusionHolds", v.conclusion_holds));
    rec.outcomes.push_back(flag("critical", v.critical));
}

ExperimentResult run_trials(const ExperimentConfig& cfg, TrialFn trial) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentResult result;
    result.config = cfg;

    std::vector<std::optional<double>> grid;
    if (cfg.experiment == ExperimentKind::threshold && !cfg.p)
        for (double c : cfg.c) grid.emplace_back(c);
    else
        grid.emplace_back(std::nullopt);

    const std::size_t total = grid.size() * cfg.trials;
    result.trials.resize(total);
    std::vector<TrialAudit> audits(total);
    for (std::size_t i = 0; i < total; ++i) {
        auto& rec = result.trials[i];
        rec.index = i;
        rec.x = grid[i / cfg.trials];
        rec.seed = derive_seed(cfg.seed, i);
    }
    parallel_for(total, resolve_workers(cfg.workers), [&](std::size_t i) { trial(cfg, result.trials[i], audits[i]); });

    for (const auto& a : audits) {
        result.audit.certificates += a.certificates;
        result.audit.violations += a.violations.size();
        result.audit.details.insert(result.audit.details.end(), a.violations.begin(), a.violations.end());
    }

    // Aggregates in metric order of first appearance, grid order within.
    std::vector<std::string> metrics;
    for (const auto& rec : result.trials)
        for (const auto& o : rec.outcomes)
            if (std::find(metrics.begin(), metrics.end(), o.metric) == metrics.end()) metrics.push_back(o.metric);
    for (const auto& metric : metrics)
        for (const auto& x : grid) {
            Aggregate agg;
            agg.metric = metric;
            agg.x = x;
            for (const auto& rec : result.trials) {
                if (rec.x != x) continue;
                for (const auto& o : rec.outcomes) {
                    if (o.metric != metric) continue;
                    ++agg.trials;
                    if (o.value == "inconclusive") {
                        ++agg.inconclusive;
                        continue;
                    }
                    ++agg.conclusive;
                    if (o.value == "found" || o.value == "yes") ++agg.successes;
                }
            }
            agg.frequency = agg.conclusive ? static_cast<double>(agg.successes) / static_cast<double>(agg.conclusive) : 0.0;
            agg.wilson = wilson_interval(agg.successes, agg.conclusive);
            agg.inconclusive_rate = agg.trials ? static_cast<double>(agg.inconclusive) / static_cast<double>(agg.trials) : 0.0;
            if (cfg.experiment == ExperimentKind::threshold && x) agg.limit = limit_probability(*x);
            result.aggregates.push_back(agg);
        }

    if (cfg.experiment == ExperimentKind::koutBerge || cfg.experiment == ExperimentKind::koutWeak) {
        if (cfg.k == 1)
            result.summary["couponCoverEstimate"] = coupon_cover_estimate(cfg.n, cfg.r, cfg.trials, derive_seed(cfg.seed, total));
        result.summary["expectedEdges"] = cfg.n * cfg.k;
    }
    if (cfg.experiment == ExperimentKind::implicationAudit) {
        std::size_t critical = 0, hold = 0;
        for (const auto& rec : result.trials)
            for (const auto& o : rec.outcomes) {
                critical += o.metric == "critical" && o.value == "yes";
                hold += o.metric == "hypothesesHold" && o.value == "yes";
            }
        result.summary["critical"] = critical;
        result.summary["hypothesesHold"] = hold;
    }
    result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

void require_kind(const ExperimentConfig& cfg, std::initializer_list<ExperimentKind> kinds) {
    if (std::find(kinds.begin(), kinds.end(), cfg.experiment) == kinds.end())
        invalid(std::string("experiment '") + to_string(cfg.experiment) + "' passed to the wrong runner");
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

} // namespace

Interval wilson_interval(std::size_t successes, std::size_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = kWilsonZ * kWilsonZ;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = kWilsonZ * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    // The bounds are exact at the extremes; rounding would otherwise leave
    // the point estimate just outside.
    return {successes == 0 ? 0.0 : std::max(0.0, center - half),
            successes == trials ? 1.0 : std::min(1.0, center + half)};
}

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) invalid("config must be a JSON object");
    static const std::set<std::string> known{
        "experiment", "model",   "n",       "r",      "p",       "c",           "k",        "variant",
        "replacement", "trials", "seed",    "mode",   "budget",  "epsilon",     "workers",  "negativeControl",
        "output",     "formats", "checks",  "maxInconclusiveRate"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) invalid("unknown config key '" + key + "'");

    ExperimentConfig cfg;
    cfg.raw = j;
    if (j.contains("experiment")) {
        cfg.experiment = experiment_from_string(j.at("experiment").get<std::string>());
    } else if (j.contains("model")) {
        const auto model = j.at("model").get<std::string>();
        if (model == "process") cfg.experiment = ExperimentKind::stopping;
        else if (model == "gnrp") cfg.experiment = ExperimentKind::threshold;
        else if (model == "kout") cfg.experiment = j.value("k", 2) == 1 ? ExperimentKind::koutWeak : ExperimentKind::koutBerge;
        else invalid("unknown model '" + model + "'");
    } else {
        invalid("config needs 'experiment' or 'model'");
    }

    if (!j.contains("n")) invalid("config needs 'n'");
    cfg.n = get_number<std::size_t>(j, "n");
    if (j.contains("r")) cfg.r = get_number<std::size_t>(j, "r");
    if (cfg.r < 2 || cfg.r > cfg.n) invalid("need 2 <= r <= n");
    if (cfg.n < 3) invalid("need n >= 3");
    if (j.contains("p")) {
        cfg.p = get_number<double>(j, "p");
        if (*cfg.p < 0.0 || *cfg.p > 1.0) invalid("'p' must lie in [0, 1]");
    }
    if (j.contains("c")) {
        const auto& c = j.at("c");
        if (c.is_number()) cfg.c = {c.get<double>()};
        else if (c.is_array()) for (const auto& v : c) {
                if (!v.is_number()) invalid("'c' entries must be numbers");
                cfg.c.push_back(v.get<double>());
            }
        else invalid("'c' must be a number or an array");
    }
    cfg.k = cfg.experiment == ExperimentKind::koutWeak ? 1 : 2;
    if (j.contains("k")) cfg.k = get_number<std::size_t>(j, "k");
    if (j.contains("variant")) cfg.variant = variant_from_string(j.at("variant").get<std::string>());
    if (j.contains("replacement")) cfg.replacement = replacement_from_string(j.at("replacement").get<std::string>());
    if (j.contains("trials")) cfg.trials = get_number<std::size_t>(j, "trials");
    if (cfg.trials < 1) invalid("'trials' must be at least 1");
    if (j.contains("seed")) cfg.seed = get_number<std::uint64_t>(j, "seed");
    if (j.contains("mode")) cfg.budget.mode = solve_mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("budget")) {
        const auto& b = j.at("budget");
        if (!b.is_object()) invalid("'budget' must be an object");
        for (const auto& [key, _] : b.items()) {
            if (key == "nodeLimit" || key == "node_limit") cfg.budget.node_limit = get_number<std::uint64_t>(b, key.c_str());
            else if (key == "timeLimitMs" || key == "time_limit_ms") cfg.budget.time_limit_ms = get_number<std::uint64_t>(b, key.c_str());
            else if (key == "mode") cfg.budget.mode = solve_mode_from_string(b.at(key).get<std::string>());
            else invalid("unknown budget key '" + key + "'");
        }
        if (cfg.budget.node_limit == 0 || cfg.budget.time_limit_ms == 0) invalid("budget limits must be positive");
    }
    if (j.contains("epsilon")) cfg.epsilon = get_number<double>(j, "epsilon");
    if (!(cfg.epsilon > 0.0)) invalid("'epsilon' must be positive");
    if (j.contains("workers")) cfg.workers = get_number<std::size_t>(j, "workers");
    if (j.contains("negativeControl")) cfg.negative_control = j.at("negativeControl").get<bool>();
    if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
    if (j.contains("formats")) {
        cfg.formats.clear();
        for (const auto& f : j.at("formats")) {
            output_format_from_string(f.get<std::string>());
            cfg.formats.push_back(f.get<std::string>());
        }
    }
    if (j.contains("maxInconclusiveRate")) cfg.max_inconclusive_rate = get_number<double>(j, "maxInconclusiveRate");
    if (j.contains("checks")) {
        for (const auto& c : j.at("checks")) {
            Check check;
            check.metric = c.at("metric").get<std::string>();
            if (c.contains("x")) check.x = c.at("x").get<double>();
            if (c.contains("min")) check.min = c.at("min").get<double>();
            if (c.contains("max")) check.max = c.at("max").get<double>();
            check.nondecreasing = c.value("nondecreasing", false);
            if (c.contains("minSpread")) check.min_spread = c.at("minSpread").get<double>();
            cfg.checks.push_back(check);
        }
    }

    if (cfg.experiment == ExperimentKind::threshold && cfg.c.empty() && !cfg.p) invalid("threshold needs a nonempty 'c' grid or 'p'");
    if ((cfg.experiment == ExperimentKind::koutBerge || cfg.experiment == ExperimentKind::koutWeak) && cfg.k < 1)
        invalid("'k' must be at least 1");
    if (cfg.experiment == ExperimentKind::threshold && !cfg.p)
        for (double c : cfg.c)
            if (!std::isfinite(c)) invalid("'c' entries must be finite");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ConfigInvalid, std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

const Aggregate* ExperimentResult::find(const std::string& metric, std::optional<double> x) const {
    for (const auto& a : aggregates)
        if (a.metric == metric && (!x || (a.x && std::abs(*a.x - *x) < 1e-12))) return &a;
    return nullptr;
}

ExperimentResult run_stopping(const ExperimentConfig& config) {
    require_kind(config, {ExperimentKind::stopping});
    return run_trials(config, stopping_trial);
}

ExperimentResult run_threshold(const ExperimentConfig& config) {
    require_kind(config, {ExperimentKind::threshold});
    return run_trials(config, threshold_trial);
}

ExperimentResult run_kout(const ExperimentConfig& config) {
    require_kind(config, {ExperimentKind::koutBerge, ExperimentKind::koutWeak});
    return run_trials(config, kout_trial);
}

ExperimentResult run_coupon(const ExperimentConfig& config) {
    require_kind(config, {ExperimentKind::couponCover});
    return run_trials(config, coupon_trial);
}

ExperimentResult run_implication_audit(const ExperimentConfig& config) {
    require_kind(config, {ExperimentKind::implicationAudit});
    return run_trials(config, implication_trial);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    switch (config.experiment) {
    case ExperimentKind::stopping: return run_stopping(config);
    case ExperimentKind::threshold: return run_threshold(config);
    case ExperimentKind::koutBerge:
    case ExperimentKind::koutWeak: return run_kout(config);
    case ExperimentKind::couponCover: return run_coupon(config);
    case ExperimentKind::implicationAudit: return run_implication_audit(config);
    }
    invalid("unknown experiment");
}

std::vector<CheckResult> evaluate_checks(const ExperimentResult& result) {
    std::vector<CheckResult> out;
    const auto& cfg = result.config;
    for (const auto& check : cfg.checks) {
        std::vector<const Aggregate*> aggs;
        for (const auto& a : result.aggregates)
            if (a.metric == check.metric && (!check.x || (a.x && std::abs(*a.x - *check.x) < 1e-12))) aggs.push_back(&a);
        auto where = [&](const Aggregate& a) {
            return check.metric + (a.x ? " at x=" + format_double(*a.x) : std::string());
        };
        if (aggs.empty()) {
            out.push_back({"metric " + check.metric + " present", false, "no such aggregate"});
            continue;
        }
        for (const auto* a : aggs) {
            if (check.min)
                out.push_back({where(*a) + " >= " + format_double(*check.min), a->frequency >= *check.min,
                               format_double(a->frequency)});
            if (check.max)
                out.push_back({where(*a) + " <= " + format_double(*check.max), a->frequency <= *check.max,
                               format_double(a->frequency)});
        }
        if (check.nondecreasing) {
            bool ok = true;
            std::string seq;
            for (std::size_t i = 0; i < aggs.size(); ++i) {
                if (i && aggs[i]->frequency < aggs[i - 1]->frequency) ok = false;
                seq += (i ? " " : "") + format_double(aggs[i]->frequency);
            }
            out.push_back({check.metric + " nondecreasing along the grid", ok, seq});
        }
        if (check.min_spread) {
            const double spread = aggs.back()->frequency - aggs.front()->frequency;
            out.push_back({check.metric + " last minus first >= " + format_double(*check.min_spread),
                           spread >= *check.min_spread, format_double(spread)});
        }
    }
    for (const auto& a : result.aggregates)
        out.push_back({(a.metric + (a.x ? " at x=" + format_double(*a.x) : std::string())) + " inconclusive rate <= " +
                           format_double(cfg.max_inconclusive_rate),
                       a.inconclusive_rate <= cfg.max_inconclusive_rate, format_double(a.inconclusive_rate)});
    out.push_back({"certificate audit violations == 0", result.audit.violations == 0,
                   std::to_string(result.audit.violations) + " of " + std::to_string(result.audit.certificates)});
    return out;
}

json to_json(const ExperimentResult& result, bool include_wall_time) {
    const auto& cfg = result.config;
    json config = cfg.raw;
    config["resolved"] = {{"experiment", to_string(cfg.experiment)},
                          {"n", cfg.n},
                          {"r", cfg.r},
                          {"k", cfg.k},
                          {"variant", to_string(cfg.variant)},
                          {"replacement", to_string(cfg.replacement)},
                          {"trials", cfg.trials},
                          {"seed", cfg.seed},
                          {"epsilon", cfg.epsilon},
                          {"c", cfg.c},
                          {"budget",
                           {{"nodeLimit", cfg.budget.node_limit},
                            {"timeLimitMs", cfg.budget.time_limit_ms},
                            {"mode", to_string(cfg.budget.mode)}}}};
    if (cfg.p) config["resolved"]["p"] = *cfg.p;

    json trials = json::array();
    for (const auto& rec : result.trials) {
        json outcomes = json::object();
        for (const auto& o : rec.outcomes) outcomes[o.metric] = {{"outcome", o.value}, {"stats", o.stats}};
        json t{{"index", rec.index}, {"seed", rec.seed}, {"outcomes", outcomes}, {"extra", rec.extra}};
        t["x"] = rec.x ? json(*rec.x) : json(nullptr);
        trials.push_back(t);
    }
    json aggs = json::array();
    for (const auto& a : result.aggregates) {
        json j{{"metric", a.metric},
               {"trials", a.trials},
               {"successes", a.successes},
               {"conclusive", a.conclusive},
               {"inconclusive", a.inconclusive},
               {"frequency", a.frequency},
               {"wilson95", {a.wilson.lo, a.wilson.hi}},
               {"inconclusiveRate", a.inconclusive_rate}};
        j["x"] = a.x ? json(*a.x) : json(nullptr);
        if (a.limit) j["limit"] = *a.limit;
        aggs.push_back(j);
    }
    json out{{"version", kVersion},
             {"config", config},
             {"trials", trials},
             {"aggregates", aggs},
             {"audit", {{"certificates", result.audit.certificates},
                        {"violations", result.audit.violations},
                        {"details", result.audit.details}}},
             {"summary", result.summary}};
    if (include_wall_time) out["wallTimeMs"] = result.wall_ms;
    return out;
}

std::string to_csv(const ExperimentResult& result) {
    std::vector<std::string> metrics, extras;
    for (const auto& rec : result.trials) {
        for (const auto& o : rec.outcomes)
            if (std::find(metrics.begin(), metrics.end(), o.metric) == metrics.end()) metrics.push_back(o.metric);
        for (const auto& [key, _] : rec.extra.items())
            if (std::find(extras.begin(), extras.end(), key) == extras.end()) extras.push_back(key);
    }
    std::ostringstream os;
    os << "index,x,seed";
    for (const auto& m : metrics) os << ',' << m;
    for (const auto& e : extras) os << ',' << e;
    os << '\n';
    for (const auto& rec : result.trials) {
        os << rec.index << ',' << (rec.x ? format_double(*rec.x) : "") << ',' << rec.seed;
        for (const auto& m : metrics) {
            os << ',';
            for (const auto& o : rec.outcomes)
                if (o.metric == m) os << o.value;
        }
        for (const auto& e : extras) {
            os << ',';
            if (rec.extra.contains(e)) os << rec.extra.at(e).dump();
        }
        os << '\n';
    }
    return os.str();
}

std::string to_plotdata(const ExperimentResult& result) {
    std::ostringstream os;
    if (result.aggregates.empty()) return "";
    const std::string metric = result.aggregates.front().metric;
    os << "# x " << metric << " limit\n";
    std::size_t row = 0;
    for (const auto& a : result.aggregates) {
        if (a.metric != metric) continue;
        os << (a.x ? format_double(*a.x) : std::to_string(row)) << ' ' << format_double(a.frequency) << ' '
           << (a.limit ? format_double(*a.limit) : "nan") << '\n';
        ++row;
    }
    return os.str();
}

void emit_outputs(const ExperimentResult& result, const std::string& prefix, const std::vector<OutputFormat>& formats) {
    auto write = [](const std::string& path, const std::string& body) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
        out << body;
        if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path + "'");
    };
    const auto dir = std::filesystem::path(prefix).parent_path();
    std::error_code ec;
    if (!dir.empty()) std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create '" + dir.string() + "': " + ec.message());
    for (auto f : formats) {
        switch (f) {
        case OutputFormat::json: write(prefix + ".json", to_json(result).dump(2) + "\n"); break;
        case OutputFormat::csv: write(prefix + ".csv", to_csv(result)); break;
        case OutputFormat::plotdata: write(prefix + ".plot.tsv", to_plotdata(result)); break;
        }
    }
}

const char* to_string(ExperimentKind k) noexcept {
    switch (k) {
    case ExperimentKind::stopping: return "stopping";
    case ExperimentKind::threshold: return "threshold";
    case ExperimentKind::koutBerge: return "koutBerge";
    case ExperimentKind::koutWeak: return "koutWeak";
    case ExperimentKind::couponCover: return "couponCover";
    case ExperimentKind::implicationAudit: return "implicationAudit";
    }
    return "?";
}

ExperimentKind experiment_from_string(const std::string& s) {
    for (auto k : {ExperimentKind::stopping, ExperimentKind::threshold, ExperimentKind::koutBerge,
                   ExperimentKind::koutWeak, ExperimentKind::couponCover, ExperimentKind::implicationAudit})
        if (s == to_string(k)) return k;
    invalid("unknown experiment '" + s + "'");
}

OutputFormat output_format_from_string(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "plotdata") return OutputFormat::plotdata;
    invalid("unknown output format '" + s + "'");
}

std::size_t resolve_workers(std::size_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BERGELAB_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace bergelab
