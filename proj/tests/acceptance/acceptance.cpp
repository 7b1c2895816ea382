// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// line fails. Every random choice derives from kMasterSeed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "bergelab/experiment.hpp"
#include "bergelab/posa.hpp"
#include "bergelab/solvers.hpp"
#include "oracles.hpp"

using namespace bergelab;
using nlohmann::json;

namespace {

constexpr std::uint64_t kMasterSeed = 20261017;

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(const std::string& id, bool pass, const std::string& detail, const Timer& t) {
    if (!pass) ++failures;
    std::printf("%s  %-3s %s (%.1f s)\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str(), t.seconds());
    std::fflush(stdout);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

SolveBudget exact_budget() {
    SolveBudget b;
    b.mode = SolveMode::exactOnly;
    return b;
}

// Node limits bind long before the time limit, so outcomes never depend on
// machine speed.
json base_config(const std::string& experiment, std::size_t n, std::size_t r, std::size_t trials, std::uint64_t salt) {
    return {{"experiment", experiment},
            {"n", n},
            {"r", r},
            {"trials", trials},
            {"seed", derive_seed(kMasterSeed, salt)},
            {"budget", {{"nodeLimit", 5'000'000}, {"timeLimitMs", 3'600'000}}}};
}

std::string agg_line(const ExperimentResult& res, const std::string& metric, std::optional<double> x = std::nullopt) {
    const auto* a = res.find(metric, x);
    if (!a) return metric + "=missing";
    return metric + "=" + fmt(a->frequency) + " [" + fmt(a->wilson.lo) + "," + fmt(a->wilson.hi) + "] of " +
           std::to_string(a->conclusive) + ", inconclusive " + fmt(a->inconclusive_rate);
}

bool inconclusive_ok(const ExperimentResult& res) {
    for (const auto& a : res.aggregates)
        if (a.inconclusive_rate > 0.1) return false;
    return true;
}

double freq(const ExperimentResult& res, const std::string& metric, std::optional<double> x = std::nullopt) {
    const auto* a = res.find(metric, x);
    return a ? a->frequency : -1.0;
}

// 1. Exact solvers against the brute-force oracle.
void criterion_oracle() {
    Timer t;
    Rng rng(derive_seed(kMasterSeed, 1));
    std::size_t instances = 0, disagreements = 0;
    for (int trial = 0; trial < 600; ++trial) {
        const std::size_t n = 3 + rng.below(4);
        const std::size_t m = rng.below(std::min<std::size_t>(8, n * (n - 1) * (n - 2) / 6) + 1);
        const auto edges = oracle::random_edges(n, 3, m, rng);
        const Hypergraph h(n, 3, edges);
        for (bool weak : {false, true}) {
            const auto res = weak ? find_weak_hamiltonian(h, exact_budget()) : find_hamiltonian_berge(h, exact_budget());
            const bool expected = oracle::hamiltonian(n, edges, weak);
            bool ok = res.status != SolveStatus::inconclusive && (res.status == SolveStatus::found) == expected;
            if (ok && res.certificate) ok = verify_certificate(h, *res.certificate).hamiltonian;
            disagreements += !ok;
        }
        ++instances;
    }
    report("1", disagreements == 0,
           "oracle equivalence: " + std::to_string(instances) + " instances (n<=6, m<=8), " +
               std::to_string(disagreements) + " disagreements",
           t);
}

// 2. Rotation closure and exact boosters against exhaustive searches.
void criterion_rotation() {
    Timer t;
    Rng rng(derive_seed(kMasterSeed, 2));
    std::size_t instances = 0, closure_bad = 0, booster_bad = 0;
    for (int trial = 0; trial < 220; ++trial) {
        const std::size_t n = 4 + rng.below(4);
        const auto edges = oracle::random_edges(n, 3, 2 + rng.below(6), rng);
        const Hypergraph h(n, 3, edges);
        const bool weak = trial % 2 == 1;
        const auto lp = longest_berge_path(h, exact_budget(), weak);
        const auto& path = *lp.certificate;
        if (path.vertices.size() >= 2) {
            std::vector<std::size_t> links(path.edges.begin(), path.edges.end());
            const auto expected = oracle::rotation_closure(n, edges, path.vertices, links, weak);
            const auto got = rotation_closure(h, path, weak);
            const std::set<Vertex> R(got.R.begin(), got.R.end());
            if (got.truncated || R != expected.endpoints || got.extension.has_value() != expected.extension)
                ++closure_bad;
        }
        BoosterOptions opts;
        opts.weak = weak;
        const auto got = boosters(h, exact_budget(), opts);
        if (got.boosters != oracle::boosters(n, 3, edges, weak)) ++booster_bad;
        ++instances;
    }
    report("2", closure_bad == 0 && booster_bad == 0,
           "rotation/booster oracle: " + std::to_string(instances) + " instances (n<=7), " +
               std::to_string(closure_bad) + " closure and " + std::to_string(booster_bad) +
               " booster disagreements",
           t);
}

struct MonteCarlo {
    ExperimentResult stopping, threshold, kout2, kout1r3, kout1r4, distinct, implication;
};

MonteCarlo run_monte_carlo(std::size_t workers) {
    MonteCarlo mc;
    auto run = [&](json cfg) {
        cfg["workers"] = workers;
        return run_experiment(parse_config(cfg));
    };
    mc.stopping = run(base_config("stopping", 40, 3, 200, 4));

    auto threshold = base_config("threshold", 100, 3, 300, 5);
    threshold["variant"] = "weak";
    threshold["c"] = {-2.0, 0.0, 2.0};
    mc.threshold = run(threshold);

    auto k2 = base_config("koutBerge", 200, 3, 100, 61);
    k2["k"] = 2;
    mc.kout2 = run(k2);
    auto k1 = base_config("koutWeak", 500, 3, 200, 62);
    k1["k"] = 1;
    mc.kout1r3 = run(k1);
    auto k1r4 = base_config("koutWeak", 100, 4, 100, 63);
    k1r4["k"] = 1;
    mc.kout1r4 = run(k1r4);
    auto distinct = base_config("koutBerge", 100, 3, 500, 64);
    distinct["k"] = 2;
    mc.distinct = run(distinct);

    mc.implication = run(base_config("implicationAudit", 24, 3, 30, 8));
    return mc;
}

void criteria_monte_carlo(const MonteCarlo& mc, const Timer& t) {
    // 3. Degree necessity over every certificate produced above.
    std::size_t certs = 0, violations = 0;
    for (const auto* r : {&mc.stopping, &mc.threshold, &mc.kout2, &mc.kout1r3, &mc.kout1r4, &mc.distinct}) {
        certs += r->audit.certificates;
        violations += r->audit.violations;
    }
    report("3", violations == 0,
           "degree necessity: " + std::to_string(violations) + " violations over " + std::to_string(certs) +
               " certificates",
           t);

    const auto& s = mc.stopping;
    report("4a", freq(s, "ordinaryAtT2") >= 0.9 && inconclusive_ok(s),
           "stopping n=40: " + agg_line(s, "ordinaryAtT2") + " (need >= 0.9)", t);
    report("4b", freq(s, "weakAtT1") >= 0.9 && inconclusive_ok(s),
           "stopping n=40: " + agg_line(s, "weakAtT1") + " (need >= 0.9)", t);
    const auto* control = s.find("ordinaryAtT2minus1");
    report("4c", control && control->successes == 0 && inconclusive_ok(s),
           "stopping n=40: " + agg_line(s, "ordinaryAtT2minus1") + " (need exactly 0)", t);

    const auto& th = mc.threshold;
    const double lo = freq(th, "hamiltonian", -2.0), mid = freq(th, "hamiltonian", 0.0),
                 hi = freq(th, "hamiltonian", 2.0);
    report("5", lo <= mid && mid <= hi && hi - lo >= 0.3 && inconclusive_ok(th),
           "threshold weak n=100: c=-2 " + fmt(lo) + ", c=0 " + fmt(mid) + ", c=2 " + fmt(hi) +
               " (need nondecreasing, spread >= 0.3)",
           t);

    report("6a", freq(mc.kout2, "hamiltonian") >= 0.9 && inconclusive_ok(mc.kout2),
           "2-out r=3 n=200: " + agg_line(mc.kout2, "hamiltonian") + " (need >= 0.9)", t);
    report("6b", freq(mc.kout1r3, "tripleObstruction") >= 0.9,
           "1-out r=3 n=500: " + agg_line(mc.kout1r3, "tripleObstruction") + " (need >= 0.9)", t);
    report("6c", freq(mc.kout1r4, "weakHamiltonian") >= 0.9 && inconclusive_ok(mc.kout1r4),
           "1-out r=4 n=100: " + agg_line(mc.kout1r4, "weakHamiltonian") + " (need >= 0.9)", t);
    report("6d", freq(mc.distinct, "distinctEdges") >= 0.95,
           "2-out r=3 n=100: " + agg_line(mc.distinct, "distinctEdges") + " (need >= 0.95)", t);
}

// Counterexample re-check that reads only the edge list.
bool blocks(const oracle::EdgeList& edges, const ExpanderWitness& w, std::size_t k, double alpha) {
    const std::set<Vertex> X(w.X.begin(), w.X.end()), Y(w.Y.begin(), w.Y.end());
    if (X.empty() || X.size() > k || !(static_cast<double>(Y.size()) < alpha * static_cast<double>(X.size())))
        return false;
    for (Vertex v : X)
        if (Y.count(v)) return false;
    for (const auto& e : edges) {
        std::size_t meet = 0;
        bool avoid = true;
        for (Vertex v : e) {
            meet += X.count(v);
            if (Y.count(v)) avoid = false;
        }
        if (meet == 1 && avoid) return false;
    }
    return true;
}

// 7. Expander checkers.
void criterion_expander() {
    Timer t;
    Rng rng(derive_seed(kMasterSeed, 7));
    const double alphas[] = {0.5, 1.0, 1.5, 2.0, 3.0};
    std::size_t weak_bad = 0, weak_pass = 0, counterexamples = 0, cex_bad = 0, verdict_bad = 0, instances = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 4 + rng.below(7);
        const std::size_t max_m = n * (n - 1) * (n - 2) / 6;
        const auto edges = oracle::random_edges(n, 3, 1 + rng.below(std::min<std::size_t>(max_m, 3 * n)), rng);
        const Hypergraph h(n, 3, edges);
        const std::size_t k = 1 + rng.below(n / 2);
        const double alpha = alphas[rng.below(5)];

        const auto weak = is_weak_expander(h, k, alpha);
        weak_pass += weak.verdict == ExpanderVerdict::expander;
        weak_bad += (weak.verdict == ExpanderVerdict::expander) != oracle::weak_expander_by_definition(n, edges, k, alpha);

        const auto strong = is_expander(h, k, alpha);
        if (strong.verdict == ExpanderVerdict::counterexample) {
            ++counterexamples;
            cex_bad += !strong.witness || !blocks(edges, *strong.witness, k, alpha);
        }
        if (n <= 8)
            verdict_bad += (strong.verdict == ExpanderVerdict::expander) != oracle::expander_by_definition(n, edges, k, alpha);
        ++instances;
    }
    report("7", weak_bad == 0 && cex_bad == 0 && verdict_bad == 0,
           "expanders: " + std::to_string(instances) + " instances (n<=10), " + std::to_string(weak_bad) +
               " weak disagreements (" + std::to_string(weak_pass) + " weak expanders), " + std::to_string(cex_bad) + " of " + std::to_string(counterexamples) +
               " counterexamples fail to re-verify, " + std::to_string(verdict_bad) + " verdict disagreements (n<=8)",
           t);
}

void criterion_implication(const MonteCarlo& mc, const Timer& t) {
    const auto& res = mc.implication;
    std::size_t critical = 0, hold = 0;
    for (const auto& rec : res.trials)
        for (const auto& o : rec.outcomes) {
            critical += o.metric == "critical" && o.value == "yes";
            hold += o.metric == "hypothesesHold" && o.value == "yes";
        }
    report("8", critical == 0,
           "implication audit n=24: " + std::to_string(critical) + " critical of " + std::to_string(res.trials.size()) +
               " (hypotheses held in " + std::to_string(hold) + ")",
           t);
}

// 9. Same master seed, different worker count: byte-identical trials.
void criterion_determinism(const MonteCarlo& first, std::size_t workers) {
    Timer t;
    const auto second = run_monte_carlo(workers);
    auto trials = [](const ExperimentResult& r) { return to_json(r, false).at("trials").dump(); };
    std::size_t differing = 0, runs = 0;
    for (auto [a, b] : {std::pair{&first.stopping, &second.stopping}, {&first.threshold, &second.threshold},
                        {&first.kout2, &second.kout2}, {&first.kout1r3, &second.kout1r3},
                        {&first.kout1r4, &second.kout1r4}, {&first.distinct, &second.distinct},
                        {&first.implication, &second.implication}}) {
        ++runs;
        differing += trials(*a) != trials(*b);
    }
    report("9", differing == 0,
           "determinism: " + std::to_string(runs - differing) + " of " + std::to_string(runs) +
               " runs byte-identical on rerun with " + std::to_string(workers) + " worker(s)",
           t);
}

} // namespace

int main() {
    std::printf("acceptance, master seed %llu\n", static_cast<unsigned long long>(kMasterSeed));
    criterion_oracle();
    criterion_rotation();

    const std::size_t workers = resolve_workers(0);
    Timer mc_timer;
    const auto mc = run_monte_carlo(workers);
    criteria_monte_carlo(mc, mc_timer);
    criterion_expander();
    criterion_implication(mc, mc_timer);
    criterion_determinism(mc, workers == 1 ? 2 : 1);

    std::printf("%d failing line(s)\n", failures);
    return failures == 0 ? 0 : 1;
}
