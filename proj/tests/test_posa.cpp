#include <doctest.h>

#include <set>

#include "bergelab/combinatorics.hpp"
#include "bergelab/posa.hpp"
#include "bergelab/random_models.hpp"
#include "bergelab/sparsifier.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bergelab;
using fixtures::F1;
using fixtures::F2;
using fixtures::F4;

namespace {

SolveBudget exact_budget() {
    SolveBudget b;
    b.mode = SolveMode::exactOnly;
    return b;
}

BergeCertificate path_of(std::vector<Vertex> vs, std::vector<EdgeId> es, bool weak = false) {
    return {CertificateKind::path, weak, std::move(vs), std::move(es)};
}

} // namespace

TEST_CASE("single-vertex path extends immediately") {
    const auto st = rotation_closure(F1(), path_of({1}, {}));
    CHECK(st.extension.has_value());
    CHECK(st.R == std::vector<Vertex>{1});
}

TEST_CASE("rotation example on two overlapping edges") {
    const Hypergraph h(4, 3, {{1, 2, 3}, {2, 3, 4}});
    const auto base = path_of({1, 2, 4}, {0, 1});
    const auto st = rotation_closure(h, base);
    const auto expected = oracle::rotation_closure(4, oracle::edges_of(h), base.vertices, {0, 1}, false);
    CHECK(std::set<Vertex>(st.R.begin(), st.R.end()) == expected.endpoints);
    CHECK(st.extension.has_value() == expected.extension);
    CHECK(st.left_endpoint == 1);
}

TEST_CASE("invalid base path is rejected") {
    CHECK_ERROR_CODE(rotation_closure(F2(), path_of({1, 2, 3}, {0, 0})), ErrorCode::InvalidPath);
    CHECK_ERROR_CODE(rotation_closure(F2(), path_of({3, 4}, {0})), ErrorCode::InvalidPath);
}

TEST_CASE("rotation closure matches exhaustive state search; derivations replay") {
    Rng rng(31);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t n = 4 + rng.below(4);
        const auto edges = oracle::random_edges(n, 3, 2 + rng.below(7), rng);
        const Hypergraph h(n, 3, edges);
        const bool weak = trial % 3 == 0;
        const auto lp = longest_berge_path(h, exact_budget(), weak);
        const auto& base = *lp.certificate;
        if (base.vertices.size() < 2) continue;
        const auto st = rotation_closure(h, base, weak);
        const auto expected = oracle::rotation_closure(
            n, edges, base.vertices, std::vector<std::size_t>(base.edges.begin(), base.edges.end()), weak);
        CHECK(std::set<Vertex>(st.R.begin(), st.R.end()) == expected.endpoints);
        CHECK(st.extension.has_value() == expected.extension);
        CHECK(std::find(st.R.begin(), st.R.end(), base.vertices.back()) != st.R.end());

        const std::set<Vertex> base_set(base.vertices.begin(), base.vertices.end());
        for (const auto& [end, steps] : st.derivation) {
            const auto p = replay_rotations(h, base, steps, weak);
            CHECK(verify_certificate(h, p).valid);
            CHECK(p.vertices.front() == base.vertices.front());
            CHECK(p.vertices.back() == end);
            CHECK(std::set<Vertex>(p.vertices.begin(), p.vertices.end()) == base_set);
            // R± always uses base numbering, whichever rotated path we stand on.
            CHECK(r_plus_minus(base, st.R) == st.Rpm);
        }
    }
}

TEST_CASE("R plus-minus on base numbering") {
    const auto base = path_of({5, 3, 1, 2, 4}, {0, 0, 0, 0}, true);
    CHECK(r_plus_minus(base, {4}) == std::vector<Vertex>{2});
    CHECK(r_plus_minus(base, {1, 4}) == std::vector<Vertex>{2, 3});
}

TEST_CASE("boosters of a Hamiltonian hypergraph are all non-edges") {
    const Hypergraph h(5, 3, {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {1, 4, 5}, {1, 2, 5}});
    const auto rep = boosters(h, exact_budget());
    REQUIRE(rep.hamiltonian);
    CHECK(rep.boosters.size() == binomial(5, 3) - h.m());
    CHECK(rep.boosters == oracle::boosters(5, 3, oracle::edges_of(h), false));
    CHECK(boosters(F1(), exact_budget()).boosters.empty());  // no non-edges left
}

TEST_CASE("boosters of the two-edge path instance match the oracle") {
    const Hypergraph h(4, 3, {{1, 2, 3}, {2, 3, 4}});
    for (bool weak : {false, true}) {
        BoosterOptions opts;
        opts.weak = weak;
        CHECK(boosters(h, exact_budget(), opts).boosters == oracle::boosters(4, 3, oracle::edges_of(h), weak));
    }
}

TEST_CASE("non-Hamiltonian connected expanders have boosters") {
    Rng rng(12);
    int checked = 0;
    for (int trial = 0; trial < 4000 && checked < 15; ++trial) {
        const std::size_t n = 5 + rng.below(5);
        const auto edges = oracle::random_edges(n, 3, n / 2 + rng.below(n), rng);
        const Hypergraph h(n, 3, edges);
        const std::size_t k = 1;
        if (!is_connected(h) || is_expander(h, k, 2.0).verdict != ExpanderVerdict::expander) continue;
        if (find_hamiltonian_berge(h, exact_budget()).status != SolveStatus::provedAbsent) continue;
        CHECK_FALSE(boosters(h, exact_budget()).boosters.empty());
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("sampled boosters are a subset of the exact set") {
    const Hypergraph h(7, 3, {{1, 2, 3}, {3, 4, 5}, {5, 6, 7}, {1, 4, 7}});
    const auto exact = boosters(h, exact_budget());
    BoosterOptions opts;
    opts.mode = BoosterMode::sampled;
    opts.samples = 20;
    opts.seed = 5;
    const auto sampled = boosters(h, {}, opts);
    CHECK_FALSE(sampled.exact);
    for (const auto& e : sampled.boosters)
        CHECK(std::find(exact.boosters.begin(), exact.boosters.end(), e) != exact.boosters.end());
}

TEST_CASE("expander examples") {
    const auto empty = is_expander(Hypergraph::empty(5, 3), 1, 2.0);
    REQUIRE(empty.verdict == ExpanderVerdict::counterexample);
    CHECK(empty.witness->X == std::vector<Vertex>{1});
    CHECK(empty.witness->Y.empty());
    CHECK(is_expander(F1(), 1, 2.0).verdict == ExpanderVerdict::expander);
    CHECK_ERROR_CODE(is_expander(F1(), 5, 2.0), ErrorCode::ParameterOutOfRange);
    CHECK_ERROR_CODE(is_expander(F1(), 1, 0.0), ErrorCode::ParameterOutOfRange);
}

TEST_CASE("weak expander examples") {
    CHECK(expansion_holds(F4(), {1}, {}));
    const auto rep = is_weak_expander(F4(), 2, 2.0);
    REQUIRE(rep.verdict == ExpanderVerdict::counterexample);
    // Every singleton sees at least two other vertices, so the witness is a
    // pair such as {2,3}, which sees only vertex 1: 1 < 4.
    const auto& X = rep.witness->X;
    CHECK(X.size() == 2);
    CHECK(is_weak_expander(F4(), 1, 2.0).verdict == ExpanderVerdict::expander);
    std::set<Vertex> nx;
    for (const auto& e : F4().edge_list())
        for (Vertex v : X)
            if (std::find(e.begin(), e.end(), v) != e.end()) nx.insert(e.begin(), e.end());
    for (Vertex v : X) nx.erase(v);
    CHECK(static_cast<double>(nx.size()) < 2.0 * static_cast<double>(X.size()));

    const auto weak_empty = is_weak_expander(Hypergraph::empty(4, 3), 2, 0.5);
    REQUIRE(weak_empty.verdict == ExpanderVerdict::counterexample);
    CHECK(weak_empty.witness->X == std::vector<Vertex>{1});
}

TEST_CASE("expander verdicts match the definitions and are monotone in k") {
    Rng rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 4 + rng.below(5);
        const auto edges = oracle::random_edges(n, 3, 1 + rng.below(2 * n), rng);
        const Hypergraph h(n, 3, edges);
        const std::size_t k = 1 + rng.below(n / 2);
        const double alpha = trial % 2 ? 1.0 : 2.0;
        const auto strong = is_expander(h, k, alpha);
        CHECK((strong.verdict == ExpanderVerdict::expander) == oracle::expander_by_definition(n, edges, k, alpha));
        CHECK((is_weak_expander(h, k, alpha).verdict == ExpanderVerdict::expander) ==
              oracle::weak_expander_by_definition(n, edges, k, alpha));
        if (strong.verdict == ExpanderVerdict::expander)
            for (std::size_t k2 = 1; k2 < k; ++k2) CHECK(is_expander(h, k2, alpha).verdict == ExpanderVerdict::expander);
        if (strong.witness) CHECK_FALSE(expansion_holds(h, strong.witness->X, strong.witness->Y));
    }
}

TEST_CASE("sampled expander check never contradicts exact") {
    Rng rng(19);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 6 + rng.below(4);
        const Hypergraph h(n, 3, oracle::random_edges(n, 3, n + rng.below(2 * n), rng));
        ExpanderMode mode;
        mode.sampled = true;
        mode.trials = 500;
        mode.seed = trial;
        const auto sampled = is_expander(h, 2, 2.0, mode);
        CHECK(sampled.verdict != ExpanderVerdict::expander);
        if (sampled.verdict == ExpanderVerdict::counterexample) {
            CHECK(is_expander(h, 2, 2.0).verdict == ExpanderVerdict::counterexample);
            CHECK_FALSE(expansion_holds(h, sampled.witness->X, sampled.witness->Y));
        }
    }
}

TEST_CASE("exact expander guard") {
    ExpanderMode mode;
    mode.set_limit = 5;
    CHECK_ERROR_CODE(is_expander(F1(), 2, 2.0, mode), ErrorCode::Infeasible);
}

TEST_CASE("connectivity") {
    CHECK(is_connected(F1()));
    CHECK_FALSE(is_connected(Hypergraph(6, 3, {{1, 2, 3}, {4, 5, 6}})));
    CHECK(is_connected(F2()));
}

TEST_CASE("booster absorption") {
    const auto ham = Hypergraph(5, 3, {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {1, 4, 5}, {1, 2, 5}});
    const auto done = booster_absorption(ham, ham, {});
    CHECK(done.result.status == SolveStatus::found);
    CHECK(done.absorptions == 0);

    const auto f2 = F2();
    const auto stuck = booster_absorption(f2, f2, {});
    CHECK(stuck.result.status == SolveStatus::inconclusive);
    CHECK(stuck.absorptions == 0);

    CHECK_ERROR_CODE(booster_absorption(F1(), f2, {}), ErrorCode::ParameterOutOfRange);
}

TEST_CASE("booster absorption from the sparsifier of H(T2)") {
    int found = 0;
    const int seeds = 50;
    for (int s = 0; s < seeds; ++s) {
        const auto trace = process_sample(30, 3, derive_seed(40, s));
        const auto h = trace.prefix(stopping_time(trace, 2));
        const auto sparse = sparsify(h, 0.5, derive_seed(41, s));
        SolveBudget b;
        b.seed = s;
        b.node_limit = 1'000'000;
        b.time_limit_ms = 600'000;
        const auto res = booster_absorption(sparse.gamma0, h, b);
        if (res.result.status == SolveStatus::found) {
            ++found;
            CHECK(verify_certificate(h, *res.result.certificate).hamiltonian);
        }
        CHECK(res.absorptions <= 30);
    }
    CHECK(found >= 45);
}

TEST_CASE("report json") {
    const auto rep = is_expander(Hypergraph::empty(4, 3), 1, 2.0);
    const auto j = to_json(rep);
    CHECK(j.at("verdict") == "counterexample");
    CHECK(j.at("witness").at("X") == nlohmann::json::array({1}));
}
