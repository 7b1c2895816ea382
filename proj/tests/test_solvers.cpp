#include <doctest.h>

#include "bergelab/matching.hpp"
#include "bergelab/random_models.hpp"
#include "bergelab/solvers.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bergelab;
using fixtures::F1;
using fixtures::F2;
using fixtures::F3;

namespace {

SolveBudget exact_budget() {
    SolveBudget b;
    b.mode = SolveMode::exactOnly;
    return b;
}

void check_sound(const Hypergraph& h, const SolveResult& res, bool weak) {
    if (res.status != SolveStatus::found) return;
    REQUIRE(res.certificate);
    CHECK(res.certificate->weak == weak);
    const auto v = verify_certificate(h, *res.certificate);
    CHECK(v.valid);
    CHECK(v.hamiltonian);
    CHECK(h.min_degree() >= (weak ? 1u : 2u));
}

} // namespace

TEST_CASE("weak solver examples") {
    auto f3 = find_weak_hamiltonian(F3(), {});
    REQUIRE(f3.status == SolveStatus::found);
    CHECK(f3.certificate->vertices == std::vector<Vertex>{1, 2, 3});
    CHECK(f3.certificate->edges == std::vector<EdgeId>{0, 0, 0});

    auto f2 = find_weak_hamiltonian(F2(), {});
    CHECK(f2.status == SolveStatus::found);
    check_sound(F2(), f2, true);

    const Hypergraph two(6, 3, {{1, 2, 3}, {4, 5, 6}});
    const auto apart = find_weak_hamiltonian(two, {});
    CHECK(apart.status == SolveStatus::provedAbsent);
    CHECK(apart.reason == "shadow graph disconnected");
}

TEST_CASE("ordinary solver examples") {
    const auto f1 = find_hamiltonian_berge(F1(), exact_budget());
    REQUIRE(f1.status == SolveStatus::found);
    check_sound(F1(), f1, false);

    CHECK(find_hamiltonian_berge(F2(), {}).status == SolveStatus::provedAbsent);
    const Hypergraph two_edges(4, 3, {{1, 2, 3}, {1, 2, 4}});
    CHECK(find_hamiltonian_berge(two_edges, exact_budget()).status == SolveStatus::provedAbsent);
}

TEST_CASE("n below 3 is never Hamiltonian") {
    const Hypergraph pair(2, 2, {{1, 2}});
    CHECK(find_hamiltonian_berge(pair, {}).status == SolveStatus::provedAbsent);
    CHECK(find_weak_hamiltonian(pair, {}).status == SolveStatus::provedAbsent);
}

TEST_CASE("longest path examples") {
    const auto ord = longest_berge_path(F3(), exact_budget(), false);
    REQUIRE(ord.certificate);
    CHECK(ord.certificate->length() == 2);
    CHECK(ord.stats.exhaustive);
    const auto weak = longest_berge_path(F3(), exact_budget(), true);
    CHECK(weak.certificate->length() == 3);
    CHECK(verify_certificate(F3(), *weak.certificate).valid);

    CHECK(longest_berge_path(F1(), {}, false).certificate->length() == 4);
    const auto empty = longest_berge_path(Hypergraph::empty(5, 3), {}, false);
    CHECK(empty.certificate->length() == 1);
}

TEST_CASE("exact solvers agree with the brute-force oracle on small instances") {
    Rng rng(20260101);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 3 + rng.below(4);
        const std::size_t max_m = std::min<std::size_t>(8, n * (n - 1) * (n - 2) / 6);
        const std::size_t m = rng.below(max_m + 1);
        const auto edges = oracle::random_edges(n, 3, m, rng);
        const Hypergraph h(n, 3, edges);
        for (bool heuristic : {false, true}) {
            SolveBudget b;
            b.mode = heuristic ? SolveMode::heuristicFirst : SolveMode::exactOnly;
            b.seed = trial;
            const auto ord = find_hamiltonian_berge(h, b);
            const auto weak = find_weak_hamiltonian(h, b);
            REQUIRE(ord.status != SolveStatus::inconclusive);
            REQUIRE(weak.status != SolveStatus::inconclusive);
            CHECK((ord.status == SolveStatus::found) == oracle::hamiltonian(n, edges, false));
            CHECK((weak.status == SolveStatus::found) == oracle::hamiltonian(n, edges, true));
            check_sound(h, ord, false);
            check_sound(h, weak, true);
            if (ord.status == SolveStatus::found) CHECK(weak.status == SolveStatus::found);
        }
        const auto lp = longest_berge_path(h, exact_budget(), false);
        const auto lpw = longest_berge_path(h, exact_budget(), true);
        CHECK(lp.certificate->length() == oracle::longest_path(n, edges, false));
        CHECK(lpw.certificate->length() == oracle::longest_path(n, edges, true));
        CHECK(verify_certificate(h, *lp.certificate).valid);
        CHECK(verify_certificate(h, *lpw.certificate).valid);
        ++checked;
    }
    CHECK(checked == 300);
}

TEST_CASE("heuristic solver is sound on random instances up to n = 40") {
    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 8 + rng.below(33);
        const double p = threshold_p(n, 3, 1.0, Variant::ordinary);
        const auto h = gnrp_sample(n, 3, p, derive_seed(5, trial));
        SolveBudget b;
        b.node_limit = 200'000;
        b.seed = trial;
        check_sound(h, find_hamiltonian_berge(h, b), false);
        check_sound(h, find_weak_hamiltonian(h, b), true);
    }
}

TEST_CASE("directed Hamiltonicity") {
    Digraph tri(3);
    tri.add_arc(1, 2);
    tri.add_arc(2, 3);
    tri.add_arc(3, 1);
    const auto res = digraph_hamilton(tri, {});
    REQUIRE(res.status == SolveStatus::found);
    CHECK(*res.order == std::vector<Vertex>{1, 2, 3});

    Digraph complete(5);
    for (Vertex a = 1; a <= 5; ++a)
        for (Vertex b = 1; b <= 5; ++b)
            if (a != b) complete.add_arc(a, b);
    CHECK(digraph_hamilton(complete, {}).status == SolveStatus::found);

    Digraph source(3);
    source.add_arc(1, 2);
    source.add_arc(2, 3);
    source.add_arc(1, 3);
    CHECK(digraph_hamilton(source, {}).status == SolveStatus::provedAbsent);
}

TEST_CASE("directed solver arcs all belong to the digraph") {
    Rng rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 5 + rng.below(60);
        Digraph d(n);
        for (Vertex a = 1; a <= n; ++a)
            for (int i = 0; i < 3; ++i) {
                const Vertex b = static_cast<Vertex>(1 + rng.below(n));
                if (b != a) d.add_arc(a, b);
            }
        SolveBudget b;
        b.node_limit = 100'000;
        b.seed = trial;
        const auto res = digraph_hamilton(d, b);
        if (res.status != SolveStatus::found) continue;
        const auto& order = *res.order;
        CHECK(order.size() == n);
        for (std::size_t i = 0; i < n; ++i) CHECK(d.has_arc(order[i], order[(i + 1) % n]));
    }
}

TEST_CASE("2-out pipeline") {
    auto sample = kout_sample(60, 3, 2, Replacement::with, 11);
    const auto res = kout2_pipeline(sample, {}, 3);
    if (res.status == SolveStatus::found) {
        CHECK(verify_certificate(sample.hypergraph, *res.certificate).hamiltonian);
        CHECK_FALSE(res.certificate->weak);
    }
    auto one = kout_sample(20, 3, 1, Replacement::with, 1);
    CHECK_ERROR_CODE(kout2_pipeline(one, {}, 0), ErrorCode::WrongK);
}

TEST_CASE("1-out weak pipeline") {
    auto sample = kout_sample(40, 4, 1, Replacement::with, 5);
    const auto res = one_out_weak_pipeline(sample, {});
    if (res.status == SolveStatus::found) {
        CHECK(res.certificate->weak);
        CHECK(verify_certificate(sample.hypergraph, *res.certificate).hamiltonian);
    }
    auto r3 = kout_sample(20, 3, 1, Replacement::with, 1);
    CHECK_ERROR_CODE(one_out_weak_pipeline(r3, {}), ErrorCode::WrongR);
    auto k2 = kout_sample(20, 4, 2, Replacement::with, 1);
    CHECK_ERROR_CODE(one_out_weak_pipeline(k2, {}), ErrorCode::WrongK);
}

TEST_CASE("degree-1 triple obstruction") {
    // u=1, v=2, w=3 hang off x=4.
    const Hypergraph h(7, 3, {{1, 4, 5}, {2, 4, 6}, {3, 4, 7}, {5, 6, 7}});
    const auto w = degree1_triple_obstruction(h);
    REQUIRE(w);
    CHECK(*w == TripleWitness{1, 2, 3, 4});
    CHECK(find_weak_hamiltonian(h, exact_budget()).status == SolveStatus::provedAbsent);
    CHECK_FALSE(degree1_triple_obstruction(F1()));
    CHECK_ERROR_CODE(degree1_triple_obstruction(Hypergraph(4, 2, {{1, 2}})), ErrorCode::WrongR);
}

TEST_CASE("triple witness implies no weak cycle on small random instances") {
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 5 + rng.below(4);
        const auto edges = oracle::random_edges(n, 3, 2 + rng.below(5), rng);
        const Hypergraph h(n, 3, edges);
        if (degree1_triple_obstruction(h)) CHECK_FALSE(oracle::hamiltonian(n, edges, true));
    }
}
