#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "bergelab/combinatorics.hpp"
#include "bergelab/random_models.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bergelab;

namespace {

// |observed - expected| within `sigmas` binomial standard errors.
bool within(double hits, double trials, double p, double sigmas = 3.0) {
    const double se = std::sqrt(trials * p * (1.0 - p));
    return std::abs(hits - trials * p) <= sigmas * se;
}

} // namespace

TEST_CASE("G(n, r, p) extremes and mean edge count") {
    CHECK(gnrp_sample(8, 3, 0.0, 1).m() == 0);
    CHECK(gnrp_sample(8, 3, 1.0, 1).m() == binomial(8, 3));
    CHECK_ERROR_CODE(gnrp_sample(8, 3, 1.5, 1), ErrorCode::ParameterOutOfRange);

    double total = 0.0;
    const int seeds = 1000;
    for (int s = 0; s < seeds; ++s) total += static_cast<double>(gnrp_sample(20, 3, 0.05, derive_seed(11, s)).m());
    const double mean = total / seeds;
    const double expected = 0.05 * 1140;  // C(20, 3) = 1140
    const double se = std::sqrt(1140 * 0.05 * 0.95 / seeds);
    CHECK(std::abs(mean - expected) <= 3 * se);
}

TEST_CASE("process trace is a permutation with uniform first element") {
    const auto trace = process_sample(4, 3, 5);
    CHECK(trace.complete());
    std::set<std::vector<Vertex>> seen;
    for (const auto& e : trace.prefix(4).edge_list()) seen.insert(e);
    CHECK(seen.size() == 4);
    CHECK(trace.prefix(0).m() == 0);

    std::map<std::uint64_t, int> first;
    const int seeds = 2000;
    for (int s = 0; s < seeds; ++s) ++first[process_sample(4, 3, derive_seed(2, s), 1).order[0]];
    CHECK(first.size() == 4);
    for (auto [rank, count] : first) CHECK(within(count, seeds, 0.25));
}

TEST_CASE("process stream prefixes do not depend on the length drawn") {
    const auto longer = process_sample(9, 3, 17, 40);
    const auto shorter = process_sample(9, 3, 17, 10);
    CHECK(std::equal(shorter.order.begin(), shorter.order.end(), longer.order.begin()));
    CHECK_ERROR_CODE(process_sample(4, 3, 1, 5), ErrorCode::ParameterOutOfRange);
}

TEST_CASE("stopping times") {
    const auto f5 = trace_from_edges(4, 3, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
    CHECK(stopping_time(f5, 1) == 2);
    // Degrees after three steps are (3, 2, 2, 2): vertex 4 sits in {1,2,4}
    // and {1,3,4}, so T_2 is already reached.
    CHECK(f5.prefix(3).min_degree() == 2);
    CHECK(stopping_time(f5, 2) == 3);
    CHECK(stopping_time(f5, 0) == 0);
    CHECK_ERROR_CODE(stopping_time(f5, 4), ErrorCode::Unreachable);

    // T_k against a from-scratch degree count on random traces.
    for (int s = 0; s < 20; ++s) {
        const auto t = process_sample(10, 3, derive_seed(3, s));
        for (std::size_t k : {1u, 2u, 3u}) {
            const auto tk = stopping_time(t, k);
            CHECK(t.prefix(tk).min_degree() >= k);
            CHECK(t.prefix(tk - 1).min_degree() < k);
        }
    }
}

TEST_CASE("k-out samples") {
    const auto forced = kout_sample(3, 3, 2, Replacement::with, 1);
    CHECK(forced.hypergraph.m() == 1);
    CHECK_ERROR_CODE(kout_sample(5, 3, 0, Replacement::with, 1), ErrorCode::ParameterOutOfRange);

    const auto s = kout_sample(30, 3, 2, Replacement::without, 9);
    for (Vertex v = 1; v <= 30; ++v) {
        REQUIRE(s.choice_ids[v].size() == 2);
        CHECK(s.choice_ids[v][0] != s.choice_ids[v][1]);
        for (EdgeId e : s.choice_ids[v]) CHECK(s.hypergraph.contains(e, v));
    }
    std::size_t picks = 0;
    for (auto m : s.multiplicity) picks += m;
    CHECK(picks == 60);
}

TEST_CASE("k-out per-vertex marginal is uniform") {
    std::map<std::vector<Vertex>, int> counts;
    const int seeds = 5000;
    for (int s = 0; s < seeds; ++s) {
        const auto sample = kout_sample(6, 3, 1, Replacement::with, derive_seed(4, s));
        const auto e = sample.hypergraph.edge(sample.choice_ids[1][0]);
        counts[std::vector<Vertex>(e.begin(), e.end())]++;
    }
    CHECK(counts.size() == 10);
    for (const auto& [edge, count] : counts) {
        CHECK(edge.front() == 1);
        CHECK(within(count, seeds, 0.1));
    }
}

TEST_CASE("2-out orientation example") {
    const std::vector<std::vector<std::vector<Vertex>>> choices{
        {{1, 2, 3}, {1, 3, 4}}, {{1, 2, 3}, {2, 3, 4}}, {{1, 2, 3}, {2, 3, 4}}, {{1, 2, 4}, {2, 3, 4}}};
    const auto sample = kout_from_choices(4, 3, choices);
    const auto d = orient_two_out_labeled(sample, {true, true, true, true});
    for (auto [a, b] : std::vector<std::pair<Vertex, Vertex>>{{2, 1}, {3, 1}, {1, 3}, {1, 4}}) {
        CHECK(d.has_arc(a, b));
        bool from_one = false;
        for (const auto& o : d.provenance(a, b)) from_one = from_one || o.vertex == 1;
        CHECK(from_one);
    }
    const auto e123 = *sample.hypergraph.find_edge(std::vector<Vertex>{1, 2, 3});
    bool minus = false;
    for (const auto& o : d.provenance(2, 1)) minus = minus || (o == ArcOrigin{1, e123, ArcSign::minus});
    CHECK(minus);
}

TEST_CASE("2-out orientation degrees and provenance round trip") {
    for (int s = 0; s < 10; ++s) {
        const auto sample = kout_sample(25, 4, 2, Replacement::with, derive_seed(6, s));
        const auto d = orient_two_out(sample, s);
        std::set<EdgeId> ids;
        for (Vertex v = 1; v <= 25; ++v) {
            // Own contributions give r-1 arcs each way; collapsed parallels can only lower this.
            CHECK(d.out(v).size() >= 1);
            CHECK(d.in(v).size() >= 1);
        }
        for (auto [a, b] : d.arcs())
            for (const auto& o : d.provenance(a, b)) {
                CHECK(sample.hypergraph.contains(o.edge, a));
                CHECK(sample.hypergraph.contains(o.edge, b));
                ids.insert(o.edge);
            }
        CHECK(ids.size() <= sample.hypergraph.m());
    }
}

TEST_CASE("threshold probabilities") {
    // (r-1)! (log n + log log n + c) / n^(r-1), evaluated independently.
    const double ln100 = std::log(100.0);
    CHECK(threshold_p(100, 3, 0.0, Variant::ordinary) == doctest::Approx(2 * (ln100 + std::log(ln100)) / 1e4));
    CHECK(threshold_p(100, 3, 0.0, Variant::ordinary) == doctest::Approx(1.2266e-3).epsilon(1e-4));
    CHECK(threshold_p(100, 3, 0.0, Variant::weak) == doctest::Approx(9.2103e-4).epsilon(1e-4));
    CHECK(threshold_p(10, 3, 1e6, Variant::weak) == 1.0);
    CHECK(threshold_p(10, 3, -1e6, Variant::weak) == 0.0);
    CHECK(limit_probability(0.0) == doctest::Approx(0.367879).epsilon(1e-6));
    CHECK(limit_probability(2.0) == doctest::Approx(std::exp(-std::exp(-2.0))));
}

TEST_CASE("coupon cover estimate") {
    CHECK(coupon_cover_estimate(5, 5, 10, 1) == 1.0);

    // Inclusion-exclusion over the set of uncovered vertices.
    auto exact = [](std::size_t n, std::size_t r) {
        double sum = 0.0;
        for (std::size_t j = 0; j <= n; ++j) {
            const double miss = binomial_real(n - j, r) / binomial_real(n, r);
            sum += (j % 2 ? -1.0 : 1.0) * binomial_real(n, j) * std::pow(miss, static_cast<double>(n));
        }
        return sum;
    };
    CHECK(std::abs(coupon_cover_estimate(4, 3, 5000, 3) - exact(4, 3)) <= 0.03);
    // About 0.08 at n = 50: small, but the decay to 0 is slow.
    const double p50 = exact(50, 3);
    CHECK(p50 < 0.1);
    CHECK(within(coupon_cover_estimate(50, 3, 2000, 2) * 2000, 2000, p50));
    CHECK(coupon_cover_estimate(400, 3, 500, 4) < 0.05);
}

TEST_CASE("string conversions") {
    CHECK(variant_from_string(to_string(Variant::weak)) == Variant::weak);
    CHECK(replacement_from_string(to_string(Replacement::without)) == Replacement::without);
    CHECK_ERROR_CODE(variant_from_string("strong"), ErrorCode::ConfigInvalid);
}
