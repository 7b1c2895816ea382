#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergelab/hypergraph.hpp"
#include "bergelab/random_models.hpp"

namespace bergelab {

enum class SolveMode { exactOnly, heuristicFirst };

struct SolveBudget {
    std::uint64_t node_limit = 5'000'000;
    std::uint64_t time_limit_ms = 10'000;
    SolveMode mode = SolveMode::heuristicFirst;
    std::uint64_t seed = 0;  // drives the randomized heuristics only
};

enum class SolveStatus { found, provedAbsent, inconclusive };

struct SolveStats {
    std::uint64_t nodes = 0;
    std::uint64_t rotations = 0;
    double time_ms = 0.0;
    bool exhaustive = false;  // search space fully explored
};

struct SolveResult {
    SolveStatus status = SolveStatus::inconclusive;
    std::optional<BergeCertificate> certificate;
    SolveStats stats;
    std::string reason;  // short tag for provedAbsent / inconclusive
};

/// Weak Hamiltonian Berge cycle: a Hamiltonian cycle of the shadow graph,
/// each consecutive pair covered by its lowest covering EdgeId.
SolveResult find_weak_hamiltonian(const Hypergraph& h, const SolveBudget& budget);

/// Ordinary (distinct-edge) Hamiltonian Berge cycle. Heuristic phase is a
/// randomized rotation-extension walk; the exact phase enumerates shadow
/// cycles from a fixed start with incremental pair-to-edge matching, which
/// cuts every prefix that already violates Hall's condition.
SolveResult find_hamiltonian_berge(const Hypergraph& h, const SolveBudget& budget);

/// Longest Berge path (ordinary or weak). stats.exhaustive marks a proven
/// maximum.
SolveResult longest_berge_path(const Hypergraph& h, const SolveBudget& budget, bool weak);

struct DigraphSolveResult {
    SolveStatus status = SolveStatus::inconclusive;
    std::optional<std::vector<Vertex>> order;
    SolveStats stats;
    std::string reason;
};

/// Directed Hamiltonian cycle: cycle cover by bipartite matching, then
/// patching cycles together; exact backtracking for small n or as fallback.
DigraphSolveResult digraph_hamilton(const Digraph& d, const SolveBudget& budget);

/// 2-out pipeline: orient, find a directed Hamiltonian cycle, lift each arc
/// to one of its provenance edges with all lifted edges distinct.
SolveResult kout2_pipeline(const KOutSample& sample, const SolveBudget& budget, std::uint64_t seed);

/// 1-out weak pipeline (r >= 4): Hamiltonian cycle in the embedded
/// (r-1)-out graph, lifted to the picking hyperedges.
SolveResult one_out_weak_pipeline(const KOutSample& sample, const SolveBudget& budget);

struct TripleWitness {
    Vertex u, v, w;  // degree-1 vertices
    Vertex x;        // common neighbour
    bool operator==(const TripleWitness&) const = default;
};

/// r = 3 only. Three degree-1 vertices whose edges share a vertex x outside
/// {u, v, w}; x would need three cycle neighbours, so no weak Hamiltonian
/// Berge cycle exists (n >= 4).
std::optional<TripleWitness> degree1_triple_obstruction(const Hypergraph& h);

const char* to_string(SolveStatus s) noexcept;
const char* to_string(SolveMode m) noexcept;
SolveMode solve_mode_from_string(const std::string& s);

nlohmann::json to_json(const SolveResult& result, bool include_time = true);
nlohmann::json to_json(const DigraphSolveResult& result, bool include_time = true);

} // namespace bergelab
