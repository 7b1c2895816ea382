#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "bergelab/hypergraph.hpp"
#include "bergelab/solvers.hpp"

namespace bergelab {

enum class RotationCase { unusedEdge, usedEdge };

/// One rotation: new link (pivot, right end) through `edge`, suffix reversed.
/// unusedEdge: edge was not on the path. usedEdge: edge was the link
/// leaving the pivot.
struct RotationStep {
    Vertex pivot;
    EdgeId edge;
    RotationCase kind;
    bool operator==(const RotationStep&) const = default;
};

struct PathExtension {
    BergeCertificate path;  // rotated path the extension starts from
    Vertex vertex;          // off-path vertex reached from the right end
    EdgeId edge;
};

struct RotationState {
    BergeCertificate base_path;
    Vertex left_endpoint = 0;
    std::vector<Vertex> R;    // reachable right endpoints, ascending
    std::vector<Vertex> Rpm;  // base-path neighbours of R, ascending
    std::map<Vertex, std::vector<RotationStep>> derivation;  // shortest witness per endpoint
    std::optional<PathExtension> extension;
    std::size_t states = 0;   // distinct paths visited
    bool truncated = false;   // state limit reached before the fixed point
};

/// Closure of the base path under rotations that keep the left endpoint.
/// Ordinary semantics keep links distinct; weak semantics allow repeats and
/// track only the vertex order (links are the lowest covering EdgeId).
RotationState rotation_closure(const Hypergraph& h, const BergeCertificate& path, bool weak = false,
                               std::size_t state_limit = 1'000'000);

/// Applies a rotation sequence to a path; throws InvalidPath if a step does
/// not apply.
BergeCertificate replay_rotations(const Hypergraph& h, const BergeCertificate& path,
                                  const std::vector<RotationStep>& steps, bool weak = false);

/// R± on base-path numbering: v_i with v_{i-1} or v_{i+1} in R.
std::vector<Vertex> r_plus_minus(const BergeCertificate& base, const std::vector<Vertex>& R);

enum class BoosterMode { exact, sampled };

struct BoosterOptions {
    bool weak = false;
    BoosterMode mode = BoosterMode::exact;
    std::size_t samples = 1000;  // sampled mode: candidate draws
    std::uint64_t seed = 0;
};

struct BoosterReport {
    std::vector<std::vector<Vertex>> boosters;  // colex order
    std::size_t candidates = 0;                 // non-edges tested
    std::size_t inconclusive = 0;               // sampled mode only
    std::size_t longest_path = 0;               // in H
    bool hamiltonian = false;                   // H itself
    bool exact = true;
};

/// Non-edges e with a longer longest path in H + e, or H + e Hamiltonian.
/// Exact mode throws BudgetExceeded when a search does not finish.
BoosterReport boosters(const Hypergraph& h, const SolveBudget& budget, const BoosterOptions& options = {});

enum class ExpanderVerdict { expander, counterexample, sampledPass };

struct ExpanderWitness {
    std::vector<Vertex> X;
    std::vector<Vertex> Y;
};

struct ExpanderReport {
    ExpanderVerdict verdict = ExpanderVerdict::expander;
    std::size_t k = 0;
    double alpha = 0.0;
    bool weak = false;
    std::optional<ExpanderWitness> witness;
    std::uint64_t checked_sets = 0;
};

struct ExpanderMode {
    bool sampled = false;
    std::size_t trials = 10'000;
    std::uint64_t seed = 0;
    std::uint64_t set_limit = 1'000'000;  // exact mode guard on C(n, <=k)
};

/// (k, alpha)-expander: every X with |X| <= k and every Y disjoint from X
/// with |Y| < alpha|X| leave some edge meeting X once and missing Y.
ExpanderReport is_expander(const Hypergraph& h, std::size_t k, double alpha, const ExpanderMode& mode = {});

/// Weak (k, alpha)-expander: |N(X) \ X| >= alpha|X| for all 1 <= |X| <= k.
ExpanderReport is_weak_expander(const Hypergraph& h, std::size_t k, double alpha, const ExpanderMode& mode = {});

/// True iff some edge meets X exactly once and avoids Y.
bool expansion_holds(const Hypergraph& h, const std::vector<Vertex>& X, const std::vector<Vertex>& Y);

bool is_connected(const Hypergraph& h);

struct AbsorptionResult {
    SolveResult result;             // certificate EdgeIds refer to `supply`
    std::size_t absorptions = 0;
    std::vector<std::vector<Vertex>> absorbed;
};

/// Grows H_start by supply edges that extend or close a rotated longest
/// path until it is Hamiltonian; at most n absorptions.
AbsorptionResult booster_absorption(const Hypergraph& start, const Hypergraph& supply, const SolveBudget& budget);

const char* to_string(ExpanderVerdict v) noexcept;

nlohmann::json to_json(const RotationState& state);
nlohmann::json to_json(const BoosterReport& report);
nlohmann::json to_json(const ExpanderReport& report);

} // namespace bergelab
