#pragma once

// Search machinery shared by the solvers and the rotation/booster code.

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "bergelab/hypergraph.hpp"
#include "bergelab/rng.hpp"
#include "bergelab/solvers.hpp"

namespace bergelab::detail {

class BudgetClock {
public:
    BudgetClock(std::uint64_t node_limit, std::uint64_t time_limit_ms)
        : node_limit_(node_limit), time_limit_ms_(time_limit_ms), start_(std::chrono::steady_clock::now()) {}

    explicit BudgetClock(const SolveBudget& b) : BudgetClock(b.node_limit, b.time_limit_ms) {}

    // Counts one node; false once the node or time budget is spent.
    bool tick() noexcept {
        if (exhausted_) return false;
        if (++nodes_ > node_limit_) {
            exhausted_ = true;
            return false;
        }
        if ((nodes_ & 1023) == 0 && elapsed_ms() > static_cast<double>(time_limit_ms_)) {
            exhausted_ = true;
            return false;
        }
        return true;
    }

    bool exhausted() const noexcept { return exhausted_; }
    std::uint64_t nodes() const noexcept { return nodes_; }
    std::uint64_t remaining() const noexcept { return nodes_ >= node_limit_ ? 0 : node_limit_ - nodes_; }
    double elapsed_ms() const noexcept {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

    // Sub-budget for a phase: caps nodes at `share` while still charging this clock.
    std::uint64_t node_limit() const noexcept { return node_limit_; }
    void set_node_limit(std::uint64_t limit) noexcept {
        node_limit_ = limit;
        if (nodes_ < node_limit_) exhausted_ = false;
    }

private:
    std::uint64_t node_limit_;
    std::uint64_t time_limit_ms_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

/// A Berge path with distinct link edges, kept as a matching between the
/// consecutive vertex pairs and EdgeIds. New pairs are served by augmenting
/// paths, so an edge already in use can be freed by re-routing other links.
class LinkedPath {
public:
    static constexpr std::uint32_t kNone = UINT32_MAX;

    explicit LinkedPath(const Hypergraph& h);

    void reset(Vertex start);
    /// Replace the state with a given valid ordinary path.
    void load(const BergeCertificate& path);

    std::size_t size() const noexcept { return path_.size(); }
    const std::vector<Vertex>& vertices() const noexcept { return path_; }
    const std::vector<EdgeId>& links() const noexcept { return links_; }
    Vertex front() const noexcept { return path_.front(); }
    Vertex back() const noexcept { return path_.back(); }
    bool on_path(Vertex v) const noexcept { return pos_[v] != kNone; }
    std::uint32_t position(Vertex v) const noexcept { return pos_[v]; }
    bool edge_free(EdgeId e) const noexcept { return link_of_edge_[e] == kNone; }

    /// Free EdgeId for the pair (a, b), re-routing existing links if needed;
    /// kNoEdge if none. The returned edge is not yet attached to a link.
    EdgeId augment(Vertex a, Vertex b);

    void push_back(Vertex u, EdgeId e);
    void pop_back();
    void reverse();
    /// Rotation at pivot index j (0 <= j <= size-3): new link (path[j], back)
    /// and the suffix after j reversed. False (state unchanged) when no edge
    /// can serve the new link.
    bool rotate(std::uint32_t j);

    BergeCertificate certificate() const;

private:
    EdgeId augment_rec(Vertex a, Vertex b);

    const Hypergraph& h_;
    std::vector<Vertex> path_;
    std::vector<EdgeId> links_;
    std::vector<std::uint32_t> pos_;
    std::vector<std::uint32_t> link_of_edge_;
    std::vector<std::uint32_t> visit_;
    std::uint32_t stamp_ = 0;
};

struct WalkOutcome {
    std::optional<BergeCertificate> cycle;  // Hamiltonian, ordinary
    BergeCertificate best_path;             // longest path seen
    std::uint64_t rotations = 0;
};

/// Randomized rotation-extension walk with restarts. When `want_cycle` the
/// walk stops at the first Hamiltonian cycle; otherwise it only tracks the
/// longest path and stops once it has `path_target` vertices (0: all n).
WalkOutcome posa_walk(const Hypergraph& h, Rng& rng, BudgetClock& clock, bool want_cycle,
                      const std::optional<BergeCertificate>& seed_path = std::nullopt, std::size_t path_target = 0);

struct ExactOutcome {
    std::optional<BergeCertificate> cycle;
    bool exhausted = false;  // true only when the whole space was searched
};

/// Exhaustive Hamiltonian cycle search (ordinary semantics).
ExactOutcome exact_hamiltonian_cycle(const Hypergraph& h, BudgetClock& clock);

/// Exhaustive longest path search (ordinary semantics); `best` receives the
/// longest path found.
bool exact_longest_path(const Hypergraph& h, BudgetClock& clock, BergeCertificate& best);

/// Cheap necessary conditions for an ordinary Hamiltonian Berge cycle;
/// returns the violated condition.
std::optional<std::string> ordinary_obstruction(const Hypergraph& h, const ShadowGraph& shadow);
/// Same for weak cycles (conditions on the shadow graph).
std::optional<std::string> weak_obstruction(const Hypergraph& h, const ShadowGraph& shadow);

bool shadow_connected(const ShadowGraph& shadow);

/// Maps a Hamiltonian cycle of the shadow 2-graph back to hyperedges of h
/// (lowest covering EdgeId per pair).
BergeCertificate lift_weak(const ShadowGraph& shadow, const std::vector<Vertex>& order, CertificateKind kind);

} // namespace bergelab::detail
