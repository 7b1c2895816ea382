#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "bergelab/types.hpp"

namespace bergelab {

/// An r-uniform hypergraph on vertices 1..n.
///
/// Edges are stored sorted, flat, and dual-indexed (edge -> vertices and
/// vertex -> incident EdgeIds); both indexes are built once at construction
/// and the object is immutable afterwards.
class Hypergraph {
public:
    /// Validates every edge (size r, labels in 1..n, distinct vertices) and
    /// rejects repeated edge sets unless `allow_duplicates` is set.
    Hypergraph(std::size_t n, std::size_t r, const std::vector<std::vector<Vertex>>& edges,
               bool allow_duplicates = false);

    static Hypergraph empty(std::size_t n, std::size_t r) { return Hypergraph(n, r, {}); }

    std::size_t n() const noexcept { return n_; }
    std::size_t r() const noexcept { return r_; }
    std::size_t m() const noexcept { return edge_count_; }
    bool allows_duplicates() const noexcept { return allow_duplicates_; }

    std::span<const Vertex> edge(EdgeId e) const noexcept {
        return {edges_.data() + static_cast<std::size_t>(e) * r_, r_};
    }
    std::span<const EdgeId> incident(Vertex v) const noexcept {
        return {incidence_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    /// Throws VertexOutOfRange for v outside 1..n.
    std::size_t degree(Vertex v) const;
    std::size_t min_degree() const noexcept;
    std::size_t max_degree() const noexcept;

    bool contains(EdgeId e, Vertex v) const noexcept;
    bool valid_vertex(Vertex v) const noexcept { return v >= 1 && v <= n_; }

    /// EdgeId of the edge with this vertex set (any order), if present.
    std::optional<EdgeId> find_edge(std::span<const Vertex> vertices) const;

    std::vector<std::vector<Vertex>> edge_list() const;

    /// Copy with one more edge appended (new EdgeId = m()).
    Hypergraph with_edge(std::vector<Vertex> extra) const;

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<Vertex>& key) const noexcept;
    };

    std::size_t n_;
    std::size_t r_;
    bool allow_duplicates_;
    std::size_t edge_count_ = 0;
    std::vector<Vertex> edges_;           // m * r, each edge ascending
    std::vector<std::size_t> offsets_;    // CSR over vertices 0..n (index 0 unused)
    std::vector<EdgeId> incidence_;
    std::unordered_map<std::vector<Vertex>, EdgeId, KeyHash> lookup_;
};

/// 2-section of a hypergraph: u ~ v iff some edge contains both.
class ShadowGraph {
public:
    explicit ShadowGraph(const Hypergraph& h);

    std::size_t n() const noexcept { return adjacency_.size() - 1; }
    std::span<const Vertex> neighbors(Vertex v) const noexcept { return adjacency_[v]; }
    bool adjacent(Vertex u, Vertex v) const noexcept;
    /// EdgeIds containing both u and v, ascending; empty when not adjacent.
    std::span<const EdgeId> multiplicity(Vertex u, Vertex v) const noexcept;
    std::size_t pair_count() const noexcept { return pairs_.size(); }

    /// The shadow as a 2-uniform Hypergraph; pair edges are numbered in
    /// (u, v) lexicographic order with u < v.
    Hypergraph as_graph() const;

private:
    std::uint64_t key(Vertex u, Vertex v) const noexcept {
        if (u > v) std::swap(u, v);
        return static_cast<std::uint64_t>(u) * (adjacency_.size()) + v;
    }

    std::vector<std::vector<Vertex>> adjacency_;
    std::unordered_map<std::uint64_t, std::vector<EdgeId>> pairs_;
};

enum class CertificateKind { cycle, path };

struct BergeCertificate {
    CertificateKind kind = CertificateKind::cycle;
    bool weak = false;
    std::vector<Vertex> vertices;
    std::vector<EdgeId> edges;

    std::size_t length() const noexcept { return vertices.size(); }
    bool operator==(const BergeCertificate&) const = default;
};

struct CertificateVerdict {
    bool valid = false;
    bool hamiltonian = false;
    std::optional<std::size_t> failing_step;
    std::string violation;
};

/// Checks a certificate against `h`. Steps are 0-based: step i links
/// vertices[i] and vertices[i+1] (mod length for cycles) through edges[i].
/// Hamiltonian means valid, every vertex present, and for cycles n >= 3.
CertificateVerdict verify_certificate(const Hypergraph& h, const BergeCertificate& cert);

// Text fixture: "n r m" then m lines of r labels.
Hypergraph read_fixture(std::istream& in);
Hypergraph read_fixture_file(const std::string& path);
void write_fixture(std::ostream& out, const Hypergraph& h);
void write_fixture_file(const std::string& path, const Hypergraph& h);

nlohmann::json to_json(const BergeCertificate& cert);
BergeCertificate certificate_from_json(const nlohmann::json& j);

} // namespace bergelab
