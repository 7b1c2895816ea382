#include "bergelab/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "bergelab/error.hpp"

namespace bergelab {

std::size_t Hypergraph::KeyHash::operator()(const std::vector<Vertex>& key) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Vertex v : key) {
        h ^= v;
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

Hypergraph::Hypergraph(std::size_t n, std::size_t r, const std::vector<std::vector<Vertex>>& edges,
                       bool allow_duplicates)
    : n_(n), r_(r), allow_duplicates_(allow_duplicates) {
    if (n < 1) throw Error(ErrorCode::ParameterOutOfRange, "hypergraph needs n >= 1");
    if (r < 2 || r > n)
        throw Error(ErrorCode::ParameterOutOfRange,
                    "uniformity must satisfy 2 <= r <= n (r=" + std::to_string(r) + ", n=" + std::to_string(n) + ")");

    edges_.reserve(edges.size() * r);
    lookup_.reserve(edges.size());
    std::vector<std::size_t> degree(n + 2, 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::vector<Vertex> e = edges[i];
        if (e.size() != r)
            throw Error(ErrorCode::EdgeWrongSize, "edge " + std::to_string(i) + " has " + std::to_string(e.size()) +
                                                      " vertices, expected " + std::to_string(r));
        std::sort(e.begin(), e.end());
        for (Vertex v : e)
            if (v < 1 || v > n)
                throw Error(ErrorCode::VertexOutOfRange,
                            "vertex " + std::to_string(v) + " in edge " + std::to_string(i) + " outside 1.." + std::to_string(n));
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw Error(ErrorCode::EdgeWrongSize, "edge " + std::to_string(i) + " repeats a vertex");
        const auto id = static_cast<EdgeId>(i);
        auto [it, inserted] = lookup_.emplace(e, id);
        if (!inserted && !allow_duplicates)
            throw Error(ErrorCode::DuplicateEdge, "edge " + std::to_string(i) + " repeats edge " + std::to_string(it->second));
        for (Vertex v : e) ++degree[v];
        edges_.insert(edges_.end(), e.begin(), e.end());
    }

    offsets_.assign(n + 2, 0);
    for (std::size_t v = 1; v <= n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
    incidence_.resize(offsets_[n + 1]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end());
    const std::size_t m = edges.size();
    for (std::size_t e = 0; e < m; ++e)
        for (std::size_t j = 0; j < r; ++j) incidence_[cursor[edges_[e * r + j]]++] = static_cast<EdgeId>(e);
    edge_count_ = m;
}

std::size_t Hypergraph::degree(Vertex v) const {
    if (!valid_vertex(v))
        throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v) + " outside 1.." + std::to_string(n_));
    return offsets_[v + 1] - offsets_[v];
}

std::size_t Hypergraph::min_degree() const noexcept {
    std::size_t best = SIZE_MAX;
    for (Vertex v = 1; v <= n_; ++v) best = std::min(best, offsets_[v + 1] - offsets_[v]);
    return best;
}

std::size_t Hypergraph::max_degree() const noexcept {
    std::size_t best = 0;
    for (Vertex v = 1; v <= n_; ++v) best = std::max(best, offsets_[v + 1] - offsets_[v]);
    return best;
}

bool Hypergraph::contains(EdgeId e, Vertex v) const noexcept {
    const auto verts = edge(e);
    return std::binary_search(verts.begin(), verts.end(), v);
}

std::optional<EdgeId> Hypergraph::find_edge(std::span<const Vertex> vertices) const {
    std::vector<Vertex> key(vertices.begin(), vertices.end());
    std::sort(key.begin(), key.end());
    const auto it = lookup_.find(key);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::vector<Vertex>> Hypergraph::edge_list() const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(m());
    for (EdgeId e = 0; e < m(); ++e) {
        const auto verts = edge(e);
        out.emplace_back(verts.begin(), verts.end());
    }
    return out;
}

Hypergraph Hypergraph::with_edge(std::vector<Vertex> extra) const {
    auto list = edge_list();
    list.push_back(std::move(extra));
    return Hypergraph(n_, r_, list, allow_duplicates_);
}

ShadowGraph::ShadowGraph(const Hypergraph& h) : adjacency_(h.n() + 1) {
    for (EdgeId e = 0; e < h.m(); ++e) {
        const auto verts = h.edge(e);
        for (std::size_t a = 0; a < verts.size(); ++a)
            for (std::size_t b = a + 1; b < verts.size(); ++b) {
                auto& ids = pairs_[key(verts[a], verts[b])];
                if (ids.empty()) {
                    adjacency_[verts[a]].push_back(verts[b]);
                    adjacency_[verts[b]].push_back(verts[a]);
                }
                ids.push_back(e);  // e ascends, so lists stay sorted
            }
    }
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool ShadowGraph::adjacent(Vertex u, Vertex v) const noexcept {
    return u != v && pairs_.contains(key(u, v));
}

std::span<const EdgeId> ShadowGraph::multiplicity(Vertex u, Vertex v) const noexcept {
    if (u == v) return {};
    const auto it = pairs_.find(key(u, v));
    if (it == pairs_.end()) return {};
    return it->second;
}

Hypergraph ShadowGraph::as_graph() const {
    std::vector<std::vector<Vertex>> edges;
    edges.reserve(pairs_.size());
    for (Vertex u = 1; u < adjacency_.size(); ++u)
        for (Vertex v : adjacency_[u])
            if (u < v) edges.push_back({u, v});
    const std::size_t n = adjacency_.size() - 1;
    return Hypergraph(std::max<std::size_t>(n, 2), 2, edges);
}

CertificateVerdict verify_certificate(const Hypergraph& h, const BergeCertificate& cert) {
    CertificateVerdict verdict;
    auto fail = [&](std::optional<std::size_t> step, std::string why) {
        verdict.valid = false;
        verdict.hamiltonian = false;
        verdict.failing_step = step;
        verdict.violation = std::move(why);
        return verdict;
    };

    const std::size_t len = cert.vertices.size();
    const bool cycle = cert.kind == CertificateKind::cycle;
    if (len == 0) return fail(std::nullopt, "empty vertex sequence");
    if (cycle && len < 2) return fail(std::nullopt, "cycle needs at least 2 vertices");
    const std::size_t steps = cycle ? len : len - 1;
    if (cert.edges.size() != steps)
        return fail(std::nullopt, "expected " + std::to_string(steps) + " edges, got " + std::to_string(cert.edges.size()));

    std::vector<char> seen(h.n() + 1, 0);
    for (std::size_t i = 0; i < len; ++i) {
        const Vertex v = cert.vertices[i];
        if (!h.valid_vertex(v)) return fail(std::nullopt, "vertex " + std::to_string(v) + " out of range at position " + std::to_string(i));
        if (seen[v]) return fail(std::nullopt, "repeated vertex " + std::to_string(v) + " at position " + std::to_string(i));
        seen[v] = 1;
    }

    std::vector<char> used(h.m(), 0);
    for (std::size_t i = 0; i < steps; ++i) {
        const EdgeId e = cert.edges[i];
        if (e >= h.m()) return fail(i, "unknown edge at step " + std::to_string(i));
        const Vertex a = cert.vertices[i];
        const Vertex b = cert.vertices[(i + 1) % len];
        if (!h.contains(e, a) || !h.contains(e, b))
            return fail(i, "edge " + std::to_string(e) + " does not contain both endpoints at step " + std::to_string(i));
        if (used[e] && !cert.weak) return fail(i, "repeated edge at step " + std::to_string(i));
        used[e] = 1;
    }

    verdict.valid = true;
    verdict.hamiltonian = len == h.n() && (!cycle || h.n() >= 3);
    return verdict;
}

Hypergraph read_fixture(std::istream& in) {
    std::size_t n = 0, r = 0, m = 0;
    if (!(in >> n >> r >> m)) throw Error(ErrorCode::ParseError, "fixture header must be 'n r m'");
    std::vector<std::vector<Vertex>> edges(m, std::vector<Vertex>(r));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            long long v = 0;
            if (!(in >> v)) throw Error(ErrorCode::ParseError, "fixture truncated at edge " + std::to_string(i));
            if (v < 1 || static_cast<unsigned long long>(v) > n)
                throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v) + " in edge " + std::to_string(i));
            edges[i][j] = static_cast<Vertex>(v);
        }
    return Hypergraph(n, r, edges);
}

Hypergraph read_fixture_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return read_fixture(in);
}

void write_fixture(std::ostream& out, const Hypergraph& h) {
    out << h.n() << ' ' << h.r() << ' ' << h.m() << '\n';
    for (EdgeId e = 0; e < h.m(); ++e) {
        const auto verts = h.edge(e);
        for (std::size_t j = 0; j < verts.size(); ++j) out << (j ? " " : "") << verts[j];
        out << '\n';
    }
}

void write_fixture_file(const std::string& path, const Hypergraph& h) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    write_fixture(out, h);
}

nlohmann::json to_json(const BergeCertificate& cert) {
    return {{"kind", cert.kind == CertificateKind::cycle ? "cycle" : "path"},
            {"weak", cert.weak},
            {"vertices", cert.vertices},
            {"edges", cert.edges}};
}

BergeCertificate certificate_from_json(const nlohmann::json& j) {
    try {
        BergeCertificate cert;
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "cycle") cert.kind = CertificateKind::cycle;
        else if (kind == "path") cert.kind = CertificateKind::path;
        else throw Error(ErrorCode::ParseError, "certificate kind must be cycle or path");
        cert.weak = j.value("weak", false);
        cert.vertices = j.at("vertices").get<std::vector<Vertex>>();
        cert.edges = j.at("edges").get<std::vector<EdgeId>>();
        return cert;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::ParseError, ex.what());
    }
}

} // namespace bergelab
