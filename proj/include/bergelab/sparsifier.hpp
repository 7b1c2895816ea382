#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergelab/hypergraph.hpp"
#include "bergelab/posa.hpp"

namespace bergelab {

/// Vertices of degree <= epsilon * ln n.
std::vector<Vertex> small_set(const Hypergraph& h, double epsilon);

struct SparsifierOutput {
    double epsilon = 0.0;
    std::vector<Vertex> small;                 // ascending
    Hypergraph gamma0 = Hypergraph::empty(2, 2);
    std::vector<std::vector<EdgeId>> choices;  // index v (1..n), EdgeIds of H; [0] unused
    std::vector<EdgeId> source;                // gamma0 EdgeId -> EdgeId of H
};

/// Every vertex outside SMALL keeps ceil(epsilon ln n) uniformly chosen
/// incident edges (all of them if fewer); SMALL vertices keep everything.
/// gamma0 lists the union in ascending EdgeId order of H.
SparsifierOutput sparsify(const Hypergraph& h, double epsilon, std::uint64_t seed);

enum class PropertyStatus { pass, fail, sampledPass, notChecked };

struct PropertyVerdict {
    PropertyStatus status = PropertyStatus::notChecked;
    std::uint64_t checked = 0;       // sets or (U, W) pairs examined
    nlohmann::json witness;          // null unless status == fail
    std::string note;
};

/// Thresholds as used, with fractional sizes rounded: floor for "at most",
/// ceil for exact or "at least" sizes.
struct PropertyParams {
    double epsilon = 0.0;
    double log_n = 0.0;
    double small_threshold = 0.0;  // epsilon ln n
    double max_degree = 0.0;       // 10 ln n
    double small_limit = 0.0;      // n^0.9
    std::size_t u_max = 0;         // floor(n / sqrt(ln n))
    std::size_t u_exact = 0;       // ceil(n / sqrt(ln n))
    std::size_t w_exact = 0;       // ceil(n / 4)
    double p6_min_edges = 0.0;     // n (ln n)^(1/3)
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    bool sampled = false;

    /// floor(|U| (ln n)^(3/4)).
    double p4_limit(std::size_t u) const;
    /// floor(|U| (ln n)^(1/4)).
    std::size_t p5_w_max(std::size_t u) const;
    /// epsilon ln n |U| / 2.
    double p5_limit(std::size_t u) const;
};

PropertyParams property_params(std::size_t n, double epsilon);

struct PropertyOptions {
    bool sampled = false;              // exact mode still samples where enumeration exceeds the limit
    std::size_t trials = 10'000;
    std::uint64_t seed = 0;
    std::uint64_t exact_limit = 1'000'000;
    std::array<bool, 7> enabled{true, true, true, true, true, true, true};
};

struct PropertyReport {
    PropertyParams params;
    std::array<PropertyVerdict, 7> p;  // p[0] is P1

    const PropertyVerdict& operator[](int property) const { return p.at(property - 1); }
};

/// P1..P7 on H; P7 examines gamma0 and throws MissingGamma0 without it.
PropertyReport check_properties(const Hypergraph& h, const Hypergraph* gamma0, double epsilon,
                                const PropertyOptions& options = {});

struct ImplicationVerdict {
    bool weak = false;
    std::size_t min_degree = 0;              // of gamma0
    bool degree_ok = false;                  // >= 2 (weak: >= 1)
    std::array<PropertyStatus, 4> hypotheses{};  // P3, P4, P5, P7
    bool hypotheses_hold = false;            // every hypothesis pass or sampledPass
    bool hypotheses_exact = false;           // every hypothesis decided exactly
    bool connected = false;
    ExpanderReport expansion;
    bool conclusion_holds = false;
    bool critical = false;                   // hypotheses hold, conclusion fails
};

/// Hypotheses on (H, gamma0): min degree of gamma0, P3-P5 on H, P7 on
/// gamma0. Conclusion: gamma0 connected and a (floor(n/4), 2)-expander,
/// or for the weak form a weak (floor(n/4), r-1)-expander.
ImplicationVerdict implication_check(const Hypergraph& h, const SparsifierOutput& sparse, double epsilon,
                                     bool weak = false, const PropertyOptions& options = {});

const char* to_string(PropertyStatus s) noexcept;

nlohmann::json to_json(const SparsifierOutput& out);
nlohmann::json to_json(const PropertyReport& report);
nlohmann::json to_json(const ImplicationVerdict& verdict);

} // namespace bergelab
