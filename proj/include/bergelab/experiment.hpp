#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergelab/random_models.hpp"
#include "bergelab/solvers.hpp"

namespace bergelab {

inline constexpr const char* kVersion = "0.1.0";

enum class ExperimentKind { stopping, threshold, koutBerge, koutWeak, couponCover, implicationAudit };

/// A threshold on an aggregated frequency, evaluated in check mode.
struct Check {
    std::string metric;
    std::optional<double> x;        // grid point; all points when absent
    std::optional<double> min;
    std::optional<double> max;
    bool nondecreasing = false;     // along the grid
    std::optional<double> min_spread;  // last point minus first point
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::stopping;
    std::size_t n = 0;
    std::size_t r = 3;
    std::optional<double> p;         // threshold: fixed p instead of the c-grid
    std::vector<double> c;           // threshold grid
    std::size_t k = 2;
    Variant variant = Variant::ordinary;
    Replacement replacement = Replacement::with;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    SolveBudget budget;
    double epsilon = 0.3;
    std::size_t workers = 0;         // 0: BERGELAB_WORKERS or hardware concurrency
    bool negative_control = true;    // stopping: also solve H(T-1)
    std::string output;              // path prefix; empty = no files
    std::vector<std::string> formats{"json", "csv", "plotdata"};
    double max_inconclusive_rate = 0.1;
    std::vector<Check> checks;
    nlohmann::json raw;              // the config as given
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

struct Outcome {
    std::string metric;
    std::string value;  // found / provedAbsent / inconclusive, or yes / no
    nlohmann::json stats;
};

struct TrialRecord {
    std::size_t index = 0;
    std::optional<double> x;  // grid point
    std::uint64_t seed = 0;
    std::vector<Outcome> outcomes;
    nlohmann::json extra = nlohmann::json::object();  // stopping times, edge counts, ...
};

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// 95% Wilson score interval; [0, 1] when trials == 0.
Interval wilson_interval(std::size_t successes, std::size_t trials);

struct Aggregate {
    std::string metric;
    std::optional<double> x;
    std::size_t trials = 0;
    std::size_t successes = 0;
    std::size_t conclusive = 0;
    std::size_t inconclusive = 0;
    double frequency = 0.0;  // successes / conclusive
    Interval wilson;
    double inconclusive_rate = 0.0;
    std::optional<double> limit;  // threshold runs: exp(-exp(-c))
};

/// Certificates re-checked against the degree and triple-witness
/// necessary conditions; any violation is a solver bug.
struct Audit {
    std::size_t certificates = 0;
    std::size_t violations = 0;
    std::vector<std::string> details;
};

struct CheckResult {
    std::string description;
    bool passed = false;
    std::string observed;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<TrialRecord> trials;
    std::vector<Aggregate> aggregates;
    Audit audit;
    nlohmann::json summary = nlohmann::json::object();  // experiment-specific totals
    double wall_ms = 0.0;

    const Aggregate* find(const std::string& metric, std::optional<double> x = std::nullopt) const;
};

ExperimentResult run_experiment(const ExperimentConfig& config);
ExperimentResult run_stopping(const ExperimentConfig& config);
ExperimentResult run_threshold(const ExperimentConfig& config);
ExperimentResult run_kout(const ExperimentConfig& config);
ExperimentResult run_coupon(const ExperimentConfig& config);
ExperimentResult run_implication_audit(const ExperimentConfig& config);

/// Config checks plus the inconclusive-rate cap and the audit.
std::vector<CheckResult> evaluate_checks(const ExperimentResult& result);

enum class OutputFormat { json, csv, plotdata };

nlohmann::json to_json(const ExperimentResult& result, bool include_wall_time = true);
std::string to_csv(const ExperimentResult& result);
std::string to_plotdata(const ExperimentResult& result);

/// Writes <prefix>.json / .csv / .plot.tsv, creating missing directories; throws IoError.
void emit_outputs(const ExperimentResult& result, const std::string& prefix, const std::vector<OutputFormat>& formats);

const char* to_string(ExperimentKind k) noexcept;
ExperimentKind experiment_from_string(const std::string& s);
OutputFormat output_format_from_string(const std::string& s);

/// Worker count: explicit value, else BERGELAB_WORKERS, else hardware.
std::size_t resolve_workers(std::size_t requested);

} // namespace bergelab
