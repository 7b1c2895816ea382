// bergelab: command-line front end for the solvers, checkers and experiments.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bergelab/combinatorics.hpp"
#include "bergelab/error.hpp"
#include "bergelab/experiment.hpp"
#include "bergelab/posa.hpp"
#include "bergelab/sparsifier.hpp"

using namespace bergelab;
using nlohmann::json;

namespace {

std::vector<std::size_t> parse_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const auto v = std::stoull(item, &pos);
        if (pos != item.size()) throw Error(ErrorCode::ParseError, "bad list entry '" + item + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << body)) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
}

struct BudgetFlags {
    std::uint64_t node_limit = SolveBudget{}.node_limit;
    std::uint64_t time_limit_ms = SolveBudget{}.time_limit_ms;
    std::string mode = "heuristicFirst";
    std::uint64_t seed = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--node-limit", node_limit, "search node budget");
        cmd->add_option("--time-limit-ms", time_limit_ms, "wall-clock budget");
        cmd->add_option("--mode", mode, "exactOnly or heuristicFirst");
        cmd->add_option("--seed", seed, "heuristic seed");
    }
    SolveBudget budget() const {
        SolveBudget b;
        b.node_limit = node_limit;
        b.time_limit_ms = time_limit_ms;
        b.mode = solve_mode_from_string(mode);
        b.seed = seed;
        return b;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Berge Hamiltonicity experiments on random hypergraphs"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
    std::string config_path, run_output;
    bool check = false, no_wall = false;
    std::size_t workers = 0;
    run->add_option("config", config_path, "experiment config")->required()->check(CLI::ExistingFile);
    run->add_flag("--check", check, "exit 2 when a configured threshold or the audit fails");
    run->add_option("--workers", workers, "worker threads (default: BERGELAB_WORKERS or all cores)");
    run->add_option("--output", run_output, "output path prefix (overrides the config)");
    run->add_flag("--no-wall-time", no_wall, "omit wall time from stdout JSON");

    // solve
    auto* solve = app.add_subcommand("solve", "Hamiltonian Berge cycle or longest path for a fixture");
    std::string fixture;
    bool weak = false, ordinary = false, path_mode = false;
    BudgetFlags solve_budget;
    solve->add_option("fixture", fixture)->required()->check(CLI::ExistingFile);
    auto* weak_flag = solve->add_flag("--weak", weak, "weak Berge semantics");
    solve->add_flag("--ordinary", ordinary, "ordinary Berge semantics (default)")->excludes(weak_flag);
    solve->add_flag("--path", path_mode, "longest Berge path instead of a cycle");
    solve_budget.attach(solve);

    // properties
    auto* props = app.add_subcommand("properties", "check the sparsifier properties P1-P7");
    std::string gamma_path;
    double epsilon = 0.3;
    bool sampled = false;
    std::size_t trials = 10'000;
    std::uint64_t seed = 0;
    props->add_option("fixture", fixture)->required()->check(CLI::ExistingFile);
    props->add_option("--epsilon", epsilon);
    props->add_option("--gamma0", gamma_path, "sparse fixture for P7")->check(CLI::ExistingFile);
    props->add_flag("--sampled", sampled, "sample large set families");
    props->add_option("--trials", trials);
    props->add_option("--seed", seed);

    // expander-check
    auto* expander = app.add_subcommand("expander-check", "(k, alpha)-expander or weak expander check");
    std::size_t k = 0;
    double alpha = 2.0;
    std::uint64_t set_limit = ExpanderMode{}.set_limit;
    expander->add_option("fixture", fixture)->required()->check(CLI::ExistingFile);
    expander->add_option("--k", k, "max |X| (default n/4)");
    expander->add_option("--alpha", alpha);
    expander->add_flag("--weak", weak, "weak expander: |N(X) \\ X| >= alpha|X|");
    expander->add_flag("--sampled", sampled);
    expander->add_option("--trials", trials);
    expander->add_option("--seed", seed);
    expander->add_option("--set-limit", set_limit, "exact-mode guard");

    // boosters
    auto* boost = app.add_subcommand("boosters", "list boosters of a fixture");
    std::size_t samples = 1000;
    BudgetFlags boost_budget;
    boost->add_option("fixture", fixture)->required()->check(CLI::ExistingFile);
    boost->add_flag("--weak", weak);
    boost->add_flag("--sampled", sampled);
    boost->add_option("--samples", samples);
    boost_budget.attach(boost);

    // rotate
    auto* rotate = app.add_subcommand("rotate", "rotation closure of a path");
    std::string vertices_arg, edges_arg;
    rotate->add_option("fixture", fixture)->required()->check(CLI::ExistingFile);
    rotate->add_option("--vertices", vertices_arg, "path vertices, comma separated (default: a longest path)");
    rotate->add_option("--edges", edges_arg, "link EdgeIds, comma separated (default: lowest covering edges)");
    rotate->add_flag("--weak", weak);

    // sparsify
    auto* sparse = app.add_subcommand("sparsify", "build the random sparse sub-hypergraph");
    std::string out_path, sidecar_path;
    sparse->add_option("fixture", fixture)->required()->check(CLI::ExistingFile);
    sparse->add_option("--epsilon", epsilon);
    sparse->add_option("--seed", seed);
    sparse->add_option("--out", out_path, "fixture for the sparse hypergraph (default stdout)");
    sparse->add_option("--sidecar", sidecar_path, "choice sidecar JSON");

    // sample
    auto* sample = app.add_subcommand("sample", "draw a random hypergraph as a fixture");
    std::string model = "gnrp", variant = "ordinary", replacement = "with";
    std::size_t n = 0, r = 3, length = 0, stop_k = 2;
    std::optional<double> p, c;
    std::size_t kout_k = 2;
    sample->add_option("--model", model, "gnrp, process or kout")->check(CLI::IsMember({"gnrp", "process", "kout"}));
    sample->add_option("-n", n)->required();
    sample->add_option("-r", r);
    sample->add_option("-p", p, "gnrp edge probability");
    sample->add_option("-c", c, "gnrp: use the threshold p for this c");
    sample->add_option("--variant", variant);
    sample->add_option("-k", kout_k, "kout picks per vertex");
    sample->add_option("--replacement", replacement);
    sample->add_option("--length", length, "process: prefix length (default T_k)");
    sample->add_option("--stop", stop_k, "process: stop at T_k");
    sample->add_option("--seed", seed);
    sample->add_option("--out", out_path, "fixture path (default stdout)");
    sample->add_option("--sidecar", sidecar_path, "kout: origin sidecar JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version exit 0; usage errors share exit code 1 with runtime errors.
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*run) {
            auto cfg = load_config(config_path);
            if (workers) cfg.workers = workers;
            if (!run_output.empty()) cfg.output = run_output;
            const auto result = run_experiment(cfg);
            if (!cfg.output.empty()) {
                std::vector<OutputFormat> formats;
                for (const auto& f : cfg.formats) formats.push_back(output_format_from_string(f));
                emit_outputs(result, cfg.output, formats);
            }
            json summary = json::array();
            for (const auto& a : result.aggregates) {
                json row{{"metric", a.metric},
                         {"frequency", a.frequency},
                         {"wilson95", {a.wilson.lo, a.wilson.hi}},
                         {"conclusive", a.conclusive},
                         {"inconclusiveRate", a.inconclusive_rate}};
                if (a.x) row["x"] = *a.x;
                if (a.limit) row["limit"] = *a.limit;
                summary.push_back(row);
            }
            json out{{"experiment", to_string(cfg.experiment)},
                     {"aggregates", summary},
                     {"audit", {{"certificates", result.audit.certificates}, {"violations", result.audit.violations}}},
                     {"summary", result.summary}};
            if (!no_wall) out["wallTimeMs"] = result.wall_ms;
            if (check) {
                bool ok = true;
                json checks = json::array();
                for (const auto& c : evaluate_checks(result)) {
                    ok = ok && c.passed;
                    checks.push_back({{"check", c.description}, {"passed", c.passed}, {"observed", c.observed}});
                }
                out["checks"] = checks;
                print(out);
                return ok ? 0 : 2;
            }
            print(out);
            return 0;
        }
        if (*solve) {
            const auto h = read_fixture_file(fixture);
            const auto b = solve_budget.budget();
            const auto res = path_mode ? longest_berge_path(h, b, weak)
                             : weak    ? find_weak_hamiltonian(h, b)
                                       : find_hamiltonian_berge(h, b);
            print(to_json(res));
            return 0;
        }
        if (*props) {
            const auto h = read_fixture_file(fixture);
            std::optional<Hypergraph> gamma;
            if (!gamma_path.empty()) gamma = read_fixture_file(gamma_path);
            PropertyOptions opts;
            opts.sampled = sampled;
            opts.trials = trials;
            opts.seed = seed;
            if (!gamma) opts.enabled[6] = false;
            print(to_json(check_properties(h, gamma ? &*gamma : nullptr, epsilon, opts)));
            return 0;
        }
        if (*expander) {
            const auto h = read_fixture_file(fixture);
            ExpanderMode mode;
            mode.sampled = sampled;
            mode.trials = trials;
            mode.seed = seed;
            mode.set_limit = set_limit;
            const std::size_t kk = k ? k : std::max<std::size_t>(1, h.n() / 4);
            print(to_json(weak ? is_weak_expander(h, kk, alpha, mode) : is_expander(h, kk, alpha, mode)));
            return 0;
        }
        if (*boost) {
            const auto h = read_fixture_file(fixture);
            BoosterOptions opts;
            opts.weak = weak;
            opts.mode = sampled ? BoosterMode::sampled : BoosterMode::exact;
            opts.samples = samples;
            opts.seed = boost_budget.seed;
            print(to_json(boosters(h, boost_budget.budget(), opts)));
            return 0;
        }
        if (*rotate) {
            const auto h = read_fixture_file(fixture);
            BergeCertificate path;
            if (vertices_arg.empty()) {
                SolveBudget b;
                b.node_limit = 1'000'000;
                path = *longest_berge_path(h, b, weak).certificate;
            } else {
                path.kind = CertificateKind::path;
                path.weak = weak;
                for (auto v : parse_list(vertices_arg)) path.vertices.push_back(static_cast<Vertex>(v));
                if (!edges_arg.empty()) {
                    for (auto e : parse_list(edges_arg)) path.edges.push_back(static_cast<EdgeId>(e));
                } else {
                    const ShadowGraph shadow(h);
                    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
                        const auto cover = shadow.multiplicity(path.vertices[i], path.vertices[i + 1]);
                        if (cover.empty()) throw Error(ErrorCode::InvalidPath, "consecutive vertices share no edge");
                        path.edges.push_back(cover.front());
                    }
                }
            }
            print(to_json(rotation_closure(h, path, weak)));
            return 0;
        }
        if (*sparse) {
            const auto h = read_fixture_file(fixture);
            const auto out = sparsify(h, epsilon, seed);
            if (out_path.empty()) write_fixture(std::cout, out.gamma0);
            else write_fixture_file(out_path, out.gamma0);
            if (!sidecar_path.empty()) write_text(sidecar_path, to_json(out).dump(2) + "\n");
            return 0;
        }
        if (*sample) {
            std::optional<Hypergraph> h;
            json sidecar;
            if (model == "gnrp") {
                if (!p && !c) throw Error(ErrorCode::ParameterOutOfRange, "gnrp needs -p or -c");
                const double prob = p ? *p : threshold_p(n, r, *c, variant_from_string(variant));
                h = gnrp_sample(n, r, prob, seed);
            } else if (model == "process") {
                // Streams only as far as needed; the full permutation is C(n, r) long.
                ProcessStream stream(n, r, seed);
                MinDegreeTracker tracker(n, stop_k);
                std::vector<std::vector<Vertex>> edges;
                while (length ? edges.size() < length : tracker.min_degree() < stop_k) {
                    const auto rank = stream.next();
                    if (!rank) throw Error(ErrorCode::Unreachable, "process ended early");
                    edges.push_back(colex_unrank(*rank, r));
                    tracker.add(edges.back());
                }
                h = Hypergraph(n, r, edges);
            } else {
                const auto s = kout_sample(n, r, kout_k, replacement_from_string(replacement), seed);
                h = s.hypergraph;
                sidecar = kout_sidecar(s);
            }
            if (out_path.empty()) write_fixture(std::cout, *h);
            else write_fixture_file(out_path, *h);
            if (!sidecar_path.empty() && !sidecar.is_null()) write_text(sidecar_path, sidecar.dump(2) + "\n");
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
