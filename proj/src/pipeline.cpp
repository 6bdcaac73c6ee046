#include "mpedm/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "mpedm/labeling.hpp"
#include "mpedm/metrics.hpp"

namespace mpedm {

namespace {

using nlohmann::json;

template <typename F>
auto staged(const char* stage, F&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("[") + stage + "] " + e.what());
    }
}

std::vector<int> read_label_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open label file " + path);
    std::vector<int> labels;
    int v;
    while (in >> v) labels.push_back(v);
    if (labels.empty()) throw std::runtime_error("no labels in " + path);
    return labels;
}

json config_to_json(const SolverConfig& c) {
    return json{{"gamma", c.gamma},   {"rho", c.rho},   {"rank", c.rank},
                {"tol", c.tol},       {"max_iter", c.max_iter},
                {"knn_k", c.knn_k},   {"phi", c.phi}};
}

SolverConfig config_from_json(const json& j) {
    SolverConfig c;
    c.gamma = j.at("gamma");
    c.rho = j.at("rho");
    c.rank = j.at("rank");
    c.tol = j.at("tol");
    c.max_iter = j.at("max_iter");
    c.knn_k = j.at("knn_k");
    c.phi = j.at("phi");
    return c;
}

}  // namespace

std::string RunReport::to_json() const {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["labels"] = labels;
    j["num_clusters"] = num_clusters;
    if (ri) j["ri"] = *ri;
    if (nmi) j["nmi"] = *nmi;
    j["iterations"] = iterations;
    j["converged"] = converged;
    j["final_objective"] = final_objective;
    j["final_feasibility"] = final_feasibility;
    j["objective_trace"] = objective_trace;
    j["wall_time_seconds"] = wall_time_seconds;
    j["config"] = config_to_json(config_echo);
    j["normalize"] = to_string(normalize_echo);
    j["seed"] = seed_echo;
    j["zero_tol_used"] = zero_tol_used;
    return j.dump(2);
}

RunReport RunReport::from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::runtime_error("RunReport: unsupported schema version");
    RunReport r;
    r.labels = j.at("labels").get<std::vector<int>>();
    r.num_clusters = j.at("num_clusters");
    if (j.contains("ri")) r.ri = j.at("ri").get<double>();
    if (j.contains("nmi")) r.nmi = j.at("nmi").get<double>();
    r.iterations = j.at("iterations");
    r.converged = j.at("converged");
    r.final_objective = j.at("final_objective");
    r.final_feasibility = j.at("final_feasibility");
    r.objective_trace = j.at("objective_trace").get<std::vector<double>>();
    r.wall_time_seconds = j.at("wall_time_seconds");
    r.config_echo = config_from_json(j.at("config"));
    r.normalize_echo = parse_normalize_mode(j.at("normalize"));
    r.seed_echo = j.at("seed");
    r.zero_tol_used = j.at("zero_tol_used");
    return r;
}

bool operator==(const RunReport& a, const RunReport& b) {
    return a.labels == b.labels && a.num_clusters == b.num_clusters && a.ri == b.ri &&
           a.nmi == b.nmi && a.iterations == b.iterations && a.converged == b.converged &&
           a.final_objective == b.final_objective &&
           a.final_feasibility == b.final_feasibility &&
           a.objective_trace == b.objective_trace &&
           a.wall_time_seconds == b.wall_time_seconds &&
           a.config_echo.gamma == b.config_echo.gamma &&
           a.config_echo.rho == b.config_echo.rho &&
           a.config_echo.rank == b.config_echo.rank &&
           a.config_echo.tol == b.config_echo.tol &&
           a.config_echo.max_iter == b.config_echo.max_iter &&
           a.config_echo.knn_k == b.config_echo.knn_k &&
           a.config_echo.phi == b.config_echo.phi &&
           a.normalize_echo == b.normalize_echo && a.seed_echo == b.seed_echo &&
           a.zero_tol_used == b.zero_tol_used;
}

RunReport run_pipeline(const PipelineArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();

    const DataMatrix raw = staged("load", [&] {
        const int sources = (args.csv_path ? 1 : 0) +
                            (args.idx_images_path || args.idx_labels_path ? 1 : 0) +
                            (args.blobs ? 1 : 0);
        if (sources != 1)
            throw std::runtime_error("exactly one input source required (csv, idx pair, or blobs)");
        if (args.csv_path) {
            DataMatrix d = load_csv(*args.csv_path, args.label_column);
            if (args.count) {
                if (*args.count < 1 || *args.count > d.n())
                    throw std::runtime_error("count out of range");
                DataMatrix head;
                head.values = d.values.leftCols(*args.count);
                if (d.has_labels())
                    head.true_labels.assign(d.true_labels.begin(),
                                            d.true_labels.begin() + *args.count);
                return head;
            }
            return d;
        }
        if (args.idx_images_path) {
            if (!args.idx_labels_path)
                throw std::runtime_error("idx images given without idx labels");
            return load_idx(*args.idx_images_path, *args.idx_labels_path, args.count);
        }
        BlobSpec spec;
        spec.centers = {{1.5, 2.0}, {2.5, 3.0}, {1.5, 3.0}, {2.0, 2.5}, {3.0, 2.0}};
        spec.points_per_cluster = 50;
        // sigma = 0.1: matches the separability of the reference layout; a
        // per-coordinate variance of 0.1 would overlap neighbouring blobs so
        // heavily that even the planted partition is unrecoverable.
        spec.variance = 0.01;
        spec.seed = args.seed;
        return generate_blobs(spec);
    });

    const DataMatrix data =
        staged("normalize", [&] { return normalize(raw, args.normalize_mode); });

    RunReport report;
    report.config_echo = args.solver;
    report.normalize_echo = args.normalize_mode;
    report.seed_echo = args.seed;

    if (args.score_external_path) {
        staged("score", [&] {
            if (!data.has_labels())
                throw std::runtime_error("score-external requires true labels in the input");
            const std::vector<int> external = read_label_file(*args.score_external_path);
            if (external.size() != static_cast<std::size_t>(data.n()))
                throw std::runtime_error("external label count does not match input");
            report.labels = external;
            int max_id = 0;
            for (int v : external) max_id = std::max(max_id, v);
            report.num_clusters = max_id;
            report.ri = rand_index(data.true_labels, external);
            report.nmi = mpedm::nmi(data.true_labels, external).value;
            return 0;
        });
    } else {
        const DistanceState state =
            staged("solve", [&] { return run(data, args.solver); });
        const ClusterLabeling labeling =
            staged("label", [&] { return extract_labels(state, args.zero_tol); });

        report.labels = labeling.labels;
        report.num_clusters = labeling.num_clusters;
        report.iterations = state.iterations;
        report.converged = state.converged;
        report.final_objective = state.objective_trace.back();
        report.final_feasibility = state.feasibility_trace.back();
        report.objective_trace = state.objective_trace;
        report.zero_tol_used = labeling.zero_tol;
        if (data.has_labels()) {
            staged("score", [&] {
                report.ri = rand_index(data.true_labels, labeling.labels);
                report.nmi = mpedm::nmi(data.true_labels, labeling.labels).value;
                return 0;
            });
        }
    }

    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace mpedm
