#ifndef MPEDM_PIPELINE_HPP
#define MPEDM_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpedm/data.hpp"
#include "mpedm/solver.hpp"

namespace mpedm {

/// Validated CLI arguments for one pipeline invocation. Exactly one input
/// source (csv / idx pair / blobs) must be set.
struct PipelineArgs {
    std::optional<std::string> csv_path;
    std::optional<std::string> label_column;
    std::optional<std::string> idx_images_path;
    std::optional<std::string> idx_labels_path;
    bool blobs = false;
    std::optional<int> count;

    SolverConfig solver;
    double zero_tol = -1.0;  // negative selects the relative default
    NormalizeMode normalize_mode = NormalizeMode::MinMax;
    std::uint64_t seed = 0;

    std::optional<std::string> output_path;
    std::optional<std::string> score_external_path;  // label file, one id per line
};

struct RunReport {
    static constexpr int kSchemaVersion = 1;

    std::vector<int> labels;
    int num_clusters = 0;
    std::optional<double> ri;
    std::optional<double> nmi;
    int iterations = 0;
    bool converged = true;
    double final_objective = 0.0;
    double final_feasibility = 0.0;
    std::vector<double> objective_trace;
    double wall_time_seconds = 0.0;
    SolverConfig config_echo;
    NormalizeMode normalize_echo = NormalizeMode::MinMax;
    std::uint64_t seed_echo = 0;
    double zero_tol_used = 0.0;

    std::string to_json() const;
    static RunReport from_json(const std::string& text);
};

bool operator==(const RunReport& a, const RunReport& b);

/// load -> normalize -> weights -> solve -> label -> score. In
/// score-external mode the solver is skipped and the external labels are
/// scored against the input's true labels. Errors from any stage are
/// rethrown with a stage tag prefix.
RunReport run_pipeline(const PipelineArgs& args);

}  // namespace mpedm

#endif
