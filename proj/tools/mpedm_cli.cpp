#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mpedm/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Convex clustering via a Euclidean distance matrix model"};

    mpedm::PipelineArgs args;
    std::string input, idx_images, idx_labels, label_column, normalize = "minmax",
                output, score_external;

    app.add_option("--input", input, "CSV input file");
    app.add_option("--idx-images", idx_images, "idx-format image file");
    app.add_option("--idx-labels", idx_labels, "idx-format label file");
    app.add_flag("--blobs", args.blobs, "generate the five-blob synthetic dataset");
    app.add_option("--label-column", label_column,
                   "true-label column, by header name or 0-based index");
    int count = 0;
    app.add_option("--count", count, "take only the first N samples");
    app.add_option("--gamma", args.solver.gamma, "fusion penalty weight");
    app.add_option("--rho", args.solver.rho, "cone penalty parameter");
    app.add_option("--phi", args.solver.phi, "Gaussian weight decay");
    app.add_option("--knn", args.solver.knn_k, "neighbors per point in the weight graph");
    app.add_option("--rank", args.solver.rank, "embedding dimension bound");
    app.add_option("--tol", args.solver.tol, "relative iterate-change stopping threshold");
    app.add_option("--max-iter", args.solver.max_iter, "iteration cap");
    app.add_option("--zero-tol", args.zero_tol,
                   "numerical-zero threshold for label extraction (default: relative rule)");
    app.add_option("--normalize", normalize, "minmax | zscore | none")
        ->check(CLI::IsMember({"minmax", "zscore", "none"}));
    app.add_option("--seed", args.seed, "random seed for synthetic data");
    app.add_option("--output", output, "write the JSON report here instead of stdout");
    app.add_option("--score-external", score_external,
                   "score an external label file (one id per line) instead of solving");

    CLI11_PARSE(app, argc, argv);

    if (!input.empty()) args.csv_path = input;
    if (!idx_images.empty()) args.idx_images_path = idx_images;
    if (!idx_labels.empty()) args.idx_labels_path = idx_labels;
    if (!label_column.empty()) args.label_column = label_column;
    if (app.count("--count")) args.count = count;
    if (!output.empty()) args.output_path = output;
    if (!score_external.empty()) args.score_external_path = score_external;
    try {
        args.normalize_mode = mpedm::parse_normalize_mode(normalize);
        const mpedm::RunReport report = mpedm::run_pipeline(args);
        const std::string text = report.to_json();
        if (args.output_path) {
            std::ofstream out(*args.output_path);
            if (!out) {
                std::cerr << "[output] cannot write " << *args.output_path << "\n";
                return 1;
            }
            out << text << "\n";
        } else {
            std::cout << text << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
