#ifndef MPEDM_DATA_HPP
#define MPEDM_DATA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mpedm {

/// n observations of d features, stored column-per-sample.
struct DataMatrix {
    Eigen::MatrixXd values;        // d x n
    std::vector<int> true_labels;  // empty when unknown, else length n

    int n() const { return static_cast<int>(values.cols()); }
    int d() const { return static_cast<int>(values.rows()); }
    bool has_labels() const { return !true_labels.empty(); }
};

enum class NormalizeMode { MinMax, ZScore, None };

NormalizeMode parse_normalize_mode(const std::string& s);
std::string to_string(NormalizeMode mode);

/// Rows are samples. The optional label column (by header name, or by
/// 0-based index when the string parses as an integer) is pulled out as
/// true_labels; string labels are mapped to ids in order of first
/// appearance. A header row is auto-detected by a non-numeric first line.
DataMatrix load_csv(const std::string& path,
                    const std::optional<std::string>& label_column = {});

/// idx-format pair (big-endian magics 0x00000803 / 0x00000801). Images are
/// flattened row-major and scaled to [0,1]; the first `count` samples are
/// taken when given.
DataMatrix load_idx(const std::string& images_path, const std::string& labels_path,
                    std::optional<int> count = {});

/// Per-feature normalization. Constant features map to all zeros in both
/// minmax and zscore modes.
DataMatrix normalize(const DataMatrix& data, NormalizeMode mode);

struct BlobSpec {
    std::vector<std::pair<double, double>> centers;  // 2-D centers
    int points_per_cluster = 50;
    double variance = 0.1;
    std::uint64_t seed = 0;
};

/// Isotropic Gaussian blobs around the given 2-D centers. Sampling uses
/// mt19937_64 with Box-Muller on explicit uniforms, so a fixed seed gives
/// bit-identical output on any platform.
DataMatrix generate_blobs(const BlobSpec& spec);

}  // namespace mpedm

#endif
