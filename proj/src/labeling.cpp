#include "mpedm/labeling.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace mpedm {

double default_zero_tol(const Eigen::MatrixXd& block) {
    std::vector<double> positive;
    for (Eigen::Index j = 0; j < block.cols(); ++j)
        for (Eigen::Index i = 0; i < j; ++i)
            if (block(i, j) > 0.0) positive.push_back(block(i, j));
    if (positive.empty()) return 1e-10;
    const auto mid = positive.begin() + positive.size() / 2;
    std::nth_element(positive.begin(), mid, positive.end());
    double median = *mid;
    if (positive.size() % 2 == 0) {
        // lower neighbor of the upper-median
        median = 0.5 * (median + *std::max_element(positive.begin(), mid));
    }
    return std::max(1e-4 * median, 1e-10);
}

ClusterLabeling extract_labels(const Eigen::MatrixXd& block, double zero_tol) {
    if (block.rows() != block.cols())
        throw std::invalid_argument("extract_labels: block must be square");
    const int n = static_cast<int>(block.rows());

    std::vector<int> raw(n, 0);
    int next_id = 1;
    for (int i = 0; i < n; ++i) {
        if (raw[i] != 0) continue;
        raw[i] = next_id;
        for (int j = 0; j < n; ++j)
            if (block(i, j) <= zero_tol) raw[j] = next_id;  // may reassign
        ++next_id;
    }

    // relabeling a whole earlier cluster leaves id gaps; compact them
    ClusterLabeling out;
    out.zero_tol = zero_tol;
    out.labels.resize(n);
    std::vector<int> remap(next_id, 0);
    int compact = 0;
    for (int i = 0; i < n; ++i) {
        if (remap[raw[i]] == 0) remap[raw[i]] = ++compact;
        out.labels[i] = remap[raw[i]];
    }
    out.num_clusters = compact;
    return out;
}

ClusterLabeling extract_labels(const DistanceState& state, double zero_tol) {
    const Eigen::MatrixXd block = state.representative_block();
    if (zero_tol < 0.0) zero_tol = default_zero_tol(block);
    return extract_labels(block, zero_tol);
}

}  // namespace mpedm
