#ifndef MPEDM_LABELING_HPP
#define MPEDM_LABELING_HPP

#include <vector>

#include <Eigen/Dense>

#include "mpedm/solver.hpp"

namespace mpedm {

struct ClusterLabeling {
    std::vector<int> labels;  // 1-based, consecutive ids
    int num_clusters = 0;
    double zero_tol = 0.0;
};

/// Default numerical-zero threshold for a representative block:
/// 1e-4 times the median of its strictly positive entries, floored at 1e-10.
double default_zero_tol(const Eigen::MatrixXd& block);

/// Sequential scan of the representative block: each unlabeled point opens a
/// new cluster and pulls in every j with block(i, j) <= zero_tol, overwriting
/// earlier assignments. Later scans may therefore reassign points, which is
/// the intended semantics. Ids are compacted to 1..num_clusters afterwards.
ClusterLabeling extract_labels(const Eigen::MatrixXd& block, double zero_tol);

/// Labels from a completed solve; tol < 0 selects the default rule.
ClusterLabeling extract_labels(const DistanceState& state, double zero_tol = -1.0);

}  // namespace mpedm

#endif
