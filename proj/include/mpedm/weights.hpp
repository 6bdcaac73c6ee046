#ifndef MPEDM_WEIGHTS_HPP
#define MPEDM_WEIGHTS_HPP

#include <Eigen/Dense>

#include "mpedm/data.hpp"

namespace mpedm {

/// Symmetric k-NN Gaussian weights: omega_ij = exp(-phi * ||a_i - a_j||^2)
/// when (i,j) is a neighbor pair in either direction, 0 otherwise.
struct WeightGraph {
    Eigen::MatrixXd omega;  // n x n, symmetric, zero diagonal
    int knn_k = 0;
    double phi = 0.0;
};

/// The 2n x 2n coefficient matrices of the lifted model plus the fixed
/// top-left block of pairwise squared data distances.
struct LiftedCoefficients {
    Eigen::MatrixXd H;            // 1/4 at (i, n+i) and (n+i, i), else 0
    Eigen::MatrixXd W;            // omega/2 on the bottom-right off-diagonal block
    Eigen::MatrixXd fixed_block;  // n x n, ||a_i - a_j||^2

    int n() const { return static_cast<int>(fixed_block.rows()); }
};

/// Brute-force Euclidean k-NN search, neighbor sets symmetrized by union.
/// Equidistant neighbors are broken by smaller sample index.
WeightGraph build_knn_weights(const DataMatrix& data, int k, double phi);

LiftedCoefficients build_lifted(const DataMatrix& data, const WeightGraph& graph);

}  // namespace mpedm

#endif
