#ifndef MPEDM_GEOMETRY_HPP
#define MPEDM_GEOMETRY_HPP

#include <Eigen/Dense>

namespace mpedm {

/// Result of a partial spectral decomposition: the algebraically largest
/// eigenpairs of a symmetric matrix, sorted descending.
struct SpectralTruncation {
    Eigen::VectorXd eigenvalues;   // length r_kept, descending
    Eigen::MatrixXd eigenvectors;  // m x r_kept, orthonormal columns
    int r_requested = 0;
};

/// J A J with J = I - (1/m) ee^T. Result has zero row sums.
Eigen::MatrixXd double_center(const Eigen::MatrixXd& A);

/// The r algebraically largest eigenpairs of symmetric A. Dispatches to a
/// full decomposition at small orders and to the iterative backend above
/// roughly order 100.
SpectralTruncation top_eigenpairs(const Eigen::MatrixXd& A, int r);

/// Partial backend: shifted block subspace iteration with Rayleigh-Ritz
/// extraction. `subspace` may carry the orthonormal block from a previous
/// call on a nearby matrix as a warm start; on return it holds the block for
/// the next call. Falls back to the dense path when iteration stalls.
SpectralTruncation top_eigenpairs_iterative(const Eigen::MatrixXd& A, int r,
                                            Eigen::MatrixXd* subspace = nullptr);

/// sum_{i<=r} max(0, lambda_i) p_i p_i^T. PSD with rank <= r.
Eigen::MatrixXd pca_truncate(const Eigen::MatrixXd& A, int r);

/// Projection onto the rank-cut conditional PSD cone:
/// pca_truncate(JAJ, r) + (A - JAJ). The set is nonconvex, so this is one
/// element of the projection set; ties at eigenvalue r are broken by the
/// eigensolver's ordering.
Eigen::MatrixXd project_cone(const Eigen::MatrixXd& A, int r);

/// As project_cone, threading a warm-start subspace through repeated calls
/// on slowly changing matrices.
Eigen::MatrixXd project_cone_warm(const Eigen::MatrixXd& A, int r,
                                  Eigen::MatrixXd& subspace);

/// 0.5 * squared Frobenius distance of -D to the rank-cut cone. Zero exactly
/// when -D lies in the cone, i.e. when D is an EDM of embedding dimension <= r.
double cone_distance_sq(const Eigen::MatrixXd& D, int r);

/// Classical multidimensional scaling: coordinates (r x m, columns are
/// points) from the top-r nonnegative eigenpairs of -0.5*JDJ. Negative
/// eigenvalues among the top r are clipped and their coordinates zeroed.
Eigen::MatrixXd cmds_embed(const Eigen::MatrixXd& D, int r);

/// Squared-distance matrix of a point configuration (columns are points).
Eigen::MatrixXd edm_from_points(const Eigen::MatrixXd& points);

}  // namespace mpedm

#endif
