#include "mpedm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace mpedm {

namespace {

void check_symmetric_finite(const Eigen::MatrixXd& A, const char* who) {
    if (A.rows() != A.cols())
        throw std::invalid_argument(std::string(who) + ": matrix is not square");
    if (!A.allFinite())
        throw std::invalid_argument(std::string(who) + ": non-finite entries");
}

}  // namespace

Eigen::MatrixXd double_center(const Eigen::MatrixXd& A) {
    check_symmetric_finite(A, "double_center");
    const auto m = A.rows();
    // JAJ = A - (1/m)(A e e^T + e e^T A) + (1/m^2)(e^T A e) e e^T
    const Eigen::VectorXd row_mean = A.rowwise().mean();
    const double grand_mean = row_mean.mean();
    Eigen::MatrixXd out = A;
    out.colwise() -= row_mean;
    out.rowwise() -= row_mean.transpose();
    out.array() += grand_mean;
    (void)m;
    return out;
}

namespace {

SpectralTruncation top_eigenpairs_dense(const Eigen::MatrixXd& A, int r) {
    const int m = static_cast<int>(A.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("top_eigenpairs: eigensolver did not converge (order " +
                                 std::to_string(m) + ")");
    // Eigen returns ascending order; take the trailing r columns reversed.
    SpectralTruncation out;
    out.r_requested = r;
    out.eigenvalues.resize(r);
    out.eigenvectors.resize(m, r);
    for (int i = 0; i < r; ++i) {
        out.eigenvalues(i) = es.eigenvalues()(m - 1 - i);
        out.eigenvectors.col(i) = es.eigenvectors().col(m - 1 - i);
    }
    return out;
}

}  // namespace

SpectralTruncation top_eigenpairs_iterative(const Eigen::MatrixXd& A, int r,
                                            Eigen::MatrixXd* subspace) {
    check_symmetric_finite(A, "top_eigenpairs");
    const int m = static_cast<int>(A.rows());
    if (r < 1 || r > m)
        throw std::invalid_argument("top_eigenpairs: r out of range");

    const int block = std::min(m, r + 4);
    constexpr int kDepth = 3;  // Krylov blocks per restart
    if (kDepth * block >= m) return top_eigenpairs_dense(A, r);

    const double scale = std::max(1.0, A.norm());
    const double tol = 1e-9 * scale;

    Eigen::MatrixXd Q;
    if (subspace && subspace->rows() == m && subspace->cols() == block) {
        Q = *subspace;
    } else {
        // deterministic start: fixed-seed uniform block
        std::mt19937_64 rng(0x5eed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Q.resize(m, block);
        for (int j = 0; j < block; ++j)
            for (int i = 0; i < m; ++i) Q(i, j) = u(rng);
    }

    // Restarted block Krylov: Rayleigh-Ritz on span[Q, AQ, A^2 Q] captures
    // both spectral extremes, so no shift is needed to isolate the
    // algebraically largest pairs.
    constexpr int kMaxRestart = 150;
    for (int it = 0; it < kMaxRestart; ++it) {
        Eigen::MatrixXd krylov(m, (kDepth + 1) * block);
        krylov.leftCols(block) = Q;
        for (int d = 1; d <= kDepth; ++d)
            krylov.middleCols(d * block, block).noalias() =
                A * krylov.middleCols((d - 1) * block, block);

        const int width = kDepth * block;
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(krylov.leftCols(width));
        const int rank_v = std::min<int>(width, static_cast<int>(qr.rank()));
        if (rank_v < r) break;  // degenerate basis: fall through to dense
        const Eigen::MatrixXd V =
            qr.householderQ() * Eigen::MatrixXd::Identity(m, rank_v);
        const Eigen::MatrixXd AV = A * V;
        const Eigen::MatrixXd small = V.transpose() * AV;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (small + small.transpose()));
        if (es.info() != Eigen::Success) break;

        const int keep = std::min(block, rank_v);
        if (keep < block) break;  // basis collapsed: fall through to dense
        Eigen::MatrixXd rot(rank_v, keep);
        Eigen::VectorXd ritz_vals(keep);
        for (int i = 0; i < keep; ++i) {
            ritz_vals(i) = es.eigenvalues()(rank_v - 1 - i);
            rot.col(i) = es.eigenvectors().col(rank_v - 1 - i);
        }
        const Eigen::MatrixXd ritz_vecs = V * rot;
        const Eigen::MatrixXd A_ritz = AV * rot;

        bool converged = keep >= r;
        for (int i = 0; i < r && converged; ++i)
            converged = (A_ritz.col(i) - ritz_vals(i) * ritz_vecs.col(i)).norm() <= tol;
        if (converged) {
            if (subspace) *subspace = ritz_vecs.leftCols(block);
            SpectralTruncation out;
            out.r_requested = r;
            out.eigenvalues = ritz_vals.head(r);
            out.eigenvectors = ritz_vecs.leftCols(r);
            return out;
        }
        Q = ritz_vecs.leftCols(keep);
    }
    // stalled (tight clusters straddling the block boundary): dense fallback
    SpectralTruncation out = top_eigenpairs_dense(A, r);
    if (subspace) subspace->resize(0, 0);
    return out;
}

SpectralTruncation top_eigenpairs(const Eigen::MatrixXd& A, int r) {
    check_symmetric_finite(A, "top_eigenpairs");
    const int m = static_cast<int>(A.rows());
    if (r < 1 || r > m)
        throw std::invalid_argument("top_eigenpairs: r out of range");
    if (m <= 100 || r + 4 >= m / 4) return top_eigenpairs_dense(A, r);
    return top_eigenpairs_iterative(A, r);
}

namespace {

Eigen::MatrixXd assemble_clipped(const SpectralTruncation& top, Eigen::Index m) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < top.eigenvalues.size(); ++i) {
        const double lambda = top.eigenvalues(i);
        if (lambda <= 0.0) break;  // descending, the rest are clipped too
        out.noalias() += lambda * top.eigenvectors.col(i) * top.eigenvectors.col(i).transpose();
    }
    return out;
}

}  // namespace

Eigen::MatrixXd pca_truncate(const Eigen::MatrixXd& A, int r) {
    const SpectralTruncation top =
        top_eigenpairs(A, std::min<int>(r, static_cast<int>(A.rows())));
    return assemble_clipped(top, A.rows());
}

Eigen::MatrixXd project_cone(const Eigen::MatrixXd& A, int r) {
    check_symmetric_finite(A, "project_cone");
    if (r < 1 || r > A.rows() - 1)
        throw std::invalid_argument("project_cone: r must lie in [1, order-1]");
    const Eigen::MatrixXd centered = double_center(A);
    return pca_truncate(centered, r) + (A - centered);
}

Eigen::MatrixXd project_cone_warm(const Eigen::MatrixXd& A, int r,
                                  Eigen::MatrixXd& subspace) {
    check_symmetric_finite(A, "project_cone");
    if (r < 1 || r > A.rows() - 1)
        throw std::invalid_argument("project_cone: r must lie in [1, order-1]");
    const Eigen::MatrixXd centered = double_center(A);
    const int m = static_cast<int>(A.rows());
    if (m <= 100 || r + 4 >= m / 4)
        return pca_truncate(centered, r) + (A - centered);
    const SpectralTruncation top = top_eigenpairs_iterative(centered, r, &subspace);
    return assemble_clipped(top, m) + (A - centered);
}

double cone_distance_sq(const Eigen::MatrixXd& D, int r) {
    const Eigen::MatrixXd neg = -D;
    return 0.5 * (neg - project_cone(neg, r)).squaredNorm();
}

Eigen::MatrixXd cmds_embed(const Eigen::MatrixXd& D, int r) {
    check_symmetric_finite(D, "cmds_embed");
    const int m = static_cast<int>(D.rows());
    const Eigen::MatrixXd gram = -0.5 * double_center(D);
    const SpectralTruncation top = top_eigenpairs(gram, std::min(r, m));
    Eigen::MatrixXd points = Eigen::MatrixXd::Zero(r, m);
    for (int i = 0; i < top.eigenvalues.size(); ++i) {
        const double lambda = top.eigenvalues(i);
        if (lambda <= 0.0) continue;  // tiny negatives from rounding: coordinate stays zero
        points.row(i) = std::sqrt(lambda) * top.eigenvectors.col(i).transpose();
    }
    return points;
}

Eigen::MatrixXd edm_from_points(const Eigen::MatrixXd& points) {
    if (!points.allFinite())
        throw std::invalid_argument("edm_from_points: non-finite coordinates");
    const int m = static_cast<int>(points.cols());
    const Eigen::VectorXd sq = points.colwise().squaredNorm();
    Eigen::MatrixXd D = sq.replicate(1, m) + sq.transpose().replicate(m, 1) -
                        2.0 * points.transpose() * points;
    // clean up rounding: exact zeros on the diagonal, clamp tiny negatives
    D = D.cwiseMax(0.0);
    D.diagonal().setZero();
    D = 0.5 * (D + D.transpose());
    return D;
}

}  // namespace mpedm
