#ifndef MPEDM_TESTS_SUPPORT_HPP
#define MPEDM_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace mpedm::test {

inline Eigen::MatrixXd random_symmetric(int m, std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Eigen::MatrixXd A(m, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i <= j; ++i) {
            A(i, j) = u(rng);
            A(j, i) = A(i, j);
        }
    return A;
}

inline Eigen::MatrixXd random_points(int dim, int count, std::mt19937_64& rng,
                                     double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Eigen::MatrixXd P(dim, count);
    for (int j = 0; j < count; ++j)
        for (int i = 0; i < dim; ++i) P(i, j) = u(rng);
    return P;
}

// Cyclic Jacobi eigensolver, kept deliberately separate from the library's
// eigensolver so spectral results can be cross-checked against it.
// Returns eigenvalues descending with matching eigenvector columns.
inline void jacobi_eigen(Eigen::MatrixXd A, Eigen::VectorXd& values,
                         Eigen::MatrixXd& vectors) {
    const int m = static_cast<int>(A.rows());
    vectors = Eigen::MatrixXd::Identity(m, m);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) off += A(p, q) * A(p, q);
        if (off < 1e-28) break;
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) {
                if (std::abs(A(p, q)) < 1e-300) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                Eigen::MatrixXd G = Eigen::MatrixXd::Identity(m, m);
                G(p, p) = c; G(q, q) = c; G(p, q) = s; G(q, p) = -s;
                A = G.transpose() * A * G;
                vectors = vectors * G;
            }
    }
    values.resize(m);
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return A(a, a) > A(b, b); });
    Eigen::MatrixXd sorted(m, m);
    for (int i = 0; i < m; ++i) {
        values(i) = A(order[i], order[i]);
        sorted.col(i) = vectors.col(order[i]);
    }
    vectors = sorted;
}

}  // namespace mpedm::test

#endif
