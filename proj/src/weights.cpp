#include "mpedm/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mpedm/geometry.hpp"

namespace mpedm {

WeightGraph build_knn_weights(const DataMatrix& data, int k, double phi) {
    const int n = data.n();
    if (n < 2) throw std::invalid_argument("build_knn_weights: need n >= 2");
    if (k < 1 || k >= n)
        throw std::invalid_argument("build_knn_weights: k must lie in [1, n-1]");
    if (phi <= 0.0) throw std::invalid_argument("build_knn_weights: phi must be positive");

    const Eigen::MatrixXd dist2 = edm_from_points(data.values);

    WeightGraph graph;
    graph.knn_k = k;
    graph.phi = phi;
    graph.omega = Eigen::MatrixXd::Zero(n, n);

    for (int i = 0; i < n; ++i) {
        std::vector<int> order;
        order.reserve(n - 1);
        for (int j = 0; j < n; ++j)
            if (j != i) order.push_back(j);
        // ties between equidistant neighbors go to the smaller index
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return dist2(i, a) < dist2(i, b);
        });
        for (int t = 0; t < k; ++t) {
            const int j = order[t];
            const double w = std::exp(-phi * dist2(i, j));
            graph.omega(i, j) = w;
            graph.omega(j, i) = w;
        }
    }
    return graph;
}

LiftedCoefficients build_lifted(const DataMatrix& data, const WeightGraph& graph) {
    const int n = data.n();
    if (graph.omega.rows() != n)
        throw std::invalid_argument("build_lifted: graph order does not match data");

    LiftedCoefficients out;
    out.fixed_block = edm_from_points(data.values);

    out.H = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        out.H(i, n + i) = 0.25;
        out.H(n + i, i) = 0.25;
    }

    out.W = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    out.W.bottomRightCorner(n, n) = 0.5 * graph.omega;
    out.W.bottomRightCorner(n, n).diagonal().setZero();
    return out;
}

}  // namespace mpedm
