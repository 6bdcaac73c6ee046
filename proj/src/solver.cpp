#include "mpedm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mpedm/geometry.hpp"

namespace mpedm {

Eigen::MatrixXd DistanceState::representative_block() const {
    const auto n = D.rows() / 2;
    return D.bottomRightCorner(n, n);
}

double objective_f(const Eigen::MatrixXd& D, const LiftedCoefficients& coeffs,
                   double gamma) {
    if ((D.array() < 0.0).any())
        throw std::invalid_argument("objective_f: negative entries in D");
    const double fidelity = coeffs.H.cwiseProduct(D).sum();
    const double fusion = coeffs.W.cwiseProduct(D.cwiseSqrt()).sum();
    return fidelity + gamma * fusion;
}

double penalized_objective(const Eigen::MatrixXd& D, const LiftedCoefficients& coeffs,
                           double gamma, double rho, int rank) {
    return objective_f(D, coeffs, gamma) + rho * cone_distance_sq(D, rank);
}

Eigen::MatrixXd majorant_coefficient(const Eigen::MatrixXd& Dk,
                                     const LiftedCoefficients& coeffs, double rho,
                                     int rank) {
    return coeffs.H + rho * project_cone(-Dk, rank);
}

double majorant_value(const Eigen::MatrixXd& D, const Eigen::MatrixXd& anchor,
                      int rank) {
    const Eigen::MatrixXd proj = project_cone(-anchor, rank);
    return 0.5 * D.squaredNorm() - 0.5 * proj.squaredNorm() +
           proj.cwiseProduct(D - anchor).sum();
}

double scalar_min(double a, double b) {
    if (a <= 0.0) return 0.0;
    if (b <= 0.0) return a;  // pure quadratic
    const double threshold = 4.0 / (3.0 * std::sqrt(3.0)) * a * std::sqrt(a);
    if (b >= threshold) return 0.0;

    // Roots of 2t^3 - 2at + b via the trigonometric form; the minimizer in
    // alpha = t^2 is either the largest root squared or the boundary 0.
    const double rc = std::pow(a / 3.0, 1.5);
    double cosarg = -b / (4.0 * rc);
    cosarg = std::clamp(cosarg, -1.0, 1.0);
    const double xi = std::acos(cosarg) / 3.0;
    const double scale = 2.0 * std::sqrt(a / 3.0);
    double t_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        const double t = scale * std::cos(xi + 2.0 * std::numbers::pi * i / 3.0);
        t_max = std::max(t_max, t);
    }
    const double candidate = t_max * t_max;
    const auto value = [&](double alpha) {
        return 0.5 * (alpha - a) * (alpha - a) + b * std::sqrt(alpha);
    };
    return value(candidate) < value(0.0) ? candidate : 0.0;
}

Eigen::MatrixXd solve_subproblem(const Eigen::MatrixXd& Dk,
                                 const LiftedCoefficients& coeffs,
                                 const SolverConfig& config) {
    const int n = coeffs.n();
    const int m = 2 * n;
    if (Dk.rows() != m)
        throw std::invalid_argument("solve_subproblem: iterate order mismatch");

    return solve_subproblem_with(majorant_coefficient(Dk, coeffs, config.rho, config.rank),
                                 coeffs, config);
}

/// Closed-form elementwise solve given a precomputed linear coefficient.
Eigen::MatrixXd solve_subproblem_with(const Eigen::MatrixXd& Dhat,
                                      const LiftedCoefficients& coeffs,
                                      const SolverConfig& config) {
    const int n = coeffs.n();
    const int m = 2 * n;
    Eigen::MatrixXd next(m, m);
    next.topLeftCorner(n, n) = coeffs.fixed_block;
    for (int j = 1; j < m; ++j) {
        const int i_start = (j < n) ? n : 0;  // top-left block is fixed
        for (int i = i_start; i < j; ++i) {
            const double a = -Dhat(i, j) / config.rho;
            const double b = (config.gamma / config.rho) * coeffs.W(i, j);
            const double alpha = scalar_min(a, b);
            next(i, j) = alpha;
            next(j, i) = alpha;
        }
    }
    next.diagonal().setZero();
    return next;
}

Eigen::MatrixXd initial_state(const DataMatrix& data) {
    const int n = data.n();
    Eigen::MatrixXd stacked(data.d(), 2 * n);
    stacked << data.values, data.values;
    return edm_from_points(stacked);
}

DistanceState run(const DataMatrix& data, const SolverConfig& config) {
    return run(data, build_knn_weights(data, config.knn_k, config.phi), config);
}

DistanceState run(const DataMatrix& data, const WeightGraph& graph,
                  const SolverConfig& config) {
    const int n = data.n();
    if (config.rank < 1 || config.rank > 2 * n - 1)
        throw std::invalid_argument("run: rank must lie in [1, 2n-1]");

    const LiftedCoefficients coeffs = build_lifted(data, graph);

    DistanceState state;
    state.D = initial_state(data);

    // One projection per iteration serves the trace values and the
    // majorant coefficient alike; the spectral subspace warm-starts the
    // next iteration's partial decomposition.
    Eigen::MatrixXd subspace;
    for (int k = 0; k < config.max_iter; ++k) {
        const Eigen::MatrixXd proj = project_cone_warm(-state.D, config.rank, subspace);
        const double g = 0.5 * (-state.D - proj).squaredNorm();
        state.objective_trace.push_back(objective_f(state.D, coeffs, config.gamma) +
                                        config.rho * g);
        state.feasibility_trace.push_back(g);

        const Eigen::MatrixXd next =
            solve_subproblem_with(coeffs.H + config.rho * proj, coeffs, config);
        const double change = (next - state.D).norm() / std::max(1.0, state.D.norm());
        state.D = next;
        state.iterations = k + 1;
        if (change <= config.tol) {
            state.converged = true;
            break;
        }
    }
    const double g_final = cone_distance_sq(state.D, config.rank);
    state.objective_trace.push_back(objective_f(state.D, coeffs, config.gamma) +
                                    config.rho * g_final);
    state.feasibility_trace.push_back(g_final);
    return state;
}

}  // namespace mpedm
