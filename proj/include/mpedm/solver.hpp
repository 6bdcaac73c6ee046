#ifndef MPEDM_SOLVER_HPP
#define MPEDM_SOLVER_HPP

#include <vector>

#include <Eigen/Dense>

#include "mpedm/data.hpp"
#include "mpedm/weights.hpp"

namespace mpedm {

struct SolverConfig {
    double gamma = 1.0;
    double rho = 100.0;
    int rank = 2;
    double tol = 1e-5;     // relative Frobenius change between iterates
    int max_iter = 1000;
    int knn_k = 10;        // forwarded to the weight graph
    double phi = 2.0;      // forwarded to the weight graph
};

/// The solver iterate: a symmetric 2n x 2n distance matrix pinned to the
/// data distances on its top-left block, with per-iteration traces of the
/// penalized objective and the cone infeasibility.
struct DistanceState {
    Eigen::MatrixXd D;  // order 2n
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;    // F_rho, length iterations + 1
    std::vector<double> feasibility_trace;  // g(D), length iterations + 1

    /// Bottom-right n x n block, the pairwise squared distances of the
    /// cluster representatives.
    Eigen::MatrixXd representative_block() const;
};

/// <H, D> + gamma * <W, sqrt(D)> with the entrywise square root.
double objective_f(const Eigen::MatrixXd& D, const LiftedCoefficients& coeffs,
                   double gamma);

/// F_rho(D) = objective_f + rho * cone_distance_sq(D, rank).
double penalized_objective(const Eigen::MatrixXd& D, const LiftedCoefficients& coeffs,
                           double gamma, double rho, int rank);

/// Dhat = H + rho * project_cone(-Dk, rank), the linear coefficient of the
/// majorized subproblem.
Eigen::MatrixXd majorant_coefficient(const Eigen::MatrixXd& Dk,
                                     const LiftedCoefficients& coeffs, double rho,
                                     int rank);

/// Value of the majorant of the cone infeasibility g at anchor A, evaluated
/// at D. Matches g at D == A and upper-bounds it elsewhere.
double majorant_value(const Eigen::MatrixXd& D, const Eigen::MatrixXd& anchor,
                      int rank);

/// Global minimizer over [0, inf) of 0.5*(alpha - a)^2 + b*sqrt(alpha),
/// b >= 0. Zero when a <= 0 or b >= (4/(3*sqrt(3))) * a^(3/2); otherwise the
/// square of the largest real root of 2t^3 - 2at + b (trigonometric Cardano
/// form), compared against the boundary value at zero.
double scalar_min(double a, double b);

/// One majorization step: fixed block and diagonal written verbatim, every
/// other entry solved in closed form and mirrored.
Eigen::MatrixXd solve_subproblem(const Eigen::MatrixXd& Dk,
                                 const LiftedCoefficients& coeffs,
                                 const SolverConfig& config);

/// As solve_subproblem, with the linear coefficient already computed.
Eigen::MatrixXd solve_subproblem_with(const Eigen::MatrixXd& Dhat,
                                      const LiftedCoefficients& coeffs,
                                      const SolverConfig& config);

/// Initial iterate: the exact EDM of [a_1..a_n, a_1..a_n].
Eigen::MatrixXd initial_state(const DataMatrix& data);

/// Full majorization penalty run. Weights are built internally from
/// config.knn_k and config.phi. An unconverged run is returned with
/// converged == false, not raised.
DistanceState run(const DataMatrix& data, const SolverConfig& config);

/// As run(), but with a pre-built weight graph.
DistanceState run(const DataMatrix& data, const WeightGraph& graph,
                  const SolverConfig& config);

}  // namespace mpedm

#endif
