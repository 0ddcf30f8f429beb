#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "groundctl/control_signal.hpp"
#include "groundctl/eigensystem.hpp"

namespace groundctl {

// Null control of y' + A y + p(t) B phi_ground = 0 via the moment problem:
// by variation of constants, y_k(T) = 0 iff
//     int_0^T e^{lambda_k s} p(s) ds = y_k(0) / b_k =: m_k
// for every active mode k (b_k = <B phi_ground, phi_k> != 0). The minimum-norm
// p lies in span{e^{lambda_k s}}; we orthogonalize that family against the
// grid inner product and solve the (normalized) Gram system.

struct MomentProblem {
    double horizon = 0.0;
    std::vector<int> active;      // storage indices with b_k != 0
    Eigen::VectorXd exponents;    // lambda_k over active
    Eigen::VectorXd couplings;    // b_k over active
    Eigen::VectorXd targets;      // m_k = y0_k / b_k over active
    double y0_norm = 0.0;
};

/// Flags modes with b_k = 0 but y0_k != 0 as infeasible (RankViolation).
MomentProblem assemble_moment_problem(const State& y0, const EigenSystem& es, double T);

enum class SolvePrecision { automatic, use_double, use_long_double, use_quad };

struct MomentSolveOptions {
    SolvePrecision precision = SolvePrecision::automatic;
    double target_residual = 1e-8;  // relative to ||y0||
    int points_per_panel = 8;
    double layer_span_cap = 0.5;    // lambda_max * finest panel width
};

struct MomentSolveStats {
    double residual = 0.0;          // max_k |y_k(T)| / ||y0|| at grid level
    double cond_estimate = 0.0;     // pivot ratio of the normalized Gram factor
    int constraints = 0;
    int kept = 0;
    std::vector<int> dropped;       // storage indices capped by the rank reveal
    std::string precision_used;
    double p_norm = 0.0;
};

struct MomentSolution {
    ControlSignal control;
    MomentSolveStats stats;
};

// Least-L2-norm control meeting every moment constraint. Escalates precision
// (double -> long double -> quad) in automatic mode until the grid residual
// meets target_residual; throws ConditioningError with the achieved residual
// if even the top tier cannot.
MomentSolution solve_min_norm(const MomentProblem& problem,
                              const MomentSolveOptions& opts = {});

struct LinearResidualReport {
    Eigen::VectorXd terminal;  // y_k(T) per mode
    double max_abs = 0.0;
    double relative = 0.0;     // max_abs / ||y0||
};

/// Integrates each scalar mode y_k' = -lambda_k y_k - b_k p(t) by exponential
/// quadrature on the control grid and reports the terminal residual.
LinearResidualReport verify_linear_null(const ControlSignal& p, const State& y0,
                                        const EigenSystem& es, double T);

struct CostEstimate {
    std::vector<double> horizons;
    std::vector<double> n_emp;      // max ||p|| over shared unit draws, per horizon
    std::vector<int> failed;        // horizons the solver could not certify
    double nu_hat = 0.0;            // slope of log N_emp against 1/T
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Empirical control cost of the ground-shifted pair (the frame the cost law
// e^{nu/T} is stated in): same unit-sphere draws reused across horizons so the
// per-draw monotonicity in T carries over to the maximum. trials >= 8.
CostEstimate estimate_control_cost(const EigenSystem& es, std::span<const double> horizons,
                                   int trials, uint64_t seed,
                                   const MomentSolveOptions& opts = {});

}  // namespace groundctl
