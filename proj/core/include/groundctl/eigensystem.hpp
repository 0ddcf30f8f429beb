#pragma once

#include <Eigen/Dense>
#include <functional>

namespace groundctl {

/// State of the Galerkin system: coefficients <u, phi_k> in the eigenbasis.
using State = Eigen::VectorXd;

/// Grading exponent s of the D(A^s) norm; only {0, 1/2, 1} are meaningful here.
enum class Grading { l2, half, one };

// Truncated eigen-representation of the pair (A, B): the entire abstract
// problem at truncation K. Immutable after construction.
struct EigenSystem {
    // Nondecreasing, nonnegative. Storage is 0-based; paper indexing starts at
    // index_base (0 for Neumann-type problems, 1 for Dirichlet-type).
    Eigen::VectorXd eigenvalues;
    int ground_index = 0;
    int index_base = 0;

    // coupling(k, m) = <B phi_m, phi_k>: column m holds the coefficients of
    // B phi_m, so coefficients of B u are coupling * u.
    Eigen::MatrixXd coupling;

    // phi_k(x) on [0,1]; needed only by the Monte-Carlo density comparison.
    std::function<double(int, double)> eigenfunction;

    // Measured over the truncation: gap alpha with sqrt(l_{k+1})-sqrt(l_k) >= alpha,
    // and (q, b) with |l_k - l_g|^q |<B phi_g, phi_k>| >= b for k != g.
    double gap_constant = 0.0;
    double rank_q = 0.0;
    double rank_b = 0.0;

    int size() const { return static_cast<int>(eigenvalues.size()); }
    double ground_eigenvalue() const { return eigenvalues(ground_index); }

    /// Coefficients of B phi_ground (the coupling column the rank condition is about).
    Eigen::VectorXd ground_coupling() const { return coupling.col(ground_index); }

    /// Copy with the spectrum shifted so the ground eigenvalue is zero
    /// (the operator A - lambda_ground I; eigenfunctions and B unchanged).
    EigenSystem shifted_to_ground() const;
};

/// (sum_k (1 + lambda_k^{2s}) |u_k|^2)^{1/2}; throws on length mismatch.
double graded_norm(const State& u, Grading s, const EigenSystem& es);

/// <u, v>_{1/2} = sum_k (1 + lambda_k) u_k v_k.
double half_inner(const State& u, const State& v, const EigenSystem& es);

// Largest Rayleigh quotient ||B u|| / ||u||_{D(A^{1/2})} over the truncated
// space: a lower bound of the true embedding constant C_B, nondecreasing in K.
double estimate_CB(const EigenSystem& es);

}  // namespace groundctl
