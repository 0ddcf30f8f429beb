#pragma once

namespace groundctl {

// The a-priori constants of the contraction argument, pinned to their display
// formulas. C_B is the embedding constant ||B u|| <= C_B ||u||_{1/2} (>= 1 by
// convention), nu/T0 parameterize the cost law N(tau) <= e^{nu/tau} on (0,T0],
// lambda1 is the ground eigenvalue of the operating frame.
struct BoundConstants {
    double C_B = 1.0;
    double nu = 0.0;
    double T0 = 1.0;
    double lambda1 = 0.0;
    double T = 0.0;

    // Derived once in compute_bound_constants.
    double Tf = 0.0;       // min{T, pi^2/6, (pi^2/6) T0}
    double T1 = 0.0;       // (6/pi^2) Tf
    double D = 0.0;
    double Gamma0 = 0.0;   // 2 nu + max{log D, 0}
    double R_T = 0.0;      // e^{-6 Gamma0 / T1}

    double N_bound(double tau) const;              // e^{nu/tau}
    double C2(double tau, double p_norm) const;    // 2 C_B sqrt(tau) ||p|| + C_B^2 ||p||^2 + tau
    double C3(double tau, double p_norm) const;    // (3/2) C_B^2 ||p||^2 + C2
    double C4(double tau) const;                   // C_B((5/2) C_B + 2 sqrt(tau)) + 2 tau
    double C5(double tau) const;                   // 1 + (5/2) C_B^2 (1+sqrt(l1))^2 N^2 + ...
    double C11(double tau, double NT, double v0_half) const;
    double K(double tau) const;                    // K^2 = 2 e^{C4} C_B^2 N^2 C5

    /// Stage ceiling of the iteration: exp((sum_{j<=n} 2^{n-j} j^2 - 2^n 6) Gamma0 / T1).
    double stage_ceiling(int n) const;
};

/// Evaluates every derived field; throws ValidationError on nonpositive inputs
/// or C_B < 1.
BoundConstants compute_bound_constants(double C_B, double nu, double lambda1, double T,
                                       double T0);

}  // namespace groundctl
