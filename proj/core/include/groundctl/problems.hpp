#pragma once

#include <optional>
#include <string>

#include "groundctl/eigensystem.hpp"

namespace groundctl {

enum class ProblemKind {
    fp_neumann,           // Fokker-Planck, partially reflecting walls
    fp_dirichlet,         // Fokker-Planck, absorbing walls
    heat_neumann_drift,   // diffusion with B = mu (u' + u), Neumann walls
    degenerate_dirichlet, // -(x^a u')' with B = x u'
    degenerate_neumann,   // -(x^a u')' with B = x^{2-a} (u' + u)
};

enum class DriftForm { power, sine, fixed };

struct DriftSpec {
    DriftForm form = DriftForm::fixed;
    double param = 0.0;  // exponent n for x^n, frequency a for sin(a x)
};

struct ProblemSpec {
    ProblemKind kind = ProblemKind::fp_neumann;
    DriftSpec drift;
    double alpha = 0.0;  // degeneracy, degenerate kinds only
    int truncation = 32;

    /// Throws ValidationError on out-of-range alpha, bad drift, bad truncation.
    void validate() const;

    double mu(double x) const;
    double mu_prime(double x) const;
};

const char* to_string(ProblemKind kind);
std::optional<ProblemKind> problem_kind_from_string(const std::string& name);

/// Builds the truncated eigensystem: spectrum, coupling matrix (closed forms
/// where the catalog has them, adaptive quadrature otherwise), measured gap and
/// rank parameters. Throws HypothesisViolation if the ground coupling column
/// has a zero entry.
EigenSystem build_problem(const ProblemSpec& spec);

// <B phi_ground, phi_k> where the catalog has an exact expression; k is the
// paper's index (from 0 for Neumann-type problems, from 1 for Dirichlet-type).
// Throws ValidationError for (spec, k) pairs without one.
double b_coeff_closed_form(const ProblemSpec& spec, int k);
bool has_closed_form(const ProblemSpec& spec, int k);

/// <B phi_m, phi_k> by adaptive quadrature (abs tol 1e-12, degenerate kinds
/// 1e-8 on a mesh graded toward x = 0). Paper indices. Throws IntegrationError
/// if refinement does not converge.
double b_coeff_quadrature(const ProblemSpec& spec, int m, int k);

struct HypothesisReport {
    double measured_gap = 0.0;
    double required_gap = 0.0;
    bool gap_ok = false;
    double rank_q = 0.0;
    double measured_rank_b = 0.0;       // min |l_k - l_g|^q |b_k| over k != g
    double min_ground_coupling = 0.0;   // smallest |<B phi_g, phi_k>| seen
    int zero_mode = -1;                 // paper index of a vanishing entry, -1 if none
    bool rank_ok = false;
    bool pass() const { return gap_ok && rank_ok; }
};

/// Checks the gap and rank hypotheses over the truncation; never throws, the
/// report carries failures.
HypothesisReport verify_hypotheses(const EigenSystem& es, const ProblemSpec& spec);

}  // namespace groundctl
