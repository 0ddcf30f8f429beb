#include "groundctl/moment_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <quadmath.h>

#include "groundctl/errors.hpp"
#include "groundctl/rng.hpp"

namespace groundctl {

namespace {

template <typename R>
R real_exp(R x);
template <>
double real_exp(double x) { return std::exp(x); }
template <>
long double real_exp(long double x) { return expl(x); }
template <>
__float128 real_exp(__float128 x) { return expq(x); }

template <typename R>
R real_sqrt(R x);
template <>
double real_sqrt(double x) { return std::sqrt(x); }
template <>
long double real_sqrt(long double x) { return sqrtl(x); }
template <>
__float128 real_sqrt(__float128 x) { return sqrtq(x); }

template <typename R>
R real_abs(R x) { return x < R(0) ? -x : x; }

template <typename R>
constexpr double rank_tolerance();
template <>
constexpr double rank_tolerance<double>() { return 1e-13; }
template <>
constexpr double rank_tolerance<long double>() { return 1e-16; }
template <>
constexpr double rank_tolerance<__float128>() { return 1e-28; }

template <typename R>
const char* precision_name();
template <>
const char* precision_name<double>() { return "double"; }
template <>
const char* precision_name<long double>() { return "long-double"; }
template <>
const char* precision_name<__float128>() { return "quad"; }

template <typename R>
using Mat = std::vector<std::vector<R>>;

// One precision tier of the least-norm solve. The exponential family is
// normalized against the grid inner product, factored by symmetrically pivoted
// Cholesky (the rank-revealing step), and the kept system solved with one
// round of iterative refinement.
template <typename R>
bool solve_tier(const MomentProblem& prob, const ControlSignal& grid,
                const MomentSolveOptions& opts, Eigen::VectorXd& samples,
                MomentSolveStats& stats) {
    const int n = static_cast<int>(prob.active.size());
    const long Q = grid.nodes().size();
    const double T = prob.horizon;

    // E(q,i) = exp(lambda_i (t_q - T)) <= 1, well scaled by construction.
    Mat<R> E(Q, std::vector<R>(n));
    std::vector<R> w(Q);
    for (long q = 0; q < Q; ++q) {
        w[q] = R(grid.weights()(q));
        for (int i = 0; i < n; ++i)
            E[q][i] = real_exp<R>(R(prob.exponents(i)) * (R(grid.nodes()(q)) - R(T)));
    }
    // Column norms and normalized Gram.
    std::vector<R> cn(n, R(0));
    for (int i = 0; i < n; ++i) {
        R s(0);
        for (long q = 0; q < Q; ++q) s += w[q] * E[q][i] * E[q][i];
        cn[i] = real_sqrt<R>(s);
    }
    Mat<R> G(n, std::vector<R>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            R s(0);
            for (long q = 0; q < Q; ++q) s += w[q] * E[q][i] * E[q][j];
            G[i][j] = G[j][i] = s / (cn[i] * cn[j]);
        }
    // Decayed, normalized targets.
    std::vector<R> rhs(n);
    for (int i = 0; i < n; ++i)
        rhs[i] = R(prob.targets(i)) * real_exp<R>(-R(prob.exponents(i)) * R(T)) / cn[i];

    // Symmetrically pivoted Cholesky on the full Schur complement; pivots
    // below tol * pivot0 cap the usable rank. Row i of L corresponds to the
    // original constraint perm[i].
    Mat<R> L(n, std::vector<R>(n, R(0)));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Mat<R> A(G);
    int rank = n;
    R pivot0(0), pivot_last(0);
    for (int k = 0; k < n; ++k) {
        int best = k;
        for (int i = k + 1; i < n; ++i)
            if (A[perm[i]][perm[i]] > A[perm[best]][perm[best]]) best = i;
        std::swap(perm[k], perm[best]);
        if (best != k) std::swap(L[k], L[best]);
        const R d = A[perm[k]][perm[k]];
        if (k == 0) pivot0 = d;
        if (!(d > R(rank_tolerance<R>()) * pivot0)) {
            rank = k;
            break;
        }
        pivot_last = d;
        L[k][k] = real_sqrt<R>(d);
        for (int i = k + 1; i < n; ++i) L[i][k] = A[perm[i]][perm[k]] / L[k][k];
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j <= i; ++j) {
                A[perm[i]][perm[j]] -= L[i][k] * L[j][k];
                A[perm[j]][perm[i]] = A[perm[i]][perm[j]];
            }
    }
    stats.cond_estimate = static_cast<double>(pivot0 / std::max(pivot_last, R(1e-300)));

    auto solve_kept = [&](const std::vector<R>& b, std::vector<R>& x) {
        std::vector<R> y(rank);
        for (int i = 0; i < rank; ++i) {
            R s = b[perm[i]];
            for (int j = 0; j < i; ++j) s -= L[i][j] * y[j];
            y[i] = s / L[i][i];
        }
        x.assign(n, R(0));
        std::vector<R> z(rank);
        for (int i = rank - 1; i >= 0; --i) {
            R s = y[i];
            for (int j = i + 1; j < rank; ++j) s -= L[j][i] * z[j];
            z[i] = s / L[i][i];
        }
        for (int i = 0; i < rank; ++i) x[perm[i]] = z[i];
    };

    std::vector<R> c(n, R(0));
    solve_kept(rhs, c);
    // One refinement pass on the kept equations.
    {
        std::vector<R> resid(n, R(0));
        for (int i = 0; i < n; ++i) {
            R s(0);
            for (int j = 0; j < n; ++j) s += G[i][j] * c[j];
            resid[i] = rhs[i] - s;
        }
        std::vector<R> dc(n, R(0));
        solve_kept(resid, dc);
        for (int i = 0; i < n; ++i) c[i] += dc[i];
    }

    // Samples p(t_q) = sum_i (c_i / cn_i) e^{lambda_i (t_q - T)}.
    samples.resize(Q);
    for (long q = 0; q < Q; ++q) {
        R s(0);
        for (int i = 0; i < n; ++i) s += (c[i] / cn[i]) * E[q][i];
        samples(q) = static_cast<double>(s);
    }

    // Residual at y-level: y_i(T) = -b_i * (grid moment - m~_i).
    double max_resid = 0.0;
    for (int i = 0; i < n; ++i) {
        R moment(0);
        for (long q = 0; q < Q; ++q) moment += w[q] * E[q][i] * R(samples(q));
        const R mt = R(prob.targets(i)) * real_exp<R>(-R(prob.exponents(i)) * R(T));
        const double ri = std::abs(static_cast<double>(R(prob.couplings(i)) * (moment - mt)));
        max_resid = std::max(max_resid, ri);
    }
    stats.residual = prob.y0_norm > 0 ? max_resid / prob.y0_norm : max_resid;
    stats.kept = rank;
    stats.dropped.clear();
    for (int i = rank; i < n; ++i) stats.dropped.push_back(prob.active[perm[i]]);
    std::sort(stats.dropped.begin(), stats.dropped.end());
    stats.precision_used = precision_name<R>();
    return stats.residual <= opts.target_residual;
}

}  // namespace

MomentProblem assemble_moment_problem(const State& y0, const EigenSystem& es, double T) {
    if (!(T > 0.0)) throw ValidationError("assemble_moment_problem: T must be positive");
    if (y0.size() != es.eigenvalues.size())
        throw ValidationError("assemble_moment_problem: state length mismatch");
    MomentProblem prob;
    prob.horizon = T;
    prob.y0_norm = y0.norm();
    const Eigen::VectorXd b = es.ground_coupling();
    const double bscale = std::max(b.cwiseAbs().maxCoeff(), 1e-300);
    for (int k = 0; k < es.size(); ++k) {
        if (std::abs(b(k)) > 1e-13 * bscale) {
            prob.active.push_back(k);
        } else if (std::abs(y0(k)) > 1e-12 * std::max(prob.y0_norm, 1e-300)) {
            throw RankViolation(
                "moment problem infeasible: mode " + std::to_string(k + es.index_base) +
                    " has zero coupling but nonzero data",
                k + es.index_base);
        }
    }
    const int n = static_cast<int>(prob.active.size());
    prob.exponents.resize(n);
    prob.couplings.resize(n);
    prob.targets.resize(n);
    for (int i = 0; i < n; ++i) {
        const int k = prob.active[i];
        prob.exponents(i) = es.eigenvalues(k);
        prob.couplings(i) = b(k);
        prob.targets(i) = y0(k) / b(k);
    }
    return prob;
}

MomentSolution solve_min_norm(const MomentProblem& problem, const MomentSolveOptions& opts) {
    const int n = static_cast<int>(problem.active.size());
    if (n == 0) {
        MomentSolution out;
        out.control = ControlSignal::zero(0.0, problem.horizon);
        out.stats.precision_used = "none";
        return out;
    }
    const double lmax = problem.exponents.maxCoeff();
    auto edges = layered_edges(problem.horizon, lmax, opts.layer_span_cap);
    MomentSolution out;
    out.control = ControlSignal::on_grid(edges, opts.points_per_panel);
    if (static_cast<long>(4 * n) > out.control.nodes().size())
        throw ValidationError("solve_min_norm: constraint count exceeds a quarter of the grid");
    out.stats.constraints = n;

    Eigen::VectorXd samples;
    bool ok = false;
    const auto tier = opts.precision;
    if (tier == SolvePrecision::use_double || tier == SolvePrecision::automatic)
        ok = solve_tier<double>(problem, out.control, opts, samples, out.stats);
    if (!ok && (tier == SolvePrecision::use_long_double ||
                tier == SolvePrecision::automatic))
        ok = solve_tier<long double>(problem, out.control, opts, samples, out.stats);
    if (!ok && (tier == SolvePrecision::use_quad || tier == SolvePrecision::automatic))
        ok = solve_tier<__float128>(problem, out.control, opts, samples, out.stats);
    if (!ok && out.stats.dropped.empty())
        throw ConditioningError("solve_min_norm: residual target unreachable at quad precision",
                                out.stats.residual);
    out.control.values() = samples;
    out.stats.p_norm = out.control.l2_norm();
    return out;
}

LinearResidualReport verify_linear_null(const ControlSignal& p, const State& y0,
                                        const EigenSystem& es, double T) {
    LinearResidualReport rep;
    const Eigen::VectorXd b = es.ground_coupling();
    rep.terminal.resize(es.size());
    const double off = p.t0();
    for (int k = 0; k < es.size(); ++k) {
        const double lam = es.eigenvalues(k);
        double moment = 0.0;
        for (long q = 0; q < p.nodes().size(); ++q) {
            const double s = p.nodes()(q) - off;
            moment += p.weights()(q) * std::exp(-lam * (T - s)) * p.values()(q);
        }
        rep.terminal(k) = std::exp(-lam * T) * y0(k) - b(k) * moment;
        rep.max_abs = std::max(rep.max_abs, std::abs(rep.terminal(k)));
    }
    const double y0n = y0.norm();
    rep.relative = y0n > 0 ? rep.max_abs / y0n : rep.max_abs;
    return rep;
}

CostEstimate estimate_control_cost(const EigenSystem& es, std::span<const double> horizons,
                                   int trials, uint64_t seed,
                                   const MomentSolveOptions& opts) {
    if (trials < 8) throw ValidationError("estimate_control_cost: need at least 8 trials");
    CostEstimate est;
    const EigenSystem shifted = es.shifted_to_ground();
    const int K = shifted.size();
    // Unit-sphere draws shared across horizons.
    std::vector<State> draws(trials, State(K));
    for (int t = 0; t < trials; ++t) {
        for (int k = 0; k < K; ++k) draws[t](k) = normal01(seed, t, k);
        draws[t].normalize();
    }
    for (size_t h = 0; h < horizons.size(); ++h) {
        const double T = horizons[h];
        double worst = 0.0;
        bool failed = false;
        for (int t = 0; t < trials && !failed; ++t) {
            try {
                auto prob = assemble_moment_problem(draws[t], shifted, T);
                auto sol = solve_min_norm(prob, opts);
                worst = std::max(worst, sol.stats.p_norm);
            } catch (const std::runtime_error&) {
                failed = true;
            }
        }
        est.horizons.push_back(T);
        if (failed) {
            est.n_emp.push_back(std::numeric_limits<double>::quiet_NaN());
            est.failed.push_back(static_cast<int>(h));
        } else {
            est.n_emp.push_back(worst);
        }
    }
    // Least squares of log N against 1/T over the successful horizons.
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int m = 0;
    for (size_t i = 0; i < est.horizons.size(); ++i) {
        if (std::isnan(est.n_emp[i]) || est.n_emp[i] <= 0) continue;
        const double x = 1.0 / est.horizons[i];
        const double y = std::log(est.n_emp[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
        ++m;
    }
    if (m >= 2) {
        const double det = m * sxx - sx * sx;
        est.nu_hat = (m * sxy - sx * sy) / det;
        est.intercept = (sy * sxx - sx * sxy) / det;
        const double ss_tot = syy - sy * sy / m;
        double ss_res = 0.0;
        for (size_t i = 0; i < est.horizons.size(); ++i) {
            if (std::isnan(est.n_emp[i]) || est.n_emp[i] <= 0) continue;
            const double pred = est.nu_hat / est.horizons[i] + est.intercept;
            const double e = std::log(est.n_emp[i]) - pred;
            ss_res += e * e;
        }
        est.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    }
    return est;
}

}  // namespace groundctl
