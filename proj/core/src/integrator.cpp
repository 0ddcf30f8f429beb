#include "groundctl/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "groundctl/errors.hpp"

namespace groundctl {

namespace {

// y <- exp(M) y by scaled Taylor; the matrices here are small and well scaled
// after the per-substep splitting, so a series with 1-norm scaling is enough.
void expmv_inplace(const Eigen::MatrixXd& M, Eigen::VectorXd& y) {
    const double norm1 = M.cwiseAbs().colwise().sum().maxCoeff();
    const int s = std::max(1, static_cast<int>(std::ceil(norm1)));
    const Eigen::MatrixXd Ms = M / static_cast<double>(s);
    for (int rep = 0; rep < s; ++rep) {
        Eigen::VectorXd term = y;
        Eigen::VectorXd acc = y;
        for (int j = 1; j <= 80; ++j) {
            term = Ms * term / static_cast<double>(j);
            acc += term;
            if (term.norm() <= 1e-18 * acc.norm()) break;
        }
        y = acc;
    }
}

// Base substeps: control panel edges clipped to [t0,t1]; refinement level r
// splits each into 2^r equal parts.
std::vector<double> substep_edges(const ControlSignal& p, double t0, double t1, int level) {
    std::vector<double> edges{t0, t1};
    for (double e : p.edges())
        if (e > t0 + 1e-15 * (t1 - t0) && e < t1 - 1e-15 * (t1 - t0)) edges.push_back(e);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    const int split = 1 << level;
    std::vector<double> out;
    out.reserve((edges.size() - 1) * split + 1);
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        for (int j = 0; j < split; ++j)
            out.push_back(edges[i] + (edges[i + 1] - edges[i]) * j / split);
    out.push_back(edges.back());
    return out;
}

struct SplitSystem {
    Eigen::VectorXd lambda;    // exact diagonal flow
    Eigen::MatrixXd coupling;  // flows under -(int p) per substep
    int report_offset = 0;     // reported block [offset, offset + report_size)
    int report_size = 0;
};

TrajectoryRecord run_split(const SplitSystem& sys, const Eigen::VectorXd& x0,
                           const ControlSignal& p, const EigenSystem& es, double t0, double t1,
                           const IntegratorOptions& opts) {
    if (!(t1 > t0)) throw ValidationError("integrate: empty interval");
    auto advance = [&](int level, std::vector<double>& times,
                       std::vector<Eigen::VectorXd>& states) {
        const auto edges = substep_edges(p, t0, t1, level);
        times.clear();
        states.clear();
        Eigen::VectorXd x = x0;
        times.push_back(t0);
        states.push_back(x);
        for (size_t i = 0; i + 1 < edges.size(); ++i) {
            const double a = edges[i], b = edges[i + 1];
            const double h = b - a;
            const double P = p.integral(a, b);
            x.array() *= (-0.5 * h * sys.lambda.array()).exp();
            if (P != 0.0) {
                Eigen::MatrixXd M = -P * sys.coupling;
                expmv_inplace(M, x);
            }
            x.array() *= (-0.5 * h * sys.lambda.array()).exp();
            times.push_back(b);
            states.push_back(x);
        }
    };

    std::vector<double> times_prev, times;
    std::vector<Eigen::VectorXd> states_prev, states;
    advance(0, times_prev, states_prev);
    double achieved = std::numeric_limits<double>::infinity();
    int level = 1;
    for (; level <= opts.max_refinements; ++level) {
        advance(level, times, states);
        // compare at the coarse nodes (fine node 2i matches coarse node i)
        double diff = 0.0;
        for (size_t i = 0; i < states_prev.size(); ++i) {
            const Eigen::VectorXd d =
                states[2 * i].segment(sys.report_offset, sys.report_size) -
                states_prev[i].segment(sys.report_offset, sys.report_size);
            double acc = 0.0;
            for (int k = 0; k < sys.report_size; ++k)
                acc += (1.0 + es.eigenvalues(k)) * d(k) * d(k);
            diff = std::max(diff, std::sqrt(acc));
        }
        achieved = diff;
        if (diff <= opts.tol) break;
        times_prev.swap(times);
        states_prev.swap(states);
    }
    if (achieved > opts.tol)
        throw IntegrationError("integration did not converge under the refinement cap",
                               achieved);

    TrajectoryRecord rec;
    rec.control = p;
    const auto& keep_times = times.empty() ? times_prev : times;
    const auto& keep_states = states.empty() ? states_prev : states;
    rec.times = keep_times;
    rec.states.reserve(keep_states.size());
    for (const auto& x : keep_states) {
        State u = x.segment(sys.report_offset, sys.report_size);
        rec.states.push_back(u);
        rec.norm0.push_back(graded_norm(u, Grading::l2, es));
        rec.norm_half.push_back(graded_norm(u, Grading::half, es));
    }
    return rec;
}

}  // namespace

TrajectoryRecord integrate_bilinear(const State& u0, const ControlSignal& p,
                                    const EigenSystem& es, double t0, double t1,
                                    const IntegratorOptions& opts) {
    const int K = es.size();
    if (u0.size() != K) throw ValidationError("integrate_bilinear: state length mismatch");
    SplitSystem sys;
    sys.lambda = es.eigenvalues;
    sys.coupling = es.coupling;
    sys.report_offset = 0;
    sys.report_size = K;
    return run_split(sys, u0, p, es, t0, t1, opts);
}

TrajectoryRecord integrate_v_system(const State& v0, const ControlSignal& p,
                                    const EigenSystem& es, double t0, double t1,
                                    const IntegratorOptions& opts) {
    const int K = es.size();
    if (v0.size() != K) throw ValidationError("integrate_v_system: state length mismatch");
    // Augmented (v; theta): theta carries the constant source column B phi_g.
    SplitSystem sys;
    sys.lambda = Eigen::VectorXd::Zero(K + 1);
    sys.lambda.head(K) = es.eigenvalues;
    sys.coupling = Eigen::MatrixXd::Zero(K + 1, K + 1);
    sys.coupling.topLeftCorner(K, K) = es.coupling;
    sys.coupling.block(0, K, K, 1) = es.ground_coupling();
    sys.report_offset = 0;
    sys.report_size = K;
    Eigen::VectorXd x0(K + 1);
    x0.head(K) = v0;
    x0(K) = 1.0;
    return run_split(sys, x0, p, es, t0, t1, opts);
}

TrajectoryRecord integrate_w_system(const TrajectoryRecord& v_traj, const ControlSignal& p,
                                    const EigenSystem& es, const IntegratorOptions& opts) {
    const int K = es.size();
    if (v_traj.states.empty() || v_traj.states.front().size() != K)
        throw ValidationError("integrate_w_system: v trajectory does not match the system");
    // Co-integrate (v; w; theta) so the source -p(t) B v(t) needs no
    // interpolation of the stored v trajectory.
    SplitSystem sys;
    sys.lambda = Eigen::VectorXd::Zero(2 * K + 1);
    sys.lambda.head(K) = es.eigenvalues;
    sys.lambda.segment(K, K) = es.eigenvalues;
    sys.coupling = Eigen::MatrixXd::Zero(2 * K + 1, 2 * K + 1);
    sys.coupling.topLeftCorner(K, K) = es.coupling;
    sys.coupling.block(0, 2 * K, K, 1) = es.ground_coupling();
    sys.coupling.block(K, 0, K, K) = es.coupling;
    sys.report_offset = K;
    sys.report_size = K;
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2 * K + 1);
    x0.head(K) = v_traj.initial();
    x0(2 * K) = 1.0;
    return run_split(sys, x0, p, es, v_traj.times.front(), v_traj.times.back(), opts);
}

}  // namespace groundctl
