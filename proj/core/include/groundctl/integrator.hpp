#pragma once

#include "groundctl/control_signal.hpp"
#include "groundctl/eigensystem.hpp"

namespace groundctl {

struct IntegratorOptions {
    // Successive-refinement difference in the s = 1/2 norm that stops the
    // substep halving (the topology the contraction argument lives in).
    double tol = 1e-10;
    int max_refinements = 9;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<double> norm0;
    std::vector<double> norm_half;
    ControlSignal control;

    const State& initial() const { return states.front(); }
    const State& final_state() const { return states.back(); }
};

// u' + A u + p(t) B u = 0 on [t0,t1]. Exponential Strang splitting: the
// diagonal semigroup is applied exactly, the coupling through exp(-(int p) C)
// per substep; substeps align with the control panels and halve until the
// terminal difference meets tol.
TrajectoryRecord integrate_bilinear(const State& u0, const ControlSignal& p,
                                    const EigenSystem& es, double t0, double t1,
                                    const IntegratorOptions& opts = {});

/// v' + A v + p(t) B v + p(t) B phi_ground = 0 (the constant source column).
TrajectoryRecord integrate_v_system(const State& v0, const ControlSignal& p,
                                    const EigenSystem& es, double t0, double t1,
                                    const IntegratorOptions& opts = {});

/// w' + A w + p(t) B v(t) = 0, w(t0) = 0, with v the trajectory of the
/// v-system started from v_traj's initial state (co-integrated).
TrajectoryRecord integrate_w_system(const TrajectoryRecord& v_traj, const ControlSignal& p,
                                    const EigenSystem& es, const IntegratorOptions& opts = {});

}  // namespace groundctl
