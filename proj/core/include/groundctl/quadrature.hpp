#pragma once

#include <functional>
#include <vector>

namespace groundctl {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

struct QuadratureOptions {
    double abs_tol = 1e-12;
    int max_intervals = 4000;
    // Initial partition of [a,b]; empty means {a,b}. Used to grade the mesh
    // toward endpoint singularities before adaptivity takes over.
    std::vector<double> seed_points;
};

/// Adaptive Gauss-Kronrod (G7,K15) on [a,b].
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts = {});

/// Geometric partition of [a,b] refined toward a: a, a+(b-a)*2^-levels, ..., b.
std::vector<double> graded_seed(double a, double b, int levels);

}  // namespace groundctl
