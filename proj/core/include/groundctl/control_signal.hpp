#pragma once

#include <Eigen/Dense>
#include <vector>

namespace groundctl {

// A scalar control on [t0,t1], stored as samples on a composite Gauss grid
// whose panels grade geometrically toward t1 (where minimum-norm controls
// develop boundary layers). Consumers read it through the stored quadrature
// (l2_norm, integral) or through the per-panel interpolant (value_at); both
// need only the stored samples, not the solver's representation.
class ControlSignal {
public:
    ControlSignal() = default;

    /// edges: P+1 strictly increasing panel boundaries spanning [t0,t1];
    /// per panel `points_per_panel` Gauss-Legendre nodes.
    static ControlSignal on_grid(std::vector<double> edges, int points_per_panel = 8);

    /// The zero signal on [t0,t1] (single panel).
    static ControlSignal zero(double t0, double t1);

    double t0() const { return edges_.front(); }
    double t1() const { return edges_.back(); }
    double duration() const { return t1() - t0(); }
    int panel_count() const { return static_cast<int>(edges_.size()) - 1; }
    int points_per_panel() const { return points_per_panel_; }

    const std::vector<double>& edges() const { return edges_; }
    const Eigen::VectorXd& nodes() const { return nodes_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    Eigen::VectorXd& values() { return values_; }
    const Eigen::VectorXd& values() const { return values_; }

    /// sqrt(sum_q w_q p_q^2): the stored L2(t0,t1) norm.
    double l2_norm() const;

    /// Panel-polynomial interpolant through the stored samples; 0 outside [t0,t1].
    double value_at(double t) const;

    /// Exact integral of the interpolant over [a,b] (clipped to the support).
    double integral(double a, double b) const;

    /// Same signal supported on [t0+tau, t1+tau].
    ControlSignal translated(double tau) const;

    /// Signals with abutting or disjoint supports merged in time order; the
    /// squared norms add exactly.
    static ControlSignal concatenate(const std::vector<ControlSignal>& parts);

private:
    std::vector<double> edges_;
    int points_per_panel_ = 0;
    Eigen::VectorXd nodes_, weights_, values_;

    int panel_of(double t) const;
    double panel_value(int panel, double t) const;
};

/// Gauss-Legendre nodes and weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Panel edges for [0,T]: a uniform body plus geometric refinement toward T
// until lambda_max * h <= span_cap. The default cap keeps the degree-7 panel
// interpolant of e^{lambda (s-T)} accurate to ~1e-12.
std::vector<double> layered_edges(double T, double lambda_max, double span_cap = 0.5,
                                  int body_panels = 6);

}  // namespace groundctl
