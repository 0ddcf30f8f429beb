#include "groundctl/control_signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "groundctl/errors.hpp"

namespace groundctl {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    // Newton on Legendre polynomials from the Chebyshev-like initial guess.
    for (int i = 0; i < n; ++i) {
        double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = xi;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * xi * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            const double dx = p1 / pp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x[n - 1 - i] = xi;
        w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
    }
}

ControlSignal ControlSignal::on_grid(std::vector<double> edges, int points_per_panel) {
    if (edges.size() < 2) throw ValidationError("ControlSignal: need at least one panel");
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        if (!(edges[i] < edges[i + 1]))
            throw ValidationError("ControlSignal: edges must be strictly increasing");
    ControlSignal s;
    s.edges_ = std::move(edges);
    s.points_per_panel_ = points_per_panel;
    std::vector<double> gx, gw;
    gauss_legendre(points_per_panel, gx, gw);
    const int P = s.panel_count();
    s.nodes_.resize(P * points_per_panel);
    s.weights_.resize(P * points_per_panel);
    s.values_ = Eigen::VectorXd::Zero(P * points_per_panel);
    for (int p = 0; p < P; ++p) {
        const double a = s.edges_[p], b = s.edges_[p + 1];
        for (int j = 0; j < points_per_panel; ++j) {
            s.nodes_(p * points_per_panel + j) = 0.5 * (b - a) * gx[j] + 0.5 * (a + b);
            s.weights_(p * points_per_panel + j) = 0.5 * (b - a) * gw[j];
        }
    }
    return s;
}

ControlSignal ControlSignal::zero(double t0, double t1) {
    return on_grid({t0, t1}, 8);
}

double ControlSignal::l2_norm() const {
    return std::sqrt(weights_.dot(values_.cwiseProduct(values_)));
}

int ControlSignal::panel_of(double t) const {
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), t);
    int p = static_cast<int>(it - edges_.begin()) - 1;
    return std::clamp(p, 0, panel_count() - 1);
}

double ControlSignal::panel_value(int panel, double t) const {
    // Barycentric interpolation through the panel's Gauss nodes.
    const int n = points_per_panel_;
    const int off = panel * n;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n; ++j) {
        const double d = t - nodes_(off + j);
        if (d == 0.0) return values_(off + j);
        // Barycentric weights of Gauss nodes are proportional to
        // (-1)^j sqrt((1-x_j^2) w_j); the panel scale cancels in the ratio.
        const double xj = nodes_(off + j);
        const double a = edges_[panel], b = edges_[panel + 1];
        const double xref = (2.0 * xj - a - b) / (b - a);
        const double bw = ((j % 2) ? -1.0 : 1.0) *
                          std::sqrt(std::max(1e-300, (1.0 - xref * xref)) * weights_(off + j));
        num += bw / d * values_(off + j);
        den += bw / d;
    }
    return num / den;
}

double ControlSignal::value_at(double t) const {
    if (t < t0() || t > t1()) return 0.0;
    return panel_value(panel_of(t), t);
}

double ControlSignal::integral(double a, double b) const {
    if (b < a) return -integral(b, a);
    a = std::max(a, t0());
    b = std::min(b, t1());
    if (b <= a) return 0.0;
    static thread_local std::vector<double> gx, gw;
    if (gx.empty()) gauss_legendre(8, gx, gw);
    double total = 0.0;
    for (int p = panel_of(a); p < panel_count(); ++p) {
        const double lo = std::max(a, edges_[p]);
        const double hi = std::min(b, edges_[p + 1]);
        if (hi <= lo) break;
        // Gauss-8 of the degree<=(points_per_panel-1) interpolant is exact for
        // points_per_panel <= 8; sub-interval pieces stay exact as well.
        for (size_t j = 0; j < gx.size(); ++j) {
            const double t = 0.5 * (hi - lo) * gx[j] + 0.5 * (lo + hi);
            total += 0.5 * (hi - lo) * gw[j] * panel_value(p, t);
        }
        if (hi >= b) break;
    }
    return total;
}

ControlSignal ControlSignal::translated(double tau) const {
    ControlSignal s = *this;
    for (double& e : s.edges_) e += tau;
    s.nodes_.array() += tau;
    return s;
}

ControlSignal ControlSignal::concatenate(const std::vector<ControlSignal>& parts) {
    if (parts.empty()) throw ValidationError("concatenate: no parts");
    std::vector<ControlSignal> sorted(parts);
    std::sort(sorted.begin(), sorted.end(),
              [](const ControlSignal& a, const ControlSignal& b) { return a.t0() < b.t0(); });
    // Zero-valued bridge panels fill any gaps so panel/node alignment holds.
    std::vector<ControlSignal> pieces;
    for (auto& p : sorted) {
        if (!pieces.empty()) {
            const double prev_end = pieces.back().t1();
            if (p.t0() < prev_end - 1e-12)
                throw ValidationError("concatenate: overlapping supports");
            if (p.t0() > prev_end + 1e-12)
                pieces.push_back(on_grid({prev_end, p.t0()}, p.points_per_panel_));
        }
        pieces.push_back(std::move(p));
    }
    ControlSignal out;
    out.points_per_panel_ = pieces.front().points_per_panel_;
    long total = 0;
    for (const auto& p : pieces) {
        if (p.points_per_panel_ != out.points_per_panel_)
            throw ValidationError("concatenate: mixed points-per-panel");
        total += p.nodes_.size();
    }
    out.nodes_.resize(total);
    out.weights_.resize(total);
    out.values_.resize(total);
    long at = 0;
    for (const auto& p : pieces) {
        if (out.edges_.empty()) {
            out.edges_ = p.edges_;
        } else {
            out.edges_.back() = p.edges_.front();  // weld abutting boundaries
            out.edges_.insert(out.edges_.end(), p.edges_.begin() + 1, p.edges_.end());
        }
        out.nodes_.segment(at, p.nodes_.size()) = p.nodes_;
        out.weights_.segment(at, p.weights_.size()) = p.weights_;
        out.values_.segment(at, p.values_.size()) = p.values_;
        at += p.nodes_.size();
    }
    return out;
}

std::vector<double> layered_edges(double T, double lambda_max, double span_cap,
                                  int body_panels) {
    std::vector<double> edges;
    for (int i = 0; i <= body_panels; ++i)
        edges.push_back(T * 0.5 * i / body_panels);  // uniform body on [0, T/2]
    // geometric halving toward T until lambda_max * h <= span_cap
    double h = 0.25 * T;
    double at = 0.75 * T;
    edges.push_back(at);
    while (lambda_max * h > span_cap && h > 1e-14 * T) {
        h *= 0.5;
        at += h;
        edges.push_back(at);
    }
    edges.push_back(T);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [T](double a, double b) { return std::abs(a - b) < 1e-15 * T; }),
                edges.end());
    return edges;
}

}  // namespace groundctl
