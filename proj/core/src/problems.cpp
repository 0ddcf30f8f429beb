#include "groundctl/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <vector>

#include "groundctl/bessel.hpp"
#include "groundctl/errors.hpp"
#include "groundctl/quadrature.hpp"

namespace groundctl {

namespace {

constexpr double pi = std::numbers::pi;

bool is_degenerate(ProblemKind kind) {
    return kind == ProblemKind::degenerate_dirichlet || kind == ProblemKind::degenerate_neumann;
}

bool neumann_indexed(ProblemKind kind) {
    return kind == ProblemKind::fp_neumann || kind == ProblemKind::heat_neumann_drift ||
           kind == ProblemKind::degenerate_neumann;
}

int sign_pm(int k) { return (k % 2 == 0) ? 1 : -1; }

// Shared description of one catalog problem: spectrum, basis, drift.
struct Basis {
    std::vector<double> lambda;       // storage order
    int index_base = 0;               // paper index of storage slot 0
    double k_alpha = 1.0;             // (2 - alpha)/2, degenerate kinds
    double beta = 0.0;                // radial power (1 - alpha)/2
    double bessel_order = 0.0;        // order of J in the eigenfunctions
    std::vector<double> zeros;        // Bessel frequencies, degenerate kinds
    std::vector<double> normalizer;   // per-mode amplitude
    ProblemKind kind;

    double phi(int i, double x) const;
    double dphi(int i, double x) const;
};

double Basis::phi(int i, double x) const {
    switch (kind) {
        case ProblemKind::fp_neumann:
        case ProblemKind::heat_neumann_drift:
            return i == 0 ? 1.0 : std::numbers::sqrt2 * std::cos(i * pi * x);
        case ProblemKind::fp_dirichlet:
            return std::numbers::sqrt2 * std::sin((i + 1) * pi * x);
        case ProblemKind::degenerate_dirichlet: {
            const double z = zeros[i];
            const double w = z * std::pow(x, k_alpha);
            return normalizer[i] * std::pow(x, beta) * bessel_j(bessel_order, w);
        }
        case ProblemKind::degenerate_neumann: {
            if (i == 0) return 1.0;
            // x^beta J_ord(z x^ka) with beta = -ord*ka; finite limit at 0.
            const double xs = std::max(x, 1e-250);
            const double z = zeros[i - 1];
            const double w = z * std::pow(xs, k_alpha);
            return normalizer[i - 1] * std::pow(xs, beta) * bessel_j(bessel_order, w);
        }
    }
    return 0.0;
}

double Basis::dphi(int i, double x) const {
    switch (kind) {
        case ProblemKind::fp_neumann:
        case ProblemKind::heat_neumann_drift:
            return i == 0 ? 0.0 : -std::numbers::sqrt2 * i * pi * std::sin(i * pi * x);
        case ProblemKind::fp_dirichlet:
            return std::numbers::sqrt2 * (i + 1) * pi * std::cos((i + 1) * pi * x);
        case ProblemKind::degenerate_dirichlet:
        case ProblemKind::degenerate_neumann: {
            int m = i;
            double amp;
            if (kind == ProblemKind::degenerate_neumann) {
                if (i == 0) return 0.0;
                m = i - 1;
                amp = normalizer[m];
            } else {
                amp = normalizer[m];
            }
            const double z = zeros[m];
            const double w = z * std::pow(x, k_alpha);
            const double jv = bessel_j(bessel_order, w);
            const double djv = bessel_j_prime(bessel_order, w);
            return amp * (beta * std::pow(x, beta - 1.0) * jv +
                          z * k_alpha * std::pow(x, beta + k_alpha - 1.0) * djv);
        }
    }
    return 0.0;
}

Basis make_basis(const ProblemSpec& spec) {
    Basis b;
    b.kind = spec.kind;
    const int K = spec.truncation;
    b.lambda.resize(K);
    switch (spec.kind) {
        case ProblemKind::fp_neumann:
        case ProblemKind::heat_neumann_drift:
            b.index_base = 0;
            for (int i = 0; i < K; ++i) b.lambda[i] = (i * pi) * (i * pi);
            break;
        case ProblemKind::fp_dirichlet:
            b.index_base = 1;
            for (int i = 0; i < K; ++i) b.lambda[i] = ((i + 1) * pi) * ((i + 1) * pi);
            break;
        case ProblemKind::degenerate_dirichlet: {
            b.index_base = 1;
            const double a = spec.alpha;
            b.k_alpha = 0.5 * (2.0 - a);
            b.beta = 0.5 * (1.0 - a);
            b.bessel_order = std::abs(1.0 - a) / (2.0 - a);
            b.zeros = bessel_zeros(b.bessel_order, K).zeros;
            b.normalizer.resize(K);
            for (int i = 0; i < K; ++i) {
                b.lambda[i] = b.k_alpha * b.k_alpha * b.zeros[i] * b.zeros[i];
                b.normalizer[i] = std::sqrt(2.0 * b.k_alpha) /
                                  std::abs(bessel_j_prime(b.bessel_order, b.zeros[i]));
            }
            break;
        }
        case ProblemKind::degenerate_neumann: {
            b.index_base = 0;
            const double a = spec.alpha;
            b.k_alpha = 0.5 * (2.0 - a);
            b.beta = 0.5 * (1.0 - a);
            const double nu_a = std::abs(1.0 - a) / (2.0 - a);
            // Weak case: eigenfunctions carry J_{-nu_a}, frequencies are the
            // zeros of J_{1-nu_a}; strong case: J_{nu_a} with zeros of J_{nu_a+1}.
            const double zero_order = (a < 1.0) ? 1.0 - nu_a : nu_a + 1.0;
            b.bessel_order = (a < 1.0) ? -nu_a : nu_a;
            b.lambda[0] = 0.0;
            if (K > 1) {
                b.zeros = bessel_zeros(zero_order, K - 1).zeros;
                b.normalizer.resize(K - 1);
                for (int m = 1; m < K; ++m)
                    b.lambda[m] = b.k_alpha * b.k_alpha * b.zeros[m - 1] * b.zeros[m - 1];
                // Unit L2 norm enforced by quadrature; sign kept positive.
                for (int m = 0; m < K - 1; ++m) {
                    b.normalizer[m] = 1.0;
                    Basis probe = b;  // normalizer[m] = 1 within the probe
                    QuadratureOptions q;
                    q.abs_tol = 1e-13;
                    q.seed_points = graded_seed(0.0, 1.0, 40);
                    auto r = integrate_adaptive(
                        [&](double x) {
                            const double v = probe.phi(m + 1, x);
                            return v * v;
                        },
                        0.0, 1.0, q);
                    if (!r.converged)
                        throw IntegrationError("eigenfunction normalizer quadrature failed",
                                               r.error_estimate);
                    b.normalizer[m] = 1.0 / std::sqrt(r.value);
                }
            }
            break;
        }
    }
    return b;
}

// Integrand of <B phi_m, phi_k> at x, storage indices.
double b_integrand(const ProblemSpec& spec, const Basis& basis, int im, int ik, double x) {
    const double pm = basis.phi(im, x);
    const double dpm = basis.dphi(im, x);
    const double pk = basis.phi(ik, x);
    switch (spec.kind) {
        case ProblemKind::fp_neumann:
        case ProblemKind::fp_dirichlet:
            // B phi = (mu phi)' = mu' phi + mu phi'
            return (spec.mu_prime(x) * pm + spec.mu(x) * dpm) * pk;
        case ProblemKind::heat_neumann_drift:
        case ProblemKind::degenerate_neumann:
            return spec.mu(x) * (dpm + pm) * pk;
        case ProblemKind::degenerate_dirichlet:
            return spec.mu(x) * dpm * pk;
    }
    return 0.0;
}

double quad_coeff(const ProblemSpec& spec, const Basis& basis, int im, int ik) {
    QuadratureOptions opts;
    if (is_degenerate(spec.kind)) {
        opts.abs_tol = 1e-8;
        opts.seed_points = graded_seed(0.0, 1.0, 40);
        // extra interior resolution for the oscillatory part
        const int waves = std::max(im, ik) + 2;
        for (int i = 1; i < waves; ++i)
            opts.seed_points.push_back(static_cast<double>(i) / waves);
        std::sort(opts.seed_points.begin(), opts.seed_points.end());
        opts.seed_points.erase(
            std::unique(opts.seed_points.begin(), opts.seed_points.end()),
            opts.seed_points.end());
    } else {
        opts.abs_tol = 1e-12;
        const int panels = im + ik + 4;
        opts.seed_points.resize(panels + 1);
        for (int i = 0; i <= panels; ++i)
            opts.seed_points[i] = static_cast<double>(i) / panels;
    }
    auto r = integrate_adaptive([&](double x) { return b_integrand(spec, basis, im, ik, x); },
                                0.0, 1.0, opts);
    if (!r.converged)
        throw IntegrationError("coupling coefficient quadrature did not converge",
                               r.error_estimate);
    return r.value;
}

double rank_exponent(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::fp_dirichlet:
        case ProblemKind::degenerate_dirichlet:
            return 0.5;
        case ProblemKind::fp_neumann:
        case ProblemKind::heat_neumann_drift:
        case ProblemKind::degenerate_neumann:
            return 1.0;
    }
    return 1.0;
}

}  // namespace

void ProblemSpec::validate() const {
    if (truncation < 1) throw ValidationError("truncation must be at least 1");
    switch (kind) {
        case ProblemKind::degenerate_dirichlet:
            if (!(alpha >= 0.0 && alpha < 2.0))
                throw ValidationError("degenerate_dirichlet requires alpha in [0,2)");
            if (drift.form != DriftForm::fixed)
                throw ValidationError("degenerate_dirichlet drift is fixed to mu(x) = x");
            break;
        case ProblemKind::degenerate_neumann:
            if (!(alpha >= 0.0 && alpha <= 4.0 / 3.0))
                throw ValidationError(
                    "degenerate_neumann requires alpha in [0,4/3]: the drift x^{2-alpha} is "
                    "only dominated by A^{1/2} in that range");
            if (drift.form != DriftForm::fixed)
                throw ValidationError("degenerate_neumann drift is fixed to mu(x) = x^{2-alpha}");
            break;
        default:
            if (drift.form == DriftForm::fixed)
                throw ValidationError("this problem kind needs an explicit drift (power or sine)");
            if (drift.form == DriftForm::power && !(drift.param >= 1.0))
                throw ValidationError("power drift needs exponent >= 1");
            if (drift.form == DriftForm::sine && !(drift.param > 0.0))
                throw ValidationError("sine drift needs positive frequency");
            break;
    }
}

double ProblemSpec::mu(double x) const {
    switch (kind) {
        case ProblemKind::degenerate_dirichlet:
            return x;
        case ProblemKind::degenerate_neumann:
            return std::pow(x, 2.0 - alpha);
        default:
            return drift.form == DriftForm::power ? std::pow(x, drift.param)
                                                  : std::sin(drift.param * x);
    }
}

double ProblemSpec::mu_prime(double x) const {
    switch (kind) {
        case ProblemKind::degenerate_dirichlet:
            return 1.0;
        case ProblemKind::degenerate_neumann:
            return (2.0 - alpha) * std::pow(x, 1.0 - alpha);
        default:
            return drift.form == DriftForm::power
                       ? drift.param * std::pow(x, drift.param - 1.0)
                       : drift.param * std::cos(drift.param * x);
    }
}

const char* to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::fp_neumann: return "fp_neumann";
        case ProblemKind::fp_dirichlet: return "fp_dirichlet";
        case ProblemKind::heat_neumann_drift: return "heat_neumann_drift";
        case ProblemKind::degenerate_dirichlet: return "degenerate_dirichlet";
        case ProblemKind::degenerate_neumann: return "degenerate_neumann";
    }
    return "?";
}

std::optional<ProblemKind> problem_kind_from_string(const std::string& name) {
    if (name == "fp_neumann") return ProblemKind::fp_neumann;
    if (name == "fp_dirichlet") return ProblemKind::fp_dirichlet;
    if (name == "heat_neumann_drift") return ProblemKind::heat_neumann_drift;
    if (name == "degenerate_dirichlet") return ProblemKind::degenerate_dirichlet;
    if (name == "degenerate_neumann") return ProblemKind::degenerate_neumann;
    return std::nullopt;
}

bool has_closed_form(const ProblemSpec& spec, int k) {
    switch (spec.kind) {
        case ProblemKind::fp_dirichlet:
            return spec.drift.form == DriftForm::power && spec.drift.param == 1.0 && k >= 1;
        case ProblemKind::fp_neumann:
            if (k == 0) return true;  // <B phi_0, phi_0> = mu(1) - mu(0)
            if (spec.drift.form == DriftForm::power) return spec.drift.param == 3.0;
            return spec.drift.form == DriftForm::sine;
        case ProblemKind::heat_neumann_drift:
            return spec.drift.form == DriftForm::power && spec.drift.param == 2.0 && k >= 0;
        case ProblemKind::degenerate_dirichlet:
            return k >= 1;
        case ProblemKind::degenerate_neumann:
            return k >= 0;
    }
    return false;
}

double b_coeff_closed_form(const ProblemSpec& spec, int k) {
    if (!has_closed_form(spec, k))
        throw ValidationError("no closed-form coupling coefficient for this (problem, k)");
    switch (spec.kind) {
        case ProblemKind::fp_dirichlet:
            // mu = x: 1/2 at the ground, (-1)^k 2k/(k^2-1) above it
            return k == 1 ? 0.5 : sign_pm(k) * 2.0 * k / (static_cast<double>(k) * k - 1.0);
        case ProblemKind::fp_neumann: {
            if (k == 0) return spec.mu(1.0) - spec.mu(0.0);
            if (spec.drift.form == DriftForm::power)  // n = 3
                return 6.0 * std::numbers::sqrt2 * sign_pm(k) / ((k * pi) * (k * pi));
            const double a = spec.drift.param;
            return std::numbers::sqrt2 * a * a * std::sin(a) * sign_pm(k) /
                   (a * a - (k * pi) * (k * pi));
        }
        case ProblemKind::heat_neumann_drift:
            // mu = x^2
            return k == 0 ? 1.0 / 3.0
                          : 2.0 * std::numbers::sqrt2 * sign_pm(k) / ((k * pi) * (k * pi));
        case ProblemKind::degenerate_dirichlet: {
            if (k == 1) return -0.5;
            const double ka = 0.5 * (2.0 - spec.alpha);
            const double nu = std::abs(1.0 - spec.alpha) / (2.0 - spec.alpha);
            auto zeros = bessel_zeros(nu, k).zeros;
            const double j1 = zeros[0], jk = zeros[k - 1];
            const double lk = ka * ka * jk * jk, l1 = ka * ka * j1 * j1;
            return sign_pm(k) * 2.0 * ka * ka * ka * j1 * jk / (lk - l1);
        }
        case ProblemKind::degenerate_neumann: {
            const double a = spec.alpha;
            if (k == 0) return 1.0 / (3.0 - a);
            const double ka = 0.5 * (2.0 - a);
            const double nu_a = std::abs(1.0 - a) / (2.0 - a);
            const double zero_order = (a < 1.0) ? 1.0 - nu_a : nu_a + 1.0;
            auto zeros = bessel_zeros(zero_order, k).zeros;
            const double lm = ka * ka * zeros[k - 1] * zeros[k - 1];
            return sign_pm(k) * std::pow(2.0 - a, 1.5) / lm;
        }
    }
    return 0.0;
}

double b_coeff_quadrature(const ProblemSpec& spec, int m, int k) {
    spec.validate();
    // paper indices -> storage
    Basis basis = make_basis(spec);
    const int im = m - basis.index_base;
    const int ik = k - basis.index_base;
    if (im < 0 || ik < 0 || im >= spec.truncation || ik >= spec.truncation)
        throw ValidationError("b_coeff_quadrature: index outside truncation");
    return quad_coeff(spec, basis, im, ik);
}

EigenSystem build_problem(const ProblemSpec& spec) {
    spec.validate();
    const int K = spec.truncation;
    auto basis = std::make_shared<Basis>(make_basis(spec));

    EigenSystem es;
    es.index_base = basis->index_base;
    es.ground_index = 0;
    es.eigenvalues = Eigen::Map<const Eigen::VectorXd>(basis->lambda.data(), K);
    es.coupling.resize(K, K);
    for (int im = 0; im < K; ++im) {
        for (int ik = 0; ik < K; ++ik) {
            const int paper_k = ik + basis->index_base;
            if (im == es.ground_index && has_closed_form(spec, paper_k)) {
                es.coupling(ik, im) = b_coeff_closed_form(spec, paper_k);
            } else {
                es.coupling(ik, im) = quad_coeff(spec, *basis, im, ik);
            }
        }
    }
    es.eigenfunction = [basis](int i, double x) { return basis->phi(i, x); };

    // Measured gap over the truncation.
    es.gap_constant = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < K; ++i)
        es.gap_constant = std::min(es.gap_constant, std::sqrt(es.eigenvalues(i + 1)) -
                                                        std::sqrt(es.eigenvalues(i)));
    if (K < 2) es.gap_constant = 0.0;

    // Measured rank parameters; a vanishing ground-coupling entry breaks the
    // moment method, so it is an error here.
    es.rank_q = rank_exponent(spec.kind);
    es.rank_b = std::numeric_limits<double>::infinity();
    const Eigen::VectorXd bg = es.ground_coupling();
    const double scale = bg.cwiseAbs().maxCoeff();
    for (int ik = 0; ik < K; ++ik) {
        if (ik == es.ground_index) continue;
        if (std::abs(bg(ik)) < 1e-13 * std::max(scale, 1.0))
            throw HypothesisViolation(
                "rank condition fails: <B phi_ground, phi_k> vanishes at paper index k = " +
                    std::to_string(ik + es.index_base) + " for " + to_string(spec.kind),
                ik + es.index_base);
        const double gap = std::abs(es.eigenvalues(ik) - es.ground_eigenvalue());
        es.rank_b = std::min(es.rank_b, std::pow(gap, es.rank_q) * std::abs(bg(ik)));
    }
    if (K < 2) es.rank_b = 0.0;
    return es;
}

HypothesisReport verify_hypotheses(const EigenSystem& es, const ProblemSpec& spec) {
    HypothesisReport rep;
    rep.measured_gap = es.gap_constant;
    switch (spec.kind) {
        case ProblemKind::fp_neumann:
        case ProblemKind::fp_dirichlet:
        case ProblemKind::heat_neumann_drift:
            rep.required_gap = pi;
            break;
        case ProblemKind::degenerate_dirichlet:
            rep.required_gap = (spec.alpha < 1.0) ? (7.0 / 16.0) * pi
                                                  : 0.5 * (2.0 - spec.alpha) * pi;
            break;
        case ProblemKind::degenerate_neumann:
            rep.required_gap = 0.5 * (2.0 - spec.alpha) * pi;
            break;
    }
    rep.gap_ok = rep.measured_gap >= rep.required_gap - 1e-12;

    rep.rank_q = es.rank_q;
    rep.measured_rank_b = es.rank_b;
    const Eigen::VectorXd bg = es.ground_coupling();
    rep.min_ground_coupling = std::numeric_limits<double>::infinity();
    const double scale = std::max(bg.cwiseAbs().maxCoeff(), 1.0);
    for (int ik = 0; ik < es.size(); ++ik) {
        const double v = std::abs(bg(ik));
        if (v < rep.min_ground_coupling) rep.min_ground_coupling = v;
        if (v < 1e-13 * scale && rep.zero_mode < 0) rep.zero_mode = ik + es.index_base;
    }
    rep.rank_ok = rep.zero_mode < 0 && rep.measured_rank_b > 0.0;
    return rep;
}

}  // namespace groundctl
