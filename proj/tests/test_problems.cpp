#include <doctest.h>

#include <cmath>
#include <numbers>

#include "groundctl/bessel.hpp"
#include "groundctl/errors.hpp"
#include "groundctl/problems.hpp"
#include "groundctl/quadrature.hpp"

using namespace groundctl;

namespace {
constexpr double pi = std::numbers::pi;

ProblemSpec fp_dirichlet_x(int K) {
    return {ProblemKind::fp_dirichlet, {DriftForm::power, 1.0}, 0.0, K};
}
ProblemSpec fp_neumann_x3(int K) {
    return {ProblemKind::fp_neumann, {DriftForm::power, 3.0}, 0.0, K};
}

// Test-local J0 by its plain double series: an oracle independent of the
// library's evaluator for the bracketed-bisection example.
double j0_series_oracle(double x) {
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 60; ++m) {
        term *= -(x * x / 4.0) / (m * m);
        sum += term;
    }
    return sum;
}
}  // namespace

TEST_CASE("fp_neumann spectrum") {
    auto es = build_problem(fp_neumann_x3(8));
    CHECK(es.eigenvalues(0) == 0.0);
    CHECK(es.eigenvalues(3) == doctest::Approx(9.0 * pi * pi).epsilon(1e-15));
    CHECK(es.index_base == 0);
    CHECK(es.gap_constant == doctest::Approx(pi).epsilon(1e-13));
}

TEST_CASE("degenerate Dirichlet at alpha = 0 reduces to the sine problem") {
    ProblemSpec spec{ProblemKind::degenerate_dirichlet, {DriftForm::fixed, 0.0}, 0.0, 32};
    auto es = build_problem(spec);
    for (int i = 0; i < 32; ++i) {
        const double expect = (i + 1.0) * (i + 1.0) * pi * pi;
        CHECK(std::abs(es.eigenvalues(i) - expect) < 1e-10 * expect + 1e-10);
    }
}

TEST_CASE("degenerate Dirichlet alpha = 1: ground eigenvalue from a bisection oracle") {
    // nu_alpha = 0, lambda_1 = (1/2)^2 j_{0,1}^2 with j_{0,1} bracketed in (2,3)
    double lo = 2.0, hi = 3.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (j0_series_oracle(lo) * j0_series_oracle(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    const double j01 = 0.5 * (lo + hi);
    ProblemSpec spec{ProblemKind::degenerate_dirichlet, {DriftForm::fixed, 0.0}, 1.0, 4};
    auto es = build_problem(spec);
    CHECK(es.eigenvalues(0) == doctest::Approx(0.25 * j01 * j01).epsilon(1e-12));
}

TEST_CASE("closed forms of the Fokker-Planck Dirichlet ground column") {
    auto spec = fp_dirichlet_x(8);
    CHECK(b_coeff_closed_form(spec, 1) == doctest::Approx(0.5));
    CHECK(b_coeff_closed_form(spec, 4) == doctest::Approx(8.0 / 15.0).epsilon(1e-15));
    // quadrature agrees: (m,k) = (1,2) must match (-1)^2*2*2/3 = 4/3
    CHECK(b_coeff_quadrature(spec, 1, 2) == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
    for (int k = 2; k <= 8; ++k) {
        const double closed = b_coeff_closed_form(spec, k);
        const double quad = b_coeff_quadrature(spec, 1, k);
        CHECK(std::abs(closed - quad) < 1e-9);
    }
}

TEST_CASE("closed forms of the Neumann catalog") {
    ProblemSpec heat{ProblemKind::heat_neumann_drift, {DriftForm::power, 2.0}, 0.0, 6};
    CHECK(b_coeff_closed_form(heat, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    for (int k = 1; k <= 6; ++k) {
        const double expect = 2.0 * std::numbers::sqrt2 * ((k % 2) ? -1.0 : 1.0) / (k * pi * k * pi);
        CHECK(b_coeff_closed_form(heat, k) == doctest::Approx(expect).epsilon(1e-15));
        CHECK(std::abs(b_coeff_quadrature(heat, 0, k) - expect) < 1e-9);
    }
    auto fpn = fp_neumann_x3(6);
    for (int k = 1; k <= 6; ++k) {
        const double expect = 6.0 * std::numbers::sqrt2 * ((k % 2) ? -1.0 : 1.0) / (k * pi * k * pi);
        CHECK(std::abs(b_coeff_quadrature(fpn, 0, k) - expect) < 1e-9);
    }
}

TEST_CASE("sine drift ground row matches the resonance formula") {
    const double a = 2.0;
    ProblemSpec spec{ProblemKind::fp_neumann, {DriftForm::sine, a}, 0.0, 6};
    for (int k = 1; k <= 6; ++k) {
        const double expect = std::numbers::sqrt2 * a * a * std::sin(a) *
                              ((k % 2) ? -1.0 : 1.0) / (a * a - k * pi * k * pi);
        CHECK(std::abs(b_coeff_quadrature(spec, 0, k) - expect) < 1e-9);
        CHECK(b_coeff_closed_form(spec, k) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("degenerate Dirichlet ground coefficients") {
    for (double alpha : {0.0, 0.5, 1.0, 1.5}) {
        ProblemSpec spec{ProblemKind::degenerate_dirichlet, {DriftForm::fixed, 0.0}, alpha, 6};
        CHECK(b_coeff_closed_form(spec, 1) == doctest::Approx(-0.5));
        CHECK(std::abs(b_coeff_quadrature(spec, 1, 1) - (-0.5)) < 1e-6);
        for (int k = 2; k <= 5; ++k) {
            const double closed = b_coeff_closed_form(spec, k);
            CHECK(std::abs(closed - b_coeff_quadrature(spec, 1, k)) < 1e-6);
        }
    }
}

TEST_CASE("degenerate Neumann ground coefficients and magnitudes") {
    for (double alpha : {0.0, 0.4, 1.0, 4.0 / 3.0}) {
        ProblemSpec spec{ProblemKind::degenerate_neumann, {DriftForm::fixed, 0.0}, alpha, 6};
        CHECK(b_coeff_closed_form(spec, 0) == doctest::Approx(1.0 / (3.0 - alpha)));
        auto es = build_problem(spec);
        for (int m = 1; m < 6; ++m) {
            const double expect_mag = std::pow(2.0 - alpha, 1.5) / es.eigenvalues(m);
            CHECK(std::abs(std::abs(es.coupling(m, 0)) - expect_mag) < 1e-6);
            CHECK(std::abs(b_coeff_closed_form(spec, m)) ==
                  doctest::Approx(expect_mag).epsilon(1e-12));
            CHECK(std::abs(b_coeff_closed_form(spec, m) - b_coeff_quadrature(spec, 0, m)) <
                  1e-6);
        }
    }
}

TEST_CASE("eigenfunctions are orthonormal under quadrature") {
    std::vector<ProblemSpec> specs = {
        fp_dirichlet_x(8),
        fp_neumann_x3(8),
        {ProblemKind::degenerate_dirichlet, {DriftForm::fixed, 0.0}, 0.7, 8},
        {ProblemKind::degenerate_neumann, {DriftForm::fixed, 0.0}, 1.2, 8},
    };
    for (const auto& spec : specs) {
        auto es = build_problem(spec);
        QuadratureOptions opts;
        opts.abs_tol = 1e-11;
        if (spec.kind == ProblemKind::degenerate_dirichlet ||
            spec.kind == ProblemKind::degenerate_neumann)
            opts.seed_points = graded_seed(0.0, 1.0, 40);
        for (int m = 0; m < 8; ++m)
            for (int k = m; k < 8; ++k) {
                auto r = integrate_adaptive(
                    [&](double x) { return es.eigenfunction(m, x) * es.eigenfunction(k, x); },
                    0.0, 1.0, opts);
                CHECK(std::abs(r.value - (m == k ? 1.0 : 0.0)) < 1e-8);
            }
    }
}

TEST_CASE("gap certificates per problem family") {
    auto fpd = build_problem(fp_dirichlet_x(16));
    auto rep = verify_hypotheses(fpd, fp_dirichlet_x(16));
    CHECK(rep.measured_gap == doctest::Approx(pi).epsilon(1e-13));
    CHECK(rep.gap_ok);
    CHECK(rep.rank_ok);

    for (double alpha : {0.0, 0.3, 0.9}) {
        ProblemSpec spec{ProblemKind::degenerate_dirichlet, {DriftForm::fixed, 0.0}, alpha, 16};
        auto es = build_problem(spec);
        auto r = verify_hypotheses(es, spec);
        CHECK(r.required_gap == doctest::Approx(7.0 / 16.0 * pi));
        CHECK(r.gap_ok);
    }
    for (double alpha : {1.0, 1.5, 1.9}) {
        ProblemSpec spec{ProblemKind::degenerate_dirichlet, {DriftForm::fixed, 0.0}, alpha, 16};
        auto es = build_problem(spec);
        auto r = verify_hypotheses(es, spec);
        CHECK(r.required_gap == doctest::Approx((2.0 - alpha) * pi / 2.0));
        CHECK(r.gap_ok);
    }
}

TEST_CASE("rank-condition failure names the offending mode") {
    // mu = x on the Neumann problem: B phi_0 = mu' = 1 is orthogonal to every
    // nonconstant mode.
    ProblemSpec spec{ProblemKind::fp_neumann, {DriftForm::power, 1.0}, 0.0, 6};
    CHECK_THROWS_AS(build_problem(spec), HypothesisViolation);
    try {
        build_problem(spec);
    } catch (const HypothesisViolation& e) {
        CHECK(e.mode >= 1);
    }
}

TEST_CASE("validation rejects out-of-range degeneracy") {
    ProblemSpec spec{ProblemKind::degenerate_neumann, {DriftForm::fixed, 0.0}, 1.5, 8};
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    ProblemSpec spec2{ProblemKind::degenerate_dirichlet, {DriftForm::fixed, 0.0}, 2.0, 8};
    CHECK_THROWS_AS(spec2.validate(), ValidationError);
}

TEST_CASE("degenerate Neumann boundary values match the |phi_m(1)| law") {
    for (double alpha : {0.3, 1.25}) {
        ProblemSpec spec{ProblemKind::degenerate_neumann, {DriftForm::fixed, 0.0}, alpha, 5};
        auto es = build_problem(spec);
        for (int m = 1; m < 5; ++m) {
            const double val = es.eigenfunction(m, 1.0);
            CHECK(std::abs(std::abs(val) - std::sqrt(2.0 - alpha)) < 1e-7);
            // positive normalizers give boundary sign (-1)^m
            CHECK(val * ((m % 2) ? -1.0 : 1.0) > 0.0);
        }
    }
}
