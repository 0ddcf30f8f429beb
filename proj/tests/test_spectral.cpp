#include <doctest.h>

#include <cmath>
#include <numbers>

#include "groundctl/bound_constants.hpp"
#include "groundctl/eigensystem.hpp"
#include "groundctl/errors.hpp"
#include "groundctl/quadrature.hpp"
#include "groundctl/rng.hpp"

using namespace groundctl;

namespace {
constexpr double pi = std::numbers::pi;

EigenSystem toy_system(int K) {
    EigenSystem es;
    es.eigenvalues.resize(K);
    for (int k = 0; k < K; ++k) es.eigenvalues(k) = k * k * pi * pi;
    es.ground_index = 0;
    es.coupling = Eigen::MatrixXd::Zero(K, K);
    return es;
}
}  // namespace

TEST_CASE("graded norm on single modes") {
    auto es = toy_system(4);
    State e0 = State::Zero(4);
    e0(0) = 1.0;
    CHECK(graded_norm(e0, Grading::half, es) == doctest::Approx(1.0));  // lambda = 0 mode
    State e1 = State::Zero(4);
    e1(1) = 1.0;  // lambda = pi^2
    CHECK(graded_norm(e1, Grading::half, es) ==
          doctest::Approx(std::sqrt(1.0 + pi * pi)).epsilon(1e-12));
    CHECK(std::sqrt(1.0 + pi * pi) == doctest::Approx(3.2969).epsilon(1e-4));
}

TEST_CASE("graded norm s=0 equals an independent resummation") {
    auto es = toy_system(12);
    State u(12);
    for (int k = 0; k < 12; ++k) u(k) = normal01(7u, k);
    double acc = 0.0;
    for (int k = 0; k < 12; ++k) acc += u(k) * u(k);
    CHECK(graded_norm(u, Grading::l2, es) == doctest::Approx(std::sqrt(acc)).epsilon(1e-14));
}

TEST_CASE("graded norm properties: homogeneity and grading monotonicity") {
    auto es = toy_system(9);
    for (int trial = 0; trial < 20; ++trial) {
        State u(9);
        for (int k = 0; k < 9; ++k) u(k) = normal01(11u, trial, k);
        const double c = normal01(13u, trial) * 3.0;
        CHECK(graded_norm(c * u, Grading::half, es) ==
              doctest::Approx(std::abs(c) * graded_norm(u, Grading::half, es)).epsilon(1e-12));
        const double n0 = graded_norm(u, Grading::l2, es);
        const double nh = graded_norm(u, Grading::half, es);
        const double n1 = graded_norm(u, Grading::one, es);
        CHECK(n0 <= nh + 1e-12);
        CHECK(nh <= n1 + 1e-12);
    }
}

TEST_CASE("graded norm rejects a length mismatch") {
    auto es = toy_system(5);
    CHECK_THROWS_AS(graded_norm(State::Zero(4), Grading::l2, es), ValidationError);
}

TEST_CASE("estimate_CB: zero operator and pencil identity") {
    auto es = toy_system(6);
    CHECK(estimate_CB(es) == doctest::Approx(0.0));
    // B = diag((1+lambda_k)^{1/2}) makes the Rayleigh quotient exactly one.
    for (int k = 0; k < 6; ++k) es.coupling(k, k) = std::sqrt(1.0 + es.eigenvalues(k));
    CHECK(estimate_CB(es) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("estimate_CB agrees with a hand-rolled power iteration") {
    auto es = toy_system(8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) es.coupling(i, j) = normal01(3u, i, j);
    // power iteration on D^{-1/2} C^T C D^{-1/2}
    Eigen::VectorXd d = (1.0 + es.eigenvalues.array()).sqrt().inverse();
    Eigen::MatrixXd S = es.coupling * d.asDiagonal();
    Eigen::VectorXd v = Eigen::VectorXd::Ones(8).normalized();
    double lam = 0.0;
    for (int it = 0; it < 3000; ++it) {
        v = S.transpose() * (S * v);
        lam = v.norm();
        v /= lam;
    }
    CHECK(estimate_CB(es) == doctest::Approx(std::sqrt(lam)).epsilon(1e-9));
}

TEST_CASE("bound constants pin the display formulas") {
    const double CB = 1.0, nu = 0.5, l1 = 0.0, T = 10.0, T0 = 1.0;
    auto c = compute_bound_constants(CB, nu, l1, T, T0);

    // T = 10, T0 = 1: Tf = pi^2/6 and T1 = 1.
    CHECK(c.Tf == doctest::Approx(pi * pi / 6.0).epsilon(1e-15));
    CHECK(c.T1 == doctest::Approx(1.0).epsilon(1e-15));

    // Independent arithmetic for D at C_B = 1, lambda1 = 0:
    // D = 2 sqrt(2) e^{13/4} max{5/2, 4}^{1/2}
    const double D_hand = 2.0 * std::sqrt(2.0) * std::exp(13.0 / 4.0) * 2.0;
    CHECK(c.D == doctest::Approx(D_hand).epsilon(1e-14));
    CHECK(c.Gamma0 == doctest::Approx(2.0 * nu + std::log(D_hand)).epsilon(1e-14));
    CHECK(c.R_T == doctest::Approx(std::exp(-6.0 * c.Gamma0 / c.T1)).epsilon(1e-14));

    // Doubling nu moves Gamma0 by exactly 2 nu.
    auto c2 = compute_bound_constants(CB, 2.0 * nu, l1, T, T0);
    CHECK(c2.Gamma0 - c.Gamma0 == doctest::Approx(2.0 * nu).epsilon(1e-13));

    // K(T)^2 = 2 e^{C4} C_B^2 N^2 C5 exactly.
    const double tau = 0.3;
    const double K2 = 2.0 * std::exp(c.C4(tau)) * CB * CB * c.N_bound(tau) * c.N_bound(tau) *
                      c.C5(tau);
    CHECK(c.K(tau) * c.K(tau) == doctest::Approx(K2).epsilon(1e-13));
}

TEST_CASE("K(T) finite and positive on [0.05, 1], decreasing where e^{nu/T} dominates") {
    auto c = compute_bound_constants(2.0, 1.0, 0.0, 1.0, 1.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double T = 0.05; T <= 1.0 + 1e-12; T += 0.05) {
        const double k = c.K(T);
        CHECK(std::isfinite(k));
        CHECK(k > 0.0);
        if (T <= 0.5) {  // cost-law regime
            CHECK(k <= prev);
        }
        prev = k;
    }
}

TEST_CASE("stage ceiling matches the closed form of the dyadic sum") {
    auto c = compute_bound_constants(1.5, 0.4, 0.0, 1.0, 1.0);
    // sum_{j<=n} 2^{n-j} j^2 - 2^n 6 = -(n^2 + 4n + 6)
    for (int n = 1; n <= 8; ++n) {
        const double expect = std::exp(-(n * n + 4.0 * n + 6.0) * c.Gamma0 / c.T1);
        CHECK(c.stage_ceiling(n) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("bound constants reject bad input") {
    CHECK_THROWS_AS(compute_bound_constants(0.5, 1.0, 0.0, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(compute_bound_constants(1.5, -1.0, 0.0, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(compute_bound_constants(1.5, 1.0, 0.0, -1.0, 1.0), ValidationError);
}

TEST_CASE("adaptive quadrature sanity") {
    auto r = integrate_adaptive([](double x) { return std::sin(17.0 * x); }, 0.0, 1.0, {});
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx((1.0 - std::cos(17.0)) / 17.0).epsilon(1e-12));
    QuadratureOptions opts;
    opts.seed_points = graded_seed(0.0, 1.0, 40);
    opts.abs_tol = 1e-10;
    auto s = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opts);
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-7));
}
