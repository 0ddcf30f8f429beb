#include "groundctl/bound_constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "groundctl/errors.hpp"

namespace groundctl {

double BoundConstants::N_bound(double tau) const { return std::exp(nu / tau); }

double BoundConstants::C2(double tau, double p_norm) const {
    return 2.0 * C_B * std::sqrt(tau) * p_norm + C_B * C_B * p_norm * p_norm + tau;
}

double BoundConstants::C3(double tau, double p_norm) const {
    return 1.5 * C_B * C_B * p_norm * p_norm + C2(tau, p_norm);
}

double BoundConstants::C4(double tau) const {
    return C_B * (2.5 * C_B + 2.0 * std::sqrt(tau)) + 2.0 * tau;
}

double BoundConstants::C5(double tau) const {
    const double N2 = N_bound(tau) * N_bound(tau);
    const double g = (1.0 + std::sqrt(lambda1)) * (1.0 + std::sqrt(lambda1));
    return 1.0 + 2.5 * C_B * C_B * g * N2 + 1.5 * C_B * C_B * (C_B * C_B * g * N2 + 1.0);
}

double BoundConstants::C11(double tau, double NT, double v0_half) const {
    const double g = (1.0 + std::sqrt(lambda1)) * (1.0 + std::sqrt(lambda1));
    const double expo =
        C_B * NT * (2.5 * C_B * NT * v0_half + 2.0 * std::sqrt(tau)) * v0_half + tau;
    const double bracket = 1.0 + 2.5 * C_B * C_B * g * NT * NT +
                           1.5 * C_B * C_B * NT * NT * (C_B * C_B * g * NT * NT + 1.0) *
                               v0_half * v0_half;
    return std::exp(expo) * bracket;
}

double BoundConstants::K(double tau) const {
    const double N = N_bound(tau);
    return std::sqrt(2.0 * std::exp(C4(tau)) * C_B * C_B * N * N * C5(tau));
}

double BoundConstants::stage_ceiling(int n) const {
    double sum = 0.0;
    for (int j = 1; j <= n; ++j) sum += std::ldexp(static_cast<double>(j) * j, n - j);
    const double exponent = (sum - std::ldexp(6.0, n)) * Gamma0 / T1;
    return std::exp(exponent);
}

BoundConstants compute_bound_constants(double C_B, double nu, double lambda1, double T,
                                       double T0) {
    if (!(C_B >= 1.0)) throw ValidationError("compute_bound_constants: C_B must be >= 1");
    if (!(nu > 0.0)) throw ValidationError("compute_bound_constants: nu must be positive");
    if (!(T > 0.0)) throw ValidationError("compute_bound_constants: T must be positive");
    if (!(T0 > 0.0)) throw ValidationError("compute_bound_constants: T0 must be positive");
    if (lambda1 < 0.0) throw ValidationError("compute_bound_constants: lambda1 must be >= 0");

    BoundConstants c;
    c.C_B = C_B;
    c.nu = nu;
    c.T0 = T0;
    c.lambda1 = lambda1;
    c.T = T;

    const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    c.Tf = std::min({T, pi2_6, pi2_6 * T0});
    c.T1 = c.Tf / pi2_6;

    const double g = (1.0 + std::sqrt(lambda1)) * (1.0 + std::sqrt(lambda1));
    const double inner =
        std::max(1.0 + 1.5 * C_B * C_B, 0.5 * C_B * C_B * g * (5.0 + 3.0 * C_B * C_B));
    c.D = 2.0 * std::sqrt(2.0) * C_B * std::exp(C_B * (1.25 * C_B + 1.0) + 1.0) *
          std::sqrt(inner);
    c.Gamma0 = 2.0 * nu + std::max(std::log(c.D), 0.0);
    c.R_T = std::exp(-6.0 * c.Gamma0 / c.T1);
    return c;
}

}  // namespace groundctl
