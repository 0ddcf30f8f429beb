#pragma once

#include <vector>

namespace groundctl {

// Bessel functions of the first kind for real order nu >= 0, and their
// positive zeros. Power series below the seam, Hankel's large-argument
// expansion above it; zeros by McMahon-seeded bracketing plus Newton polish.

/// J_nu(x) for x >= 0.
double bessel_j(double nu, double x);

/// d/dx J_nu(x).
double bessel_j_prime(double nu, double x);

/// Strictly increasing positive zeros j_{nu,1..count} of J_nu.
struct BesselTable {
    double order = 0.0;
    std::vector<double> zeros;
};

BesselTable bessel_zeros(double nu, int count);

}  // namespace groundctl
