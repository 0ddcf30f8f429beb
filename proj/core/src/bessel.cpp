#include "groundctl/bessel.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "groundctl/errors.hpp"

namespace groundctl {

namespace {

constexpr double series_asym_seam = 14.0;

// Ascending series. Terms peak near e^x, so the alternating sum cancels about
// x/ln(10) digits; long double accumulation keeps the seam region accurate.
double j_series(double nu, double x) {
    const long double half = 0.5L * x;
    long double term = powl(half, nu) / tgammal(static_cast<long double>(nu) + 1.0L);
    long double sum = term;
    const long double q = half * half;
    for (int m = 1; m <= 220; ++m) {
        term *= -q / (static_cast<long double>(m) * (m + static_cast<long double>(nu)));
        sum += term;
        if (fabsl(term) <= 1e-21L * fabsl(sum) + 1e-300L) break;
    }
    return static_cast<double>(sum);
}

// Hankel expansion J_nu(x) ~ sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],
// chi = x - (nu/2 + 1/4) pi. Truncated at the smallest term.
double j_asymptotic(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    const double ix8 = 1.0 / (8.0 * x);
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double prev_mag = std::numeric_limits<double>::max();
    for (int k = 1; k <= 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) * ix8 / k;
        const double mag = std::abs(term);
        if (mag >= prev_mag) break;  // divergent tail reached
        prev_mag = mag;
        switch (k % 4) {
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
            case 0: p += term; break;
        }
        if (mag <= 1e-18) break;
    }
    const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j(double nu, double x) {
    // Negative non-integer orders down to -1 are allowed (they appear in the
    // weakly degenerate Neumann eigenfunctions); the series and the Hankel
    // expansion both remain valid there.
    if (!(nu > -1.0)) throw ValidationError("bessel_j: order must exceed -1");
    if (x < 0.0) throw ValidationError("bessel_j: argument must be nonnegative");
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return x <= series_asym_seam ? j_series(nu, x) : j_asymptotic(nu, x);
}

double bessel_j_prime(double nu, double x) {
    if (x == 0.0) {
        if (nu == 0.0) return 0.0;
        if (nu == 1.0) return 0.5;
        return nu < 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    if (nu <= 0.0) return (nu / x) * bessel_j(nu, x) - bessel_j(nu + 1.0, x);
    return bessel_j(nu - 1.0, x) - (nu / x) * bessel_j(nu, x);
}

namespace {

// McMahon's expansion for the k-th positive zero.
double mcmahon_guess(double nu, int k) {
    const double mu = 4.0 * nu * nu;
    const double beta = (k + 0.5 * nu - 0.25) * std::numbers::pi;
    const double b8 = 8.0 * beta;
    double j = beta - (mu - 1.0) / b8;
    j -= 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8);
    return j;
}

double refine_zero(double nu, double lo, double hi) {
    double flo = bessel_j(nu, lo);
    assert(flo * bessel_j(nu, hi) <= 0.0);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = bessel_j(nu, mid);
        if (flo * fm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    double z = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        const double f = bessel_j(nu, z);
        const double df = bessel_j_prime(nu, z);
        if (df == 0.0) break;
        const double step = f / df;
        if (!(std::abs(step) < 1.0)) break;
        z -= step;
    }
    return z;
}

}  // namespace

BesselTable bessel_zeros(double nu, int count) {
    if (count < 0) throw ValidationError("bessel_zeros: count must be nonnegative");
    BesselTable table;
    table.order = nu;
    table.zeros.reserve(count);
    double prev = 0.0;
    for (int k = 1; k <= count; ++k) {
        const double guess = mcmahon_guess(nu, k);
        double lo = std::max(prev + 1e-8, guess - 1.2);
        double hi = guess + 1.2;
        // Expand or march the bracket if the guess was off (small k, larger nu).
        if (bessel_j(nu, lo) * bessel_j(nu, hi) > 0.0) {
            lo = prev + 1e-8;
            double f_lo = bessel_j(nu, lo);
            double step = 0.25;
            hi = lo;
            bool found = false;
            for (int i = 0; i < 4000; ++i) {
                const double next = hi + step;
                if (bessel_j(nu, next) * f_lo <= 0.0) {
                    lo = hi;
                    hi = next;
                    found = true;
                    break;
                }
                hi = next;
            }
            if (!found) throw IntegrationError("bessel_zeros: bracket search failed", 0.0);
        }
        const double z = refine_zero(nu, lo, hi);
        if (z <= prev) throw IntegrationError("bessel_zeros: zeros not increasing", z - prev);
        table.zeros.push_back(z);
        prev = z;
    }
    return table;
}

}  // namespace groundctl
