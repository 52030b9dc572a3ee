#pragma once

namespace ccp
{

inline constexpr double pi = 3.14159265358979323846264338327950288;

//! Largest angular momentum supported by the Bessel kernels.
inline constexpr int max_bessel_l = 8;

// Natural log of Gamma(x) for x > 0.
double ln_gamma(double x);

// Euler Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta(double a, double b);

// Associated Laguerre polynomial L_k^(alpha)(x), forward recurrence.
double assoc_laguerre(int k, double alpha, double x);

// Gegenbauer polynomial C_k^(eta)(t), three-term recurrence.
double gegenbauer(int k, double eta, double t);

/*!
 * Spherical Bessel function of the first kind, j_l(x), 0 <= l <= 8.
 *
 * Uses the power series near the origin, Miller's downward recurrence
 * (normalized by the sum rule sum (2k+1) j_k^2 = 1) for x < l, and upward
 * recurrence from j_0, j_1 otherwise.
 */
double spherical_bessel_j(int l, double x);

//! Riccati-Bessel function x j_l(x).
double riccati_bessel(int l, double x);

}  // namespace ccp
