#pragma once

#include <cmath>

namespace tscalc {

// Removable-singularity kernels shared by the formula catalog and the
// time-scale special functions. Each one equals its textbook quotient for
// x != 0 and its analytic limit at x = 0, with no cancellation for |x| << 1.

/// (e^x - 1) / x, limit 1 at x = 0.
inline double expm1_over(double x) {
    if (x == 0.0) return 1.0;
    return std::expm1(x) / x;
}

/// ln(1 + x) / x, limit 1 at x = 0.
inline double log1p_over(double x) {
    if (x == 0.0) return 1.0;
    return std::log1p(x) / x;
}

/// sin(x) / x, limit 1 at x = 0.
inline double sinc(double x) {
    if (x == 0.0) return 1.0;
    return std::sin(x) / x;
}

/// (cos(x) - 1) / x, limit 0 at x = 0. Uses 1 - cos(x) = 2 sin^2(x/2).
inline double cosm1_over(double x) {
    if (x == 0.0) return 0.0;
    const double s = std::sin(0.5 * x);
    return -2.0 * s * s / x;
}

/// 2 (1 - cos(x)) / x^2, limit 1 at x = 0; equals (sin(x/2) / (x/2))^2.
inline double one_minus_cos_norm(double x) {
    const double s = sinc(0.5 * x);
    return s * s;
}

/// (e^x + e^{-x} - 2) / x^2, limit 1 at x = 0; equals (2 sinh(x/2) / x)^2.
inline double cosh_minus_one_norm(double x) {
    if (x == 0.0) return 1.0;
    const double s = 2.0 * std::sinh(0.5 * x) / x;
    return s * s;
}

/// (k^mu - 1) / mu for k > 0, limit ln(k) at mu = 0.
inline double powm1_over(double k, double mu) {
    const double lk = std::log(k);
    if (mu == 0.0) return lk;
    return std::expm1(mu * lk) / mu;
}

// Largest integer exponent accepted by the catalog and the expression layer.
inline constexpr int kMaxIntPow = 60;

/// base^e for integer e, by plain repeated multiplication (deterministic).
inline double ipow(double base, int e) {
    if (e < 0) return 1.0 / ipow(base, -e);
    double acc = 1.0;
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
}

}  // namespace tscalc
