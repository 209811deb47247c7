#pragma once

#include <functional>
#include <string>

#include "tscalc/timescale.hpp"

namespace tscalc {

// A real function, optionally with its exact classical derivative. When the
// derivative is absent, a central difference with step h_fd(t) stands in.
struct RealFunction {
    std::function<double(double)> value;
    std::function<double(double)> classical_derivative;  // may be empty

    bool has_derivative() const { return static_cast<bool>(classical_derivative); }
};

enum class DerivMethod { DifferenceQuotient, ClassicalLimit, Quadrature };

std::string method_name(DerivMethod m);

struct DerivativeReport {
    double value = 0.0;
    DerivMethod method = DerivMethod::ClassicalLimit;
    double mu_used = 0.0;
    std::string diagnostics;
};

// Quotient threshold: below this graininess the difference quotient is
// abandoned for the classical-limit branch.
inline double mu_threshold(double t) { return 1e-8 * std::max(1.0, std::abs(t)); }

// Central-difference step for the derivative fallback.
double fd_step(double t);

// Forward quotient (f(sigma(t)) - f(t)) / mu(t), or the classical derivative
// at right-dense points.
DerivativeReport delta_derivative(const TimeScale& ts, const RealFunction& f, double t);

// Same value through the integral representation: integral over [0,1] of
// f'(t + tau * mu(t)) d tau, by adaptive Simpson.
DerivativeReport delta_derivative_quadrature(const TimeScale& ts, const RealFunction& f, double t,
                                             double tol = 1e-10);

// Backward quotient (f(t) - f(rho(t))) / nu(t), classical at left-dense points.
DerivativeReport nabla_derivative(const TimeScale& ts, const RealFunction& f, double t);

// Integral of f over [a, b] in the delta sense: mu-weighted sum over
// right-scattered points of [a, b) plus classical quadrature over the dense
// sub-intervals. max_step seeds the panel width on dense pieces.
double delta_integral(const TimeScale& ts, const RealFunction& f, double a, double b,
                      double max_step = 0.25, double abs_tol = 1e-10);

}  // namespace tscalc
