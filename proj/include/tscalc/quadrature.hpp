#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "tscalc/errors.hpp"

namespace tscalc {

inline constexpr double kSimpsonDefaultTol = 1e-10;
inline constexpr std::size_t kSimpsonMaxIntervals = std::size_t{1} << 15;

// Adaptive Simpson on [a, b] to an absolute tolerance. Throws
// QuadratureNoConvergence when the subdivision budget runs out.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = kSimpsonDefaultTol,
                        std::size_t max_intervals = kSimpsonMaxIntervals);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussNode {
    double x;
    double w;
};
const std::vector<GaussNode>& gauss_legendre_15();
std::vector<GaussNode> gauss_legendre_nodes(int n);

// Integral of a smooth function over [a, b]: composite 15-point Gauss rule
// with panel doubling until two successive refinements agree to abs_tol.
double integrate_smooth(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = kSimpsonDefaultTol, std::size_t initial_panels = 1);

// Order-independent deterministic sum (pairwise reduction).
double pairwise_sum(const std::vector<double>& terms);

}  // namespace tscalc
