#include "tscalc/quadrature.hpp"

#include <cmath>

namespace tscalc {

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    std::size_t intervals = 1;
    std::size_t budget;
};

double simpson_rec(SimpsonState& st, double a, double fa, double b, double fb, double m, double fm,
                   double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth > 0 && std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (++st.intervals > st.budget || depth > 48)
        throw QuadratureNoConvergence("adaptive Simpson exceeded its subdivision budget");
    return simpson_rec(st, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
           simpson_rec(st, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        std::size_t max_intervals) {
    if (a == b) return 0.0;
    SimpsonState st{f, 1, max_intervals};
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double v = simpson_rec(st, a, fa, b, fb, m, fm, whole, abs_tol, 0);
    if (!std::isfinite(v)) throw NonFiniteValue("quadrature produced a non-finite value");
    return v;
}

std::vector<GaussNode> gauss_legendre_nodes(int n) {
    std::vector<GaussNode> nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Chebyshev-flavored initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    return nodes;
}

const std::vector<GaussNode>& gauss_legendre_15() {
    static const std::vector<GaussNode> nodes = gauss_legendre_nodes(15);
    return nodes;
}

namespace {

double gauss_panels(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
    const auto& rule = gauss_legendre_15();
    const double h = (b - a) / static_cast<double>(panels);
    std::vector<double> parts;
    parts.reserve(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + static_cast<double>(p) * h;
        const double mid = lo + 0.5 * h;
        double acc = 0.0;
        for (const auto& node : rule) acc += node.w * f(mid + 0.5 * h * node.x);
        parts.push_back(0.5 * h * acc);
    }
    return pairwise_sum(parts);
}

}  // namespace

double integrate_smooth(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        std::size_t initial_panels) {
    if (a == b) return 0.0;
    if (initial_panels == 0) initial_panels = 1;
    if (initial_panels > 2048) initial_panels = 2048;
    double prev = gauss_panels(f, a, b, initial_panels);
    for (std::size_t panels = initial_panels * 2; panels <= 4096; panels *= 2) {
        const double cur = gauss_panels(f, a, b, panels);
        if (std::abs(cur - prev) <= abs_tol) {
            if (!std::isfinite(cur)) throw NonFiniteValue("quadrature produced a non-finite value");
            return cur;
        }
        prev = cur;
    }
    throw QuadratureNoConvergence("panel refinement did not converge");
}

double pairwise_sum(const std::vector<double>& terms) {
    std::function<double(std::size_t, std::size_t)> rec = [&](std::size_t lo, std::size_t hi) {
        if (hi - lo <= 8) {
            double acc = 0.0;
            for (std::size_t i = lo; i < hi; ++i) acc += terms[i];
            return acc;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        return rec(lo, mid) + rec(mid, hi);
    };
    return terms.empty() ? 0.0 : rec(0, terms.size());
}

}  // namespace tscalc
