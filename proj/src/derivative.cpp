#include "tscalc/derivative.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "tscalc/quadrature.hpp"

namespace tscalc {

std::string method_name(DerivMethod m) {
    switch (m) {
        case DerivMethod::DifferenceQuotient: return "difference-quotient";
        case DerivMethod::ClassicalLimit: return "classical-limit";
        case DerivMethod::Quadrature: return "quadrature";
    }
    return "?";
}

double fd_step(double t) {
    static const double root = std::cbrt(std::numeric_limits<double>::epsilon());
    return root * std::max(1.0, std::abs(t));
}

namespace {

double require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw NonFiniteValue(std::string(what) + " produced a non-finite value");
    return v;
}

// f' at t: exact when available, otherwise central difference.
double classical_at(const RealFunction& f, double t, std::string* note) {
    if (f.has_derivative()) {
        if (note) *note = "analytic derivative";
        return f.classical_derivative(t);
    }
    const double h = fd_step(t);
    if (note) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "central difference, h=%.3e", h);
        *note = buf;
    }
    return (f.value(t + h) - f.value(t - h)) / (2.0 * h);
}

}  // namespace

DerivativeReport delta_derivative(const TimeScale& ts, const RealFunction& f, double t) {
    if (!ts.contains(t)) throw PointNotInScale(t, ts.describe());
    if (!ts.in_kappa(t)) throw NotInKappa("delta derivative undefined at the left-scattered maximum");
    const double mu = ts.mu(t);
    DerivativeReport rep;
    rep.mu_used = mu;
    if (mu > mu_threshold(t)) {
        rep.method = DerivMethod::DifferenceQuotient;
        rep.value = (f.value(ts.sigma(t)) - f.value(t)) / mu;
    } else {
        rep.method = DerivMethod::ClassicalLimit;
        rep.value = classical_at(f, t, &rep.diagnostics);
    }
    require_finite(rep.value, "delta derivative");
    return rep;
}

DerivativeReport delta_derivative_quadrature(const TimeScale& ts, const RealFunction& f, double t,
                                             double tol) {
    if (!ts.contains(t)) throw PointNotInScale(t, ts.describe());
    if (!ts.in_kappa(t)) throw NotInKappa("delta derivative undefined at the left-scattered maximum");
    const double mu = ts.mu(t);
    std::size_t evals = 0;
    auto integrand = [&](double tau) {
        ++evals;
        return classical_at(f, t + tau * mu, nullptr);
    };
    DerivativeReport rep;
    rep.mu_used = mu;
    rep.method = DerivMethod::Quadrature;
    rep.value = adaptive_simpson(integrand, 0.0, 1.0, tol);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "simpson tol=%.1e, %zu evaluations", tol, evals);
    rep.diagnostics = buf;
    require_finite(rep.value, "delta derivative");
    return rep;
}

DerivativeReport nabla_derivative(const TimeScale& ts, const RealFunction& f, double t) {
    if (!ts.contains(t)) throw PointNotInScale(t, ts.describe());
    if (!ts.in_kappa_nabla(t))
        throw NotInKappa("nabla derivative undefined at the right-scattered minimum");
    const double nu = ts.nu(t);
    DerivativeReport rep;
    rep.mu_used = nu;
    if (nu > mu_threshold(t)) {
        rep.method = DerivMethod::DifferenceQuotient;
        rep.value = (f.value(t) - f.value(ts.rho(t))) / nu;
    } else {
        rep.method = DerivMethod::ClassicalLimit;
        rep.value = classical_at(f, t, &rep.diagnostics);
    }
    require_finite(rep.value, "nabla derivative");
    return rep;
}

// ---------------------------------------------------------------------------
// Delta integral

namespace {

struct Atom {
    double t;
    double mu;
};

struct DensePiece {
    double lo;
    double hi;
};

constexpr std::size_t kMaxAtoms = std::size_t{1} << 24;

void decompose(const TimeScale& ts, double a, double b, std::vector<Atom>& atoms,
               std::vector<DensePiece>& dense) {
    switch (ts.kind()) {
        case ScaleKind::Reals:
            dense.push_back({a, b});
            return;
        case ScaleKind::UniformLattice: {
            const double h = ts.lattice_step();
            const double count = std::round((b - a) / h);
            if (count > static_cast<double>(kMaxAtoms))
                throw Error("integration window covers too many lattice points");
            const auto n = static_cast<long long>(count);
            for (long long i = 0; i < n; ++i)
                atoms.push_back({a + static_cast<double>(i) * h, h});
            return;
        }
        case ScaleKind::QLattice: {
            const double q = ts.q_ratio();
            const double lq = std::log(q);
            const auto k_a = static_cast<long long>(std::round(std::log(a) / lq));
            const auto k_b = static_cast<long long>(std::round(std::log(b) / lq));
            for (long long k = k_a; k < k_b; ++k) {
                const double t = std::pow(q, static_cast<double>(k));
                atoms.push_back({t, t * (q - 1.0)});
            }
            return;
        }
        case ScaleKind::FiniteSet: {
            const auto& pts = ts.points();
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                if (pts[i] >= a - TimeScale::membership_tol(a) &&
                    pts[i] < b - TimeScale::membership_tol(b))
                    atoms.push_back({pts[i], pts[i + 1] - pts[i]});
            }
            return;
        }
        case ScaleKind::IntervalUnion: {
            for (const auto& iv : ts.intervals()) {
                const double lo = std::max(iv.lo, a);
                const double hi = std::min(iv.hi, b);
                if (lo > hi) continue;
                if (hi > lo) dense.push_back({lo, hi});
                if (hi == iv.hi && hi < b) atoms.push_back({hi, ts.sigma(hi) - hi});
            }
            return;
        }
    }
}

}  // namespace

double delta_integral(const TimeScale& ts, const RealFunction& f, double a, double b,
                      double max_step, double abs_tol) {
    if (!ts.contains(a)) throw PointNotInScale(a, ts.describe());
    if (!ts.contains(b)) throw PointNotInScale(b, ts.describe());
    if (a > b) throw EmptyWindow("integration window requires a <= b");
    if (a == b) return 0.0;
    if (!(max_step > 0.0)) throw Error("max_step must be positive");

    std::vector<Atom> atoms;
    std::vector<DensePiece> dense;
    decompose(ts, a, b, atoms, dense);

    std::vector<double> parts;
    parts.reserve(atoms.size() + dense.size());
    for (const auto& atom : atoms) parts.push_back(atom.mu * f.value(atom.t));
    for (const auto& piece : dense) {
        const auto panels =
            static_cast<std::size_t>(std::ceil((piece.hi - piece.lo) / max_step));
        parts.push_back(integrate_smooth(f.value, piece.lo, piece.hi, abs_tol, panels));
    }
    return require_finite(pairwise_sum(parts), "delta integral");
}

}  // namespace tscalc
