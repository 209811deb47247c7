#include "tscalc/special.hpp"

#include <cmath>

#include "tscalc/derivative.hpp"
#include "tscalc/stable.hpp"

namespace tscalc {

namespace {

bool limit_branch(double t, double mu) { return mu <= mu_threshold(t); }

double checked(double v) {
    if (!std::isfinite(v)) throw NonFiniteValue("special function overflowed");
    return v;
}

double mu_at(const TimeScale& ts, double t) {
    if (!ts.contains(t)) throw PointNotInScale(t, ts.describe());
    return ts.mu(t);
}

}  // namespace

double ts_sin_at(double t, double mu) {
    if (limit_branch(t, mu)) return std::sin(t);
    return checked(std::sin(t) * sinc(mu) - std::cos(t) * cosm1_over(mu));
}

double ts_cos_at(double t, double mu) {
    if (limit_branch(t, mu)) return std::cos(t);
    return checked(std::sin(t) * cosm1_over(mu) + std::cos(t) * sinc(mu));
}

double ts_sinh_at(double t, double mu) {
    if (limit_branch(t, mu)) return checked(std::sinh(t));
    return checked(0.5 * (std::exp(t) * expm1_over(mu) - std::exp(-t) * expm1_over(-mu)));
}

double ts_cosh_at(double t, double mu) {
    if (limit_branch(t, mu)) return checked(std::cosh(t));
    return checked(0.5 * (std::exp(t) * expm1_over(mu) + std::exp(-t) * expm1_over(-mu)));
}

double ts_sin(const TimeScale& ts, double t) { return ts_sin_at(t, mu_at(ts, t)); }
double ts_cos(const TimeScale& ts, double t) { return ts_cos_at(t, mu_at(ts, t)); }
double ts_sinh(const TimeScale& ts, double t) { return ts_sinh_at(t, mu_at(ts, t)); }
double ts_cosh(const TimeScale& ts, double t) { return ts_cosh_at(t, mu_at(ts, t)); }

DefectReport pythagorean_defect_at(double t, double mu) {
    DefectReport r;
    r.t = t;
    r.mu = mu;
    const double s = ts_sin_at(t, mu);
    const double c = ts_cos_at(t, mu);
    r.lhs = s * s + c * c;
    r.rhs = limit_branch(t, mu) ? 1.0 : one_minus_cos_norm(mu);
    r.gap = std::abs(r.lhs - r.rhs);
    return r;
}

DefectReport hyperbolic_defect_at(double t, double mu) {
    DefectReport r;
    r.t = t;
    r.mu = mu;
    const double sh = ts_sinh_at(t, mu);
    const double ch = ts_cosh_at(t, mu);
    r.lhs = ch * ch - sh * sh;
    r.rhs = limit_branch(t, mu) ? 1.0 : cosh_minus_one_norm(mu);
    r.gap = std::abs(r.lhs - r.rhs);
    return r;
}

DefectReport pythagorean_defect(const TimeScale& ts, double t) {
    return pythagorean_defect_at(t, mu_at(ts, t));
}

DefectReport hyperbolic_defect(const TimeScale& ts, double t) {
    return hyperbolic_defect_at(t, mu_at(ts, t));
}

}  // namespace tscalc
