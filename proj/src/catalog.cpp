#include "tscalc/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tscalc/stable.hpp"

namespace tscalc {

namespace {

using P = CatalogParams;

// ((t+mu)^n - t^n) / mu as a Horner polynomial in mu; equals n t^{n-1} at
// mu = 0, so the quotient never cancels.
double quotient_power_sum(double t, double mu, int n) {
    double acc = 1.0, binom = 1.0, tp = 1.0;
    for (int j = 1; j <= n - 1; ++j) {
        binom = binom * (n - j + 1) / j;
        tp *= t;
        acc = acc * mu + binom * tp;
    }
    return acc;
}

// (t+mu)^n via its binomial expansion, Horner in mu.
double full_power_sum(double t, double mu, int n) {
    double acc = 1.0, binom = 1.0, tp = 1.0;
    for (int i = 1; i <= n; ++i) {
        binom = binom * (n - i + 1) / i;
        tp *= t;
        acc = acc * mu + binom * tp;
    }
    return acc;
}

bool anywhere(double, const P&) { return true; }
bool no_params(const P&) { return true; }
bool n_in_range(const P& p) { return p.n >= 1 && p.n <= kMaxIntPow; }

const std::vector<CatalogEntry> kTable = {
    {"B01", "k", true, false, false,
     [](double, const P& p) { return p.k; },
     [](double, const P&) { return 0.0; },
     [](double, double, const P&) { return 0.0; },
     anywhere, no_params},

    {"B02", "t^n", false, false, true,
     [](double t, const P& p) { return ipow(t, p.n); },
     [](double t, const P& p) { return p.n * ipow(t, p.n - 1); },
     [](double t, double mu, const P& p) { return quotient_power_sum(t, mu, p.n); },
     anywhere, n_in_range},

    {"B03", "k^t", true, false, false,
     [](double t, const P& p) { return std::pow(p.k, t); },
     [](double t, const P& p) { return std::log(p.k) * std::pow(p.k, t); },
     [](double t, double mu, const P& p) { return powm1_over(p.k, mu) * std::pow(p.k, t); },
     anywhere, [](const P& p) { return p.k > 0.0; }},

    {"B04", "(t + k)^n", true, false, true,
     [](double t, const P& p) { return ipow(t + p.k, p.n); },
     [](double t, const P& p) { return p.n * ipow(t + p.k, p.n - 1); },
     [](double t, double mu, const P& p) { return quotient_power_sum(t + p.k, mu, p.n); },
     anywhere, n_in_range},

    {"R01", "sqrt(t)", false, false, false,
     [](double t, const P&) { return std::sqrt(t); },
     [](double t, const P&) { return 1.0 / (2.0 * std::sqrt(t)); },
     [](double t, double mu, const P&) { return 1.0 / (std::sqrt(t + mu) + std::sqrt(t)); },
     [](double u, const P&) { return u > 0.0; }, no_params},

    {"R02", "sqrt(k + t^n)", true, false, true,
     [](double t, const P& p) { return std::sqrt(p.k + ipow(t, p.n)); },
     [](double t, const P& p) {
         return p.n * ipow(t, p.n - 1) / (2.0 * std::sqrt(p.k + ipow(t, p.n)));
     },
     [](double t, double mu, const P& p) {
         const double a = std::sqrt(p.k + full_power_sum(t, mu, p.n));
         const double b = std::sqrt(p.k + ipow(t, p.n));
         return quotient_power_sum(t, mu, p.n) / (a + b);
     },
     [](double u, const P& p) { return p.k + ipow(u, p.n) >= 0.0; }, n_in_range},

    {"R03", "t^n*sqrt(k + c*t)", true, true, true,
     [](double t, const P& p) { return ipow(t, p.n) * std::sqrt(p.k + p.c * t); },
     [](double t, const P& p) {
         const double r = std::sqrt(p.k + p.c * t);
         return p.n * ipow(t, p.n - 1) * r + p.c * ipow(t, p.n) / (2.0 * r);
     },
     [](double t, double mu, const P& p) {
         const double a = std::sqrt(p.k + p.c * (t + mu));
         const double b = std::sqrt(p.k + p.c * t);
         return a * quotient_power_sum(t, mu, p.n) + ipow(t, p.n) * p.c / (a + b);
     },
     [](double u, const P& p) { return p.k + p.c * u >= 0.0; }, n_in_range},

    {"L01", "ln(t^n)", false, false, true,
     [](double t, const P& p) { return std::log(ipow(t, p.n)); },
     [](double t, const P& p) { return p.n / t; },
     [](double t, double mu, const P& p) { return (p.n / t) * log1p_over(mu / t); },
     [](double u, const P&) { return u > 0.0; }, n_in_range},

    {"L02", "ln(k*t + c)", true, true, false,
     [](double t, const P& p) { return std::log(p.k * t + p.c); },
     [](double t, const P& p) { return p.k / (p.k * t + p.c); },
     [](double t, double mu, const P& p) {
         const double d = p.k * t + p.c;
         return (p.k / d) * log1p_over(p.k * mu / d);
     },
     [](double u, const P& p) { return p.k * u + p.c > 0.0; }, no_params},

    {"E01", "exp(k*t)", true, false, false,
     [](double t, const P& p) { return std::exp(p.k * t); },
     [](double t, const P& p) { return p.k * std::exp(p.k * t); },
     [](double t, double mu, const P& p) {
         return std::exp(p.k * t) * p.k * expm1_over(p.k * mu);
     },
     anywhere, no_params},

    {"E02", "t^n*exp(k*t)", true, false, true,
     [](double t, const P& p) { return ipow(t, p.n) * std::exp(p.k * t); },
     [](double t, const P& p) {
         return std::exp(p.k * t) * (p.k * ipow(t, p.n) + p.n * ipow(t, p.n - 1));
     },
     [](double t, double mu, const P& p) {
         return std::exp(p.k * t) * (full_power_sum(t, mu, p.n) * p.k * expm1_over(p.k * mu) +
                                     quotient_power_sum(t, mu, p.n));
     },
     anywhere, n_in_range},

    {"T01", "sin(t)", false, false, false,
     [](double t, const P&) { return std::sin(t); },
     [](double t, const P&) { return std::cos(t); },
     [](double t, double mu, const P&) {
         return std::sin(t) * cosm1_over(mu) + std::cos(t) * sinc(mu);
     },
     anywhere, no_params},

    {"T02", "cos(t)", false, false, false,
     [](double t, const P&) { return std::cos(t); },
     [](double t, const P&) { return -std::sin(t); },
     [](double t, double mu, const P&) {
         return std::cos(t) * cosm1_over(mu) - std::sin(t) * sinc(mu);
     },
     anywhere, no_params},

    {"TM01", "t*sin(k*t)", true, false, false,
     [](double t, const P& p) { return t * std::sin(p.k * t); },
     [](double t, const P& p) { return std::sin(p.k * t) + p.k * t * std::cos(p.k * t); },
     [](double t, double mu, const P& p) {
         const double a = p.k * t, da = p.k * mu;
         return t * p.k * (std::sin(a) * cosm1_over(da) + std::cos(a) * sinc(da)) +
                std::sin(p.k * (t + mu));
     },
     anywhere, no_params},

    {"TM02", "t*cos(k*t)", true, false, false,
     [](double t, const P& p) { return t * std::cos(p.k * t); },
     [](double t, const P& p) { return std::cos(p.k * t) - p.k * t * std::sin(p.k * t); },
     [](double t, double mu, const P& p) {
         const double a = p.k * t, da = p.k * mu;
         return t * p.k * (std::cos(a) * cosm1_over(da) - std::sin(a) * sinc(da)) +
                std::cos(p.k * (t + mu));
     },
     anywhere, no_params},

    {"TE01", "exp(k*t)*sin(c*t)", true, true, false,
     [](double t, const P& p) { return std::exp(p.k * t) * std::sin(p.c * t); },
     [](double t, const P& p) {
         return std::exp(p.k * t) * (p.k * std::sin(p.c * t) + p.c * std::cos(p.c * t));
     },
     [](double t, double mu, const P& p) {
         const double a = p.c * t, da = p.c * mu;
         return std::exp(p.k * t) *
                (std::sin(p.c * (t + mu)) * p.k * expm1_over(p.k * mu) +
                 p.c * (std::sin(a) * cosm1_over(da) + std::cos(a) * sinc(da)));
     },
     anywhere, no_params},

    {"TE02", "exp(k*t)*cos(c*t)", true, true, false,
     [](double t, const P& p) { return std::exp(p.k * t) * std::cos(p.c * t); },
     [](double t, const P& p) {
         return std::exp(p.k * t) * (p.k * std::cos(p.c * t) - p.c * std::sin(p.c * t));
     },
     [](double t, double mu, const P& p) {
         const double a = p.c * t, da = p.c * mu;
         return std::exp(p.k * t) *
                (std::cos(p.c * (t + mu)) * p.k * expm1_over(p.k * mu) +
                 p.c * (std::cos(a) * cosm1_over(da) - std::sin(a) * sinc(da)));
     },
     anywhere, no_params},

    {"H01", "sinh(k*t)", true, false, false,
     [](double t, const P& p) { return std::sinh(p.k * t); },
     [](double t, const P& p) { return p.k * std::cosh(p.k * t); },
     [](double t, double mu, const P& p) {
         return 0.5 * p.k *
                (std::exp(p.k * t) * expm1_over(p.k * mu) +
                 std::exp(-p.k * t) * expm1_over(-p.k * mu));
     },
     anywhere, no_params},

    {"H02", "cosh(k*t)", true, false, false,
     [](double t, const P& p) { return std::cosh(p.k * t); },
     [](double t, const P& p) { return p.k * std::sinh(p.k * t); },
     [](double t, double mu, const P& p) {
         return 0.5 * p.k *
                (std::exp(p.k * t) * expm1_over(p.k * mu) -
                 std::exp(-p.k * t) * expm1_over(-p.k * mu));
     },
     anywhere, no_params},

    {"H03", "sinh(k*t)*cosh(k*t)", true, false, false,
     [](double t, const P& p) { return std::sinh(p.k * t) * std::cosh(p.k * t); },
     [](double t, const P& p) { return p.k * std::cosh(2.0 * p.k * t); },
     [](double t, double mu, const P& p) {
         return 0.5 * p.k *
                (std::exp(2.0 * p.k * t) * expm1_over(2.0 * p.k * mu) +
                 std::exp(-2.0 * p.k * t) * expm1_over(-2.0 * p.k * mu));
     },
     anywhere, no_params},
};

double checked(double v, const char* id, const char* what) {
    if (!std::isfinite(v))
        throw NonFiniteValue(std::string(id) + " " + what + " overflowed");
    return v;
}

void validate(const CatalogEntry& e, const P& p, double t, double mu) {
    if (!e.params_ok(p)) throw ParamViolation(std::string(e.id) + ": parameters out of range");
    if (mu < 0.0) throw DomainViolation("graininess must be nonnegative");
    for (double u : {t, t + mu}) {
        if (!e.domain_ok(u, p)) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%s is undefined at t=%g", e.id, u);
            throw DomainViolation(buf);
        }
        if (mu == 0.0) break;
    }
}

}  // namespace

const std::vector<CatalogEntry>& list_catalog() { return kTable; }

const CatalogEntry* find_entry(const std::string& id) {
    for (const auto& e : kTable)
        if (id == e.id) return &e;
    return nullptr;
}

const CatalogEntry& catalog_entry(const std::string& id) {
    const CatalogEntry* e = find_entry(id);
    if (!e) throw Error("unknown catalog id '" + id + "'");
    return *e;
}

double eval_delta(const std::string& id, const CatalogParams& p, double t, double mu) {
    const CatalogEntry& e = catalog_entry(id);
    validate(e, p, t, mu);
    const double v = mu > mu_threshold(t) ? e.delta_closed(t, mu, p) : e.classical(t, p);
    return checked(v, e.id, "derivative");
}

double eval_value(const std::string& id, const CatalogParams& p, double t) {
    const CatalogEntry& e = catalog_entry(id);
    validate(e, p, t, 0.0);
    return checked(e.value(t, p), e.id, "value");
}

double eval_classical(const std::string& id, const CatalogParams& p, double t) {
    const CatalogEntry& e = catalog_entry(id);
    validate(e, p, t, 0.0);
    return checked(e.classical(t, p), e.id, "derivative");
}

RealFunction entry_function(const CatalogEntry& e, const CatalogParams& p) {
    return RealFunction{[&e, p](double t) { return e.value(t, p); },
                        [&e, p](double t) { return e.classical(t, p); }};
}

CrossCheck cross_check(const std::string& id, const CatalogParams& p, const TimeScale& ts,
                       double t) {
    const CatalogEntry& e = catalog_entry(id);
    const double mu = ts.mu(t);
    CrossCheck r{};
    r.closed_form = eval_delta(id, p, t, mu);
    const RealFunction f = entry_function(e, p);
    r.difference_quotient = delta_derivative(ts, f, t).value;
    const double qtol = 1e-10 * std::max(1.0, std::abs(r.difference_quotient));
    r.quadrature = delta_derivative_quadrature(ts, f, t, qtol).value;
    r.max_abs_gap = std::max({std::abs(r.closed_form - r.difference_quotient),
                              std::abs(r.closed_form - r.quadrature),
                              std::abs(r.difference_quotient - r.quadrature)});
    return r;
}

}  // namespace tscalc
