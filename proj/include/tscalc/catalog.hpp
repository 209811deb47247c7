#pragma once

#include <string>
#include <vector>

#include "tscalc/derivative.hpp"
#include "tscalc/timescale.hpp"

namespace tscalc {

struct CatalogParams {
    double k = 0.0;
    double c = 0.0;
    int n = 1;
};

// One table row: a function shape with parameters, its classical derivative,
// and the closed form of its forward quotient at graininess mu.
struct CatalogEntry {
    const char* id;
    const char* shape;  // e.g. "t^n*exp(k*t)", in the expression-language syntax
    bool uses_k;
    bool uses_c;
    bool uses_n;
    double (*value)(double t, const CatalogParams&);
    double (*classical)(double t, const CatalogParams&);
    double (*delta_closed)(double t, double mu, const CatalogParams&);
    bool (*domain_ok)(double u, const CatalogParams&);  // checked at t and t + mu
    bool (*params_ok)(const CatalogParams&);
};

// The full table, fixed order: B01..B04, R01..R03, L01, L02, E01, E02,
// T01, T02, TM01, TM02, TE01, TE02, H01..H03.
const std::vector<CatalogEntry>& list_catalog();

const CatalogEntry* find_entry(const std::string& id);
const CatalogEntry& catalog_entry(const std::string& id);  // throws Error when unknown

// Closed-form forward quotient at (t, mu); classical-limit branch when
// mu <= mu_threshold(t). Validates parameters and domain (at t and t + mu).
double eval_delta(const std::string& id, const CatalogParams& p, double t, double mu);

// Function value / classical derivative with the same validation.
double eval_value(const std::string& id, const CatalogParams& p, double t);
double eval_classical(const std::string& id, const CatalogParams& p, double t);

// RealFunction view of an entry, for the derivative engine.
RealFunction entry_function(const CatalogEntry& e, const CatalogParams& p);

struct CrossCheck {
    double closed_form;
    double difference_quotient;
    double quadrature;
    double max_abs_gap;
};

// Evaluates the closed form, the forward quotient, and the integral
// representation at t with mu = mu(ts, t); reports the largest pairwise gap.
CrossCheck cross_check(const std::string& id, const CatalogParams& p, const TimeScale& ts, double t);

}  // namespace tscalc
