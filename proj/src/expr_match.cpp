#include <cmath>

#include "tscalc/expr.hpp"

namespace tscalc {

namespace {

bool is_const(const ExprPtr& e, double* v) {
    if (e->kind != ExprKind::Constant) return false;
    *v = e->number;
    return true;
}

bool is_var(const ExprPtr& e) { return e->kind == ExprKind::Var; }

// t^n with n >= 1 (plain t counts as n = 1)
bool var_power(const ExprPtr& e, int* n) {
    if (is_var(e)) {
        *n = 1;
        return true;
    }
    if (e->kind == ExprKind::PowInt && is_var(e->a) && e->exponent >= 1) {
        *n = e->exponent;
        return true;
    }
    return false;
}

// k*t with nonzero literal k (plain t counts as k = 1)
bool linear_var(const ExprPtr& e, double* k) {
    if (is_var(e)) {
        *k = 1.0;
        return true;
    }
    if (e->kind == ExprKind::Mul && e->a->kind == ExprKind::Constant && is_var(e->b)) {
        *k = e->a->number;
        return *k != 0.0;
    }
    return false;
}

// slope*t + cst; canonical sums put the constant first
bool affine_var(const ExprPtr& e, double* slope, double* cst) {
    if (linear_var(e, slope)) {
        *cst = 0.0;
        return true;
    }
    if (e->kind == ExprKind::Add && e->a->kind == ExprKind::Constant &&
        linear_var(e->b, slope)) {
        *cst = e->a->number;
        return true;
    }
    return false;
}

bool call_of(const ExprPtr& e, Fn f) { return e->kind == ExprKind::Call && e->fn == f; }

MatchResult hit(const char* id, double k, double c, int n) {
    MatchResult m;
    m.entry_id = id;
    m.params.k = k;
    m.params.c = c;
    m.params.n = n;
    return m;
}

}  // namespace

std::optional<MatchResult> match_catalog(const ExprPtr& g) {
    double k = 0.0, c = 0.0;
    int n = 1;

    if (is_const(g, &k)) return hit("B01", k, 0, 1);
    if (var_power(g, &n)) return hit("B02", 0, 0, n);
    if (g->kind == ExprKind::PowBase) return hit("B03", g->number, 0, 1);

    if (g->kind == ExprKind::PowInt && g->exponent >= 1 && g->a->kind == ExprKind::Add &&
        is_const(g->a->a, &k) && is_var(g->a->b))
        return hit("B04", k, 0, g->exponent);
    if (g->kind == ExprKind::Add && is_const(g->a, &k) && is_var(g->b))
        return hit("B04", k, 0, 1);

    if (g->kind == ExprKind::Call) {
        const ExprPtr& x = g->a;
        switch (g->fn) {
            case Fn::Sqrt:
                if (is_var(x)) return hit("R01", 0, 0, 1);
                if (var_power(x, &n)) return hit("R02", 0, 0, n);
                if (x->kind == ExprKind::Add && is_const(x->a, &k) && var_power(x->b, &n))
                    return hit("R02", k, 0, n);
                break;
            case Fn::Ln:
                if (var_power(x, &n)) return hit("L01", 0, 0, n);
                if (affine_var(x, &k, &c)) return hit("L02", k, c, 1);
                break;
            case Fn::Exp:
                if (linear_var(x, &k)) return hit("E01", k, 0, 1);
                break;
            case Fn::Sin:
                if (is_var(x)) return hit("T01", 0, 0, 1);
                break;
            case Fn::Cos:
                if (is_var(x)) return hit("T02", 0, 0, 1);
                break;
            case Fn::Sinh:
                if (linear_var(x, &k)) return hit("H01", k, 0, 1);
                break;
            case Fn::Cosh:
                if (linear_var(x, &k)) return hit("H02", k, 0, 1);
                break;
        }
        return std::nullopt;
    }

    if (g->kind == ExprKind::Mul) {
        const ExprPtr& a = g->a;
        const ExprPtr& b = g->b;
        if (var_power(a, &n) && call_of(b, Fn::Sqrt)) {
            double slope = 0.0, cst = 0.0;
            if (affine_var(b->a, &slope, &cst) && slope != 0.0)
                return hit("R03", cst, slope, n);
        }
        if (var_power(a, &n) && call_of(b, Fn::Exp) && linear_var(b->a, &k))
            return hit("E02", k, 0, n);
        if (is_var(a) && call_of(b, Fn::Sin) && linear_var(b->a, &k))
            return hit("TM01", k, 0, 1);
        if (is_var(a) && call_of(b, Fn::Cos) && linear_var(b->a, &k))
            return hit("TM02", k, 0, 1);
        if (call_of(a, Fn::Exp) && linear_var(a->a, &k)) {
            if (call_of(b, Fn::Sin) && linear_var(b->a, &c)) return hit("TE01", k, c, 1);
            if (call_of(b, Fn::Cos) && linear_var(b->a, &c)) return hit("TE02", k, c, 1);
        }
        if (call_of(a, Fn::Sinh) && call_of(b, Fn::Cosh)) {
            double kc = 0.0;
            if (linear_var(a->a, &k) && linear_var(b->a, &kc) && k == kc)
                return hit("H03", k, 0, 1);
        }
    }
    return std::nullopt;
}

namespace {

ExprPtr lin(double k) {
    if (k == 1.0) return make_var();
    return make_mul(make_constant(k), make_var());
}

ExprPtr aff(double slope, double cst) {
    if (cst == 0.0) return lin(slope);
    return make_add(make_constant(cst), lin(slope));
}

ExprPtr tpow(int n) {
    if (n == 1) return make_var();
    return make_pow_int(make_var(), n);
}

}  // namespace

ExprPtr instantiate(const std::string& entry_id, const CatalogParams& p) {
    ExprPtr raw;
    if (entry_id == "B01")
        raw = make_constant(p.k);
    else if (entry_id == "B02")
        raw = tpow(p.n);
    else if (entry_id == "B03")
        raw = make_pow_base(p.k);
    else if (entry_id == "B04")
        raw = p.n == 1 ? aff(1.0, p.k) : make_pow_int(aff(1.0, p.k), p.n);
    else if (entry_id == "R01")
        raw = make_call(Fn::Sqrt, make_var());
    else if (entry_id == "R02")
        raw = make_call(Fn::Sqrt, p.k == 0.0 ? tpow(p.n) : make_add(make_constant(p.k), tpow(p.n)));
    else if (entry_id == "R03")
        raw = make_mul(tpow(p.n), make_call(Fn::Sqrt, aff(p.c, p.k)));
    else if (entry_id == "L01")
        raw = make_call(Fn::Ln, tpow(p.n));
    else if (entry_id == "L02")
        raw = make_call(Fn::Ln, aff(p.k, p.c));
    else if (entry_id == "E01")
        raw = make_call(Fn::Exp, lin(p.k));
    else if (entry_id == "E02")
        raw = make_mul(tpow(p.n), make_call(Fn::Exp, lin(p.k)));
    else if (entry_id == "T01")
        raw = make_call(Fn::Sin, make_var());
    else if (entry_id == "T02")
        raw = make_call(Fn::Cos, make_var());
    else if (entry_id == "TM01")
        raw = make_mul(make_var(), make_call(Fn::Sin, lin(p.k)));
    else if (entry_id == "TM02")
        raw = make_mul(make_var(), make_call(Fn::Cos, lin(p.k)));
    else if (entry_id == "TE01")
        raw = make_mul(make_call(Fn::Exp, lin(p.k)), make_call(Fn::Sin, lin(p.c)));
    else if (entry_id == "TE02")
        raw = make_mul(make_call(Fn::Exp, lin(p.k)), make_call(Fn::Cos, lin(p.c)));
    else if (entry_id == "H01")
        raw = make_call(Fn::Sinh, lin(p.k));
    else if (entry_id == "H02")
        raw = make_call(Fn::Cosh, lin(p.k));
    else if (entry_id == "H03")
        raw = make_mul(make_call(Fn::Sinh, lin(p.k)), make_call(Fn::Cosh, lin(p.k)));
    else
        throw Error("unknown catalog id: " + entry_id);
    return canonicalize(raw);
}

DiffOutcome differentiate(const ExprPtr& e, const TimeScale& ts, double t) {
    const ExprPtr g = canonicalize(e);
    if (auto m = match_catalog(g)) {
        if (!ts.contains(t)) throw PointNotInScale(t, ts.describe());
        if (!ts.in_kappa(t))
            throw NotInKappa("delta derivative undefined at the left-scattered maximum");
        const double mu = ts.mu(t);
        DerivativeReport rep;
        rep.mu_used = mu;
        rep.value = eval_delta(m->entry_id, m->params, t, mu);
        if (mu > mu_threshold(t)) {
            rep.method = DerivMethod::DifferenceQuotient;
            rep.diagnostics = "closed form";
        } else {
            rep.method = DerivMethod::ClassicalLimit;
            rep.diagnostics = "closed form, limit branch";
        }
        return {rep, m->entry_id};
    }

    RealFunction f;
    f.value = [g](double x) { return evaluate(g, x); };
    try {
        const ExprPtr dg = classical_diff(g);
        f.classical_derivative = [dg](double x) { return evaluate(dg, x); };
    } catch (const Error&) {
        // no symbolic derivative; the engine falls back to central differences
    }
    return {delta_derivative(ts, f, t), "symbolic-fallback"};
}

}  // namespace tscalc
