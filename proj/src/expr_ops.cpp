#include <algorithm>
#include <charconv>
#include <cmath>

#include "tscalc/expr.hpp"
#include "tscalc/stable.hpp"

namespace tscalc {

namespace {

int kind_rank(ExprKind k) {
    switch (k) {
        case ExprKind::Constant: return 0;
        case ExprKind::Var: return 1;
        case ExprKind::PowInt: return 2;
        case ExprKind::PowBase: return 3;
        case ExprKind::Call: return 4;
        case ExprKind::Add: return 5;
        case ExprKind::Sub: return 6;
        case ExprKind::Mul: return 7;
        case ExprKind::Div: return 8;
    }
    return 9;
}

int cmp_double(double x, double y) { return x < y ? -1 : (x > y ? 1 : 0); }

}  // namespace

int expr_compare(const ExprPtr& x, const ExprPtr& y) {
    if (x == y) return 0;
    const int rx = kind_rank(x->kind), ry = kind_rank(y->kind);
    if (rx != ry) return rx < ry ? -1 : 1;
    switch (x->kind) {
        case ExprKind::Constant: return cmp_double(x->number, y->number);
        case ExprKind::Var: return 0;
        case ExprKind::PowInt: {
            const int c = expr_compare(x->a, y->a);
            if (c) return c;
            return x->exponent < y->exponent ? -1 : (x->exponent > y->exponent ? 1 : 0);
        }
        case ExprKind::PowBase: return cmp_double(x->number, y->number);
        case ExprKind::Call: {
            if (x->fn != y->fn) return static_cast<int>(x->fn) < static_cast<int>(y->fn) ? -1 : 1;
            return expr_compare(x->a, y->a);
        }
        default: {
            const int c = expr_compare(x->a, y->a);
            if (c) return c;
            return expr_compare(x->b, y->b);
        }
    }
}

bool expr_equal(const ExprPtr& x, const ExprPtr& y) { return expr_compare(x, y) == 0; }

int expr_depth(const ExprPtr& e) {
    if (!e) return 0;
    int d = 0;
    if (e->a) d = expr_depth(e->a);
    if (e->b) d = std::max(d, expr_depth(e->b));
    return d + 1;
}

double evaluate(const ExprPtr& e, double t) {
    switch (e->kind) {
        case ExprKind::Constant: return e->number;
        case ExprKind::Var: return t;
        case ExprKind::Add: return evaluate(e->a, t) + evaluate(e->b, t);
        case ExprKind::Sub: return evaluate(e->a, t) - evaluate(e->b, t);
        case ExprKind::Mul: return evaluate(e->a, t) * evaluate(e->b, t);
        case ExprKind::Div: return evaluate(e->a, t) / evaluate(e->b, t);
        case ExprKind::PowInt: return ipow(evaluate(e->a, t), e->exponent);
        case ExprKind::PowBase: return std::pow(e->number, t);
        case ExprKind::Call: {
            const double x = evaluate(e->a, t);
            switch (e->fn) {
                case Fn::Sqrt: return std::sqrt(x);
                case Fn::Ln: return std::log(x);
                case Fn::Exp: return std::exp(x);
                case Fn::Sin: return std::sin(x);
                case Fn::Cos: return std::cos(x);
                case Fn::Sinh: return std::sinh(x);
                case Fn::Cosh: return std::cosh(x);
            }
            return 0.0;
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

double clean_zero(double v) { return v == 0.0 ? 0.0 : v; }

void flatten(ExprKind k, const ExprPtr& e, std::vector<ExprPtr>& out) {
    if (e->kind == k) {
        flatten(k, e->a, out);
        flatten(k, e->b, out);
    } else {
        out.push_back(e);
    }
}

// A canonical term negated, staying canonical.
ExprPtr negate(const ExprPtr& e);

ExprPtr rebuild_chain(ExprKind k, double cst, bool keep_cst, std::vector<ExprPtr> parts) {
    if (parts.empty()) return make_constant(clean_zero(cst));
    ExprPtr acc;
    std::size_t i = 0;
    if (keep_cst) {
        acc = make_constant(clean_zero(cst));
    } else {
        acc = parts[0];
        i = 1;
    }
    for (; i < parts.size(); ++i)
        acc = k == ExprKind::Add ? make_add(acc, parts[i]) : make_mul(acc, parts[i]);
    return acc;
}

ExprPtr canon_pow(ExprPtr base, long long n) {
    if (n == 0) return make_constant(1.0);
    if (n == 1) return base;
    if (std::abs(n) > kMaxIntPow) return nullptr;  // caller keeps factors apart
    if (base->kind == ExprKind::Constant) {
        const double v = ipow(base->number, static_cast<int>(n));
        if (!std::isfinite(v)) throw DomainViolation("constant power is not finite");
        return make_constant(clean_zero(v));
    }
    if (base->kind == ExprKind::PowInt) {
        ExprPtr inner = canon_pow(base->a, n * base->exponent);
        if (inner) return inner;
    }
    return make_pow_int(std::move(base), static_cast<int>(n));
}

ExprPtr fold_call(Fn fn, double x) {
    double v = 0.0;
    switch (fn) {
        case Fn::Sqrt: v = std::sqrt(x); break;
        case Fn::Ln: v = std::log(x); break;
        case Fn::Exp: v = std::exp(x); break;
        case Fn::Sin: v = std::sin(x); break;
        case Fn::Cos: v = std::cos(x); break;
        case Fn::Sinh: v = std::sinh(x); break;
        case Fn::Cosh: v = std::cosh(x); break;
    }
    if (!std::isfinite(v))
        throw DomainViolation(std::string(fn_name(fn)) + " of constant " + format_number(x) +
                              " is undefined");
    return make_constant(clean_zero(v));
}

ExprPtr canon(const ExprPtr& e);

ExprPtr canon_add_terms(std::vector<ExprPtr> raw) {
    double cst = 0.0;
    std::vector<ExprPtr> terms;
    for (auto& p : raw) {
        if (p->kind == ExprKind::Constant)
            cst += p->number;
        else
            terms.push_back(std::move(p));
    }
    if (!std::isfinite(cst)) throw DomainViolation("constant sum is not finite");
    std::stable_sort(terms.begin(), terms.end(),
                     [](const ExprPtr& x, const ExprPtr& y) { return expr_compare(x, y) < 0; });
    return rebuild_chain(ExprKind::Add, cst, cst != 0.0, std::move(terms));
}

ExprPtr canon_mul_factors(std::vector<ExprPtr> raw) {
    double cst = 1.0;
    std::vector<ExprPtr> factors;
    for (auto& p : raw) {
        if (p->kind == ExprKind::Constant)
            cst *= p->number;
        else
            factors.push_back(std::move(p));
    }
    if (!std::isfinite(cst)) throw DomainViolation("constant product is not finite");
    if (cst == 0.0) return make_constant(0.0);

    // Merge repeated bases into integer powers.
    struct BasePow {
        ExprPtr base;
        long long exp;
    };
    std::vector<BasePow> grouped;
    for (auto& f : factors) {
        ExprPtr base = f;
        long long exp = 1;
        if (f->kind == ExprKind::PowInt) {
            base = f->a;
            exp = f->exponent;
        }
        bool merged = false;
        for (auto& g : grouped)
            if (expr_equal(g.base, base)) {
                g.exp += exp;
                merged = true;
                break;
            }
        if (!merged) grouped.push_back({std::move(base), exp});
    }
    std::vector<ExprPtr> rebuilt;
    for (auto& g : grouped) {
        ExprPtr f = canon_pow(g.base, g.exp);
        if (!f) {
            // exponent out of range: keep the base twice rather than overflow
            rebuilt.push_back(make_pow_int(g.base, static_cast<int>(g.exp / 2)));
            rebuilt.push_back(make_pow_int(g.base, static_cast<int>(g.exp - g.exp / 2)));
            continue;
        }
        if (f->kind == ExprKind::Constant) {
            cst *= f->number;
            continue;
        }
        rebuilt.push_back(std::move(f));
    }
    if (!std::isfinite(cst)) throw DomainViolation("constant product is not finite");
    if (cst == 0.0) return make_constant(0.0);
    std::stable_sort(rebuilt.begin(), rebuilt.end(),
                     [](const ExprPtr& x, const ExprPtr& y) { return expr_compare(x, y) < 0; });
    return rebuild_chain(ExprKind::Mul, cst, cst != 1.0, std::move(rebuilt));
}

ExprPtr negate(const ExprPtr& e) {
    if (e->kind == ExprKind::Constant) return make_constant(clean_zero(-e->number));
    std::vector<ExprPtr> raw;
    flatten(ExprKind::Mul, e, raw);
    raw.push_back(make_constant(-1.0));
    return canon_mul_factors(std::move(raw));
}

ExprPtr canon(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Constant:
            if (!std::isfinite(e->number)) throw DomainViolation("constant is not finite");
            return make_constant(clean_zero(e->number));
        case ExprKind::Var:
            return e;
        case ExprKind::PowBase:
            if (e->number == 1.0) return make_constant(1.0);
            return e;
        case ExprKind::Call: {
            ExprPtr x = canon(e->a);
            if (x->kind == ExprKind::Constant) return fold_call(e->fn, x->number);
            return make_call(e->fn, std::move(x));
        }
        case ExprKind::Add:
        case ExprKind::Sub: {
            std::vector<ExprPtr> raw;
            flatten(ExprKind::Add, canon(e->a), raw);
            ExprPtr rhs = canon(e->b);
            if (e->kind == ExprKind::Sub) rhs = negate(rhs);
            flatten(ExprKind::Add, rhs, raw);
            return canon_add_terms(std::move(raw));
        }
        case ExprKind::Mul: {
            std::vector<ExprPtr> raw;
            flatten(ExprKind::Mul, canon(e->a), raw);
            flatten(ExprKind::Mul, canon(e->b), raw);
            return canon_mul_factors(std::move(raw));
        }
        case ExprKind::Div: {
            ExprPtr num = canon(e->a);
            ExprPtr den = canon(e->b);
            if (den->kind == ExprKind::Constant) {
                if (den->number == 0.0) throw DomainViolation("division by zero");
                if (num->kind == ExprKind::Constant)
                    return make_constant(clean_zero(num->number / den->number));
                std::vector<ExprPtr> raw;
                flatten(ExprKind::Mul, num, raw);
                raw.push_back(make_constant(1.0 / den->number));
                return canon_mul_factors(std::move(raw));
            }
            if (num->kind == ExprKind::Constant && num->number == 0.0) return make_constant(0.0);

            // Constant coefficients hoist out of the quotient, so a leading
            // minus always sits on a Mul around the Div and the rendering
            // "-a/b" reparses to the same tree.
            std::vector<ExprPtr> nf, df, nparts, dparts;
            flatten(ExprKind::Mul, num, nf);
            flatten(ExprKind::Mul, den, df);
            double cn = 1.0, cd = 1.0;
            for (auto& p : nf)
                p->kind == ExprKind::Constant ? void(cn *= p->number) : nparts.push_back(p);
            for (auto& p : df)
                p->kind == ExprKind::Constant ? void(cd *= p->number) : dparts.push_back(p);
            const double coef = cn / cd;
            if (!std::isfinite(coef)) throw DomainViolation("constant quotient is not finite");
            ExprPtr dcore = rebuild_chain(ExprKind::Mul, 1.0, false, std::move(dparts));
            if (nparts.empty()) {
                if (coef == 0.0) return make_constant(0.0);
                if (coef > 0.0) return make_div(make_constant(coef), std::move(dcore));
                return make_mul(make_constant(-1.0),
                                make_div(make_constant(-coef), std::move(dcore)));
            }
            ExprPtr core = make_div(rebuild_chain(ExprKind::Mul, 1.0, false, std::move(nparts)),
                                    std::move(dcore));
            if (coef == 1.0) return core;
            return make_mul(make_constant(clean_zero(coef)), std::move(core));
        }
        case ExprKind::PowInt: {
            ExprPtr f = canon_pow(canon(e->a), e->exponent);
            return f ? f : make_pow_int(canon(e->a), e->exponent);
        }
    }
    return e;
}

}  // namespace

ExprPtr canonicalize(const ExprPtr& e) { return canon(e); }

// ---------------------------------------------------------------------------
// Symbolic derivative

namespace {

ExprPtr d(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Constant: return make_constant(0.0);
        case ExprKind::Var: return make_constant(1.0);
        case ExprKind::Add: return make_add(d(e->a), d(e->b));
        case ExprKind::Sub: return make_sub(d(e->a), d(e->b));
        case ExprKind::Mul:
            return make_add(make_mul(d(e->a), e->b), make_mul(e->a, d(e->b)));
        case ExprKind::Div:
            return make_div(make_sub(make_mul(d(e->a), e->b), make_mul(e->a, d(e->b))),
                            make_pow_int(e->b, 2));
        case ExprKind::PowInt:
            return make_mul(make_mul(make_constant(e->exponent), make_pow_int(e->a, e->exponent - 1)),
                            d(e->a));
        case ExprKind::PowBase:
            return make_mul(make_constant(std::log(e->number)), make_pow_base(e->number));
        case ExprKind::Call: {
            ExprPtr dx = d(e->a);
            switch (e->fn) {
                case Fn::Sqrt:
                    return make_div(dx, make_mul(make_constant(2.0), make_call(Fn::Sqrt, e->a)));
                case Fn::Ln: return make_div(dx, e->a);
                case Fn::Exp: return make_mul(make_call(Fn::Exp, e->a), dx);
                case Fn::Sin: return make_mul(make_call(Fn::Cos, e->a), dx);
                case Fn::Cos:
                    return make_mul(make_constant(-1.0), make_mul(make_call(Fn::Sin, e->a), dx));
                case Fn::Sinh: return make_mul(make_call(Fn::Cosh, e->a), dx);
                case Fn::Cosh: return make_mul(make_call(Fn::Sinh, e->a), dx);
            }
            break;
        }
    }
    throw UnsupportedNode("cannot differentiate this node");
}

}  // namespace

ExprPtr classical_diff(const ExprPtr& e) { return canonicalize(d(e)); }

// ---------------------------------------------------------------------------
// Rendering

std::string format_number(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

int prec(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::PowInt:
        case ExprKind::PowBase: return 4;
        default: return 5;
    }
}

std::string fmt(const ExprPtr& e);

std::string wrap(const ExprPtr& e, int min_prec) {
    std::string s = fmt(e);
    if (prec(e) < min_prec) return "(" + s + ")";
    return s;
}

// Splits off a leading negative sign from a canonical term, so sums can be
// rendered with " - ".
bool negative_term(const ExprPtr& e, ExprPtr* positive) {
    if (e->kind == ExprKind::Constant && e->number < 0.0) {
        *positive = make_constant(-e->number);
        return true;
    }
    if (e->kind == ExprKind::Mul) {
        std::vector<ExprPtr> raw;
        flatten(ExprKind::Mul, e, raw);
        if (raw.front()->kind == ExprKind::Constant && raw.front()->number < 0.0) {
            raw.front() = make_constant(-raw.front()->number);
            *positive = canon_mul_factors(std::move(raw));
            return true;
        }
    }
    return false;
}

std::string fmt(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Constant: return format_number(e->number);
        case ExprKind::Var: return "t";
        case ExprKind::Add: {
            ExprPtr pos;
            if (negative_term(e->b, &pos)) return wrap(e->a, 1) + " - " + wrap(pos, 2);
            return wrap(e->a, 1) + " + " + wrap(e->b, 2);
        }
        case ExprKind::Sub: return wrap(e->a, 1) + " - " + wrap(e->b, 2);
        case ExprKind::Mul: {
            if (e->a->kind == ExprKind::Constant && e->a->number == -1.0) return "-" + wrap(e->b, 2);
            return wrap(e->a, 2) + "*" + wrap(e->b, 3);
        }
        case ExprKind::Div: return wrap(e->a, 2) + "/" + wrap(e->b, 3);
        case ExprKind::PowInt: {
            std::string base = fmt(e->a);
            if (prec(e->a) < 5 || (e->a->kind == ExprKind::Constant && e->a->number < 0.0))
                base = "(" + base + ")";
            return base + "^" + std::to_string(e->exponent);
        }
        case ExprKind::PowBase: return format_number(e->number) + "^t";
        case ExprKind::Call: return std::string(fn_name(e->fn)) + "(" + fmt(e->a) + ")";
    }
    return "?";
}

}  // namespace

std::string format(const ExprPtr& e) { return fmt(e); }

}  // namespace tscalc
