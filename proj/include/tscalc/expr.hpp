#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tscalc/catalog.hpp"
#include "tscalc/derivative.hpp"

namespace tscalc {

inline constexpr std::size_t kMaxExprLength = 4096;
inline constexpr int kMaxExprDepth = 64;

enum class ExprKind { Constant, Var, Add, Sub, Mul, Div, PowInt, PowBase, Call };

enum class Fn { Sqrt, Ln, Exp, Sin, Cos, Sinh, Cosh };
const char* fn_name(Fn f);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression node over the single variable t. PowInt is x^n with a
// fixed integer exponent; PowBase is k^t for a positive literal base.
struct Expr {
    ExprKind kind;
    double number = 0.0;  // Constant value or PowBase base
    int exponent = 0;     // PowInt
    Fn fn = Fn::Sqrt;     // Call
    ExprPtr a, b;
};

ExprPtr make_constant(double v);
ExprPtr make_var();
ExprPtr make_add(ExprPtr x, ExprPtr y);
ExprPtr make_sub(ExprPtr x, ExprPtr y);
ExprPtr make_mul(ExprPtr x, ExprPtr y);
ExprPtr make_div(ExprPtr x, ExprPtr y);
ExprPtr make_pow_int(ExprPtr x, int n);
ExprPtr make_pow_base(double k);
ExprPtr make_call(Fn f, ExprPtr x);

// Grammar: + - * / ^ with the usual precedence (^ highest, right
// associative), unary minus, parenthesized calls sqrt/ln/exp/sin/cos/
// sinh/cosh, the variable t, decimal literals. Exponents must resolve to
// integers in [-60, 60], except a literal constant^t which becomes PowBase.
ExprPtr parse(const std::string& text);

// Folds constants, flattens and sorts Add/Mul chains (constants first),
// rewrites a-b as a + (-1)*b, collapses repeated factors into PowInt.
// Idempotent. Division by a folded zero raises DomainViolation.
ExprPtr canonicalize(const ExprPtr& e);

bool expr_equal(const ExprPtr& x, const ExprPtr& y);  // structural, exact constants
int expr_compare(const ExprPtr& x, const ExprPtr& y);
int expr_depth(const ExprPtr& e);

double evaluate(const ExprPtr& e, double t);

// Symbolic derivative with respect to t; result canonical.
ExprPtr classical_diff(const ExprPtr& e);

std::string format(const ExprPtr& e);
std::string format_number(double v);  // shortest round-trip decimal

struct MatchResult {
    std::string entry_id;
    CatalogParams params;
};

// Structural match of a canonical expression against the twenty table
// shapes, in table priority order.
std::optional<MatchResult> match_catalog(const ExprPtr& e);

// The entry's shape with the given parameters substituted, canonical.
ExprPtr instantiate(const std::string& entry_id, const CatalogParams& p);

struct DiffOutcome {
    DerivativeReport report;
    std::string provenance;  // a table id, or "symbolic-fallback"
};

// Table hit: closed-form evaluation at mu(ts, t). Otherwise the engine's
// quotient with the symbolic classical derivative backing the dense branch.
DiffOutcome differentiate(const ExprPtr& e, const TimeScale& ts, double t);

}  // namespace tscalc
