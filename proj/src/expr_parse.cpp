#include <cctype>
#include <charconv>
#include <cmath>

#include "tscalc/expr.hpp"
#include "tscalc/stable.hpp"

namespace tscalc {

const char* fn_name(Fn f) {
    switch (f) {
        case Fn::Sqrt: return "sqrt";
        case Fn::Ln: return "ln";
        case Fn::Exp: return "exp";
        case Fn::Sin: return "sin";
        case Fn::Cos: return "cos";
        case Fn::Sinh: return "sinh";
        case Fn::Cosh: return "cosh";
    }
    return "?";
}

ExprPtr make_constant(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Constant;
    e->number = v;
    return e;
}

ExprPtr make_var() {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Var;
    return e;
}

namespace {

ExprPtr binary(ExprKind k, ExprPtr x, ExprPtr y) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(x);
    e->b = std::move(y);
    return e;
}

}  // namespace

ExprPtr make_add(ExprPtr x, ExprPtr y) { return binary(ExprKind::Add, std::move(x), std::move(y)); }
ExprPtr make_sub(ExprPtr x, ExprPtr y) { return binary(ExprKind::Sub, std::move(x), std::move(y)); }
ExprPtr make_mul(ExprPtr x, ExprPtr y) { return binary(ExprKind::Mul, std::move(x), std::move(y)); }
ExprPtr make_div(ExprPtr x, ExprPtr y) { return binary(ExprKind::Div, std::move(x), std::move(y)); }

ExprPtr make_pow_int(ExprPtr x, int n) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::PowInt;
    e->exponent = n;
    e->a = std::move(x);
    return e;
}

ExprPtr make_pow_base(double k) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::PowBase;
    e->number = k;
    return e;
}

ExprPtr make_call(Fn f, ExprPtr x) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Call;
    e->fn = f;
    e->a = std::move(x);
    return e;
}

// ---------------------------------------------------------------------------

namespace {

enum class Tok { Number, Var, FnName, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t offset;
    double number = 0.0;
    Fn fn = Fn::Sqrt;
};

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;

    Token next() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        const std::size_t at = pos;
        if (pos >= text.size()) return {Tok::End, at};
        const char ch = text[pos];
        switch (ch) {
            case '+': ++pos; return {Tok::Plus, at};
            case '-': ++pos; return {Tok::Minus, at};
            case '*': ++pos; return {Tok::Star, at};
            case '/': ++pos; return {Tok::Slash, at};
            case '^': ++pos; return {Tok::Caret, at};
            case '(': ++pos; return {Tok::LParen, at};
            case ')': ++pos; return {Tok::RParen, at};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) return lex_number(at);
        if (std::isalpha(static_cast<unsigned char>(ch))) return lex_word(at);
        throw SyntaxError(at, {}, std::string("unexpected character '") + ch + "'");
    }

    Token lex_number(std::size_t at) {
        std::size_t end = pos;
        auto digits = [&] {
            const std::size_t start = end;
            while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
            return end > start;
        };
        digits();
        if (end < text.size() && text[end] == '.') {
            ++end;
            if (!digits()) throw SyntaxError(end, {"digit"}, "missing digits after decimal point");
        }
        if (end < text.size() && (text[end] == 'e' || text[end] == 'E')) {
            ++end;
            if (end < text.size() && (text[end] == '+' || text[end] == '-')) ++end;
            if (!digits()) throw SyntaxError(end, {"digit"}, "missing digits in exponent");
        }
        double value = 0.0;
        auto res = std::from_chars(text.data() + at, text.data() + end, value);
        if (res.ec != std::errc{} || !std::isfinite(value))
            throw SyntaxError(at, {}, "numeric literal out of range");
        pos = end;
        return {Tok::Number, at, value};
    }

    Token lex_word(std::size_t at) {
        std::size_t end = pos;
        while (end < text.size() && std::isalpha(static_cast<unsigned char>(text[end]))) ++end;
        const std::string word = text.substr(at, end - at);
        pos = end;
        if (word == "t") return {Tok::Var, at};
        static const std::pair<const char*, Fn> fns[] = {
            {"sqrt", Fn::Sqrt}, {"ln", Fn::Ln},     {"exp", Fn::Exp},  {"sin", Fn::Sin},
            {"cos", Fn::Cos},   {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh}};
        for (const auto& [name, fn] : fns)
            if (word == name) {
                Token tok{Tok::FnName, at};
                tok.fn = fn;
                return tok;
            }
        throw SyntaxError(at, {"t", "function name"}, "unknown identifier '" + word + "'");
    }
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_{text} { advance(); }

    ExprPtr run() {
        ExprPtr e = expression(0);
        if (cur_.kind != Tok::End)
            throw SyntaxError(cur_.offset, {"operator", "end of input"}, "trailing input");
        return e;
    }

private:
    Lexer lex_;
    Token cur_{Tok::End, 0};

    void advance() { cur_ = lex_.next(); }

    // Source nesting bound; the depth-64 invariant is checked on the built
    // tree, where plain parentheses do not count.
    void guard_depth(int depth) {
        if (depth > 512) throw DepthExceeded("expression nests too deeply to parse");
    }

    ExprPtr expression(int depth) {
        guard_depth(depth);
        ExprPtr e = term(depth);
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            const bool plus = cur_.kind == Tok::Plus;
            advance();
            ExprPtr rhs = term(depth);
            e = plus ? make_add(e, rhs) : make_sub(e, rhs);
        }
        return e;
    }

    ExprPtr term(int depth) {
        ExprPtr e = unary(depth);
        while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
            const bool star = cur_.kind == Tok::Star;
            advance();
            ExprPtr rhs = unary(depth);
            e = star ? make_mul(e, rhs) : make_div(e, rhs);
        }
        return e;
    }

    ExprPtr unary(int depth) {
        if (cur_.kind == Tok::Minus) {
            advance();
            return make_mul(make_constant(-1.0), unary(depth));
        }
        return power(depth);
    }

    ExprPtr power(int depth) {
        ExprPtr base = atom(depth);
        if (cur_.kind != Tok::Caret) return base;
        const std::size_t caret_at = cur_.offset;
        advance();
        ExprPtr exp = unary(depth);  // right associative
        return resolve_power(base, exp, caret_at);
    }

    // The grammar keeps ^ total by restricting exponents: an integer constant
    // in [-60, 60], or the bare variable over a positive constant base (k^t).
    ExprPtr resolve_power(const ExprPtr& base, const ExprPtr& exp, std::size_t at) {
        ExprPtr cexp = canonicalize(exp);
        if (cexp->kind == ExprKind::Constant) {
            const double v = cexp->number;
            if (v != std::floor(v) || std::abs(v) > kMaxIntPow)
                throw SyntaxError(at, {"integer exponent"},
                                  "exponent must be an integer with magnitude at most " +
                                      std::to_string(kMaxIntPow));
            return make_pow_int(base, static_cast<int>(v));
        }
        if (cexp->kind == ExprKind::Var) {
            ExprPtr cbase = canonicalize(base);
            if (cbase->kind == ExprKind::Constant && cbase->number > 0.0)
                return make_pow_base(cbase->number);
            throw SyntaxError(at, {"positive constant base"},
                              "a variable exponent requires a positive constant base");
        }
        throw SyntaxError(at, {"integer exponent", "t"},
                          "exponent must be an integer constant or the bare variable");
    }

    ExprPtr atom(int depth) {
        switch (cur_.kind) {
            case Tok::Number: {
                ExprPtr e = make_constant(cur_.number);
                advance();
                return e;
            }
            case Tok::Var: {
                advance();
                return make_var();
            }
            case Tok::FnName: {
                const Fn fn = cur_.fn;
                advance();
                if (cur_.kind != Tok::LParen)
                    throw SyntaxError(cur_.offset, {"("},
                                      std::string("call of ") + fn_name(fn) +
                                          " requires parentheses");
                advance();
                ExprPtr arg = expression(depth + 1);
                expect_rparen();
                return make_call(fn, arg);
            }
            case Tok::LParen: {
                advance();
                ExprPtr e = expression(depth + 1);
                expect_rparen();
                return e;
            }
            default:
                throw SyntaxError(cur_.offset, {"number", "t", "function name", "(", "-"},
                                  "expected an operand");
        }
    }

    void expect_rparen() {
        if (cur_.kind != Tok::RParen)
            throw SyntaxError(cur_.offset, {")"}, "unbalanced parentheses");
        advance();
    }
};

}  // namespace

ExprPtr parse(const std::string& text) {
    if (text.empty()) throw SyntaxError(0, {"expression"}, "empty input");
    if (text.size() > kMaxExprLength)
        throw SyntaxError(kMaxExprLength, {},
                          "input longer than " + std::to_string(kMaxExprLength) + " bytes");
    Parser p(text);
    ExprPtr e = p.run();
    if (expr_depth(e) > kMaxExprDepth)
        throw DepthExceeded("expression tree deeper than " + std::to_string(kMaxExprDepth) +
                            " levels");
    return e;
}

}  // namespace tscalc
