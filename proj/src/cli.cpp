#include "tscalc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "tscalc/derivative.hpp"
#include "tscalc/expr.hpp"
#include "tscalc/special.hpp"

namespace tscalc {

namespace {

using Json = nlohmann::ordered_json;

std::string num17(double v) {
    char b[40];
    std::snprintf(b, sizeof(b), "%.17g", v);
    return b;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += "\"\"";
        else q += ch;
    }
    q += '"';
    return q;
}

std::string cell(const Json& rec, const std::string& key) {
    auto it = rec.find(key);
    if (it == rec.end()) return "";
    if (it->is_number()) return num17(it->get<double>());
    if (it->is_boolean()) return it->get<bool>() ? "true" : "false";
    if (it->is_string()) return it->get<std::string>();
    return it->dump();
}

// One record per line in every format: a JSON object, a CSV row over the
// fixed column set, or key=value pairs.
class Renderer {
public:
    Renderer(OutFormat fmt, std::vector<std::string> cols, std::ostream& out)
        : fmt_(fmt), cols_(std::move(cols)), out_(out) {
        if (fmt_ == OutFormat::Csv) {
            for (std::size_t i = 0; i < cols_.size(); ++i) out_ << (i ? "," : "") << cols_[i];
            out_ << '\n';
        }
    }

    void emit(const Json& rec) {
        switch (fmt_) {
            case OutFormat::Json: out_ << rec.dump() << '\n'; return;
            case OutFormat::Csv:
                for (std::size_t i = 0; i < cols_.size(); ++i)
                    out_ << (i ? "," : "") << csv_escape(cell(rec, cols_[i]));
                out_ << '\n';
                return;
            case OutFormat::Human: {
                bool first = true;
                for (const auto& c : cols_) {
                    if (c == "scale" || c == "expr") continue;
                    const std::string v = cell(rec, c);
                    if (v.empty()) continue;
                    out_ << (first ? "" : " ") << c << '=' << v;
                    first = false;
                }
                if (rec.contains("error"))
                    out_ << (first ? "" : " ") << "error=\"" << rec["error"].get<std::string>()
                         << '"';
                out_ << '\n';
                return;
            }
        }
    }

private:
    OutFormat fmt_;
    std::vector<std::string> cols_;
    std::ostream& out_;
};

void mark_error(Json& rec, std::initializer_list<const char*> fields, const std::string& msg) {
    for (const char* f : fields) rec[f] = "error";
    rec["error"] = msg;
}

struct Rows {
    std::vector<Json> recs;
    bool bad = false;
};

template <typename Work>
std::vector<Rows> over_points(const std::vector<double>& pts, bool parallel, Work work) {
    std::vector<Rows> out(pts.size());
    if (parallel && pts.size() > 1) {
        std::vector<std::future<Rows>> futs;
        futs.reserve(pts.size());
        for (double t : pts) futs.push_back(std::async(std::launch::async, work, t));
        for (std::size_t i = 0; i < futs.size(); ++i) out[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < pts.size(); ++i) out[i] = work(pts[i]);
    }
    return out;
}

Json sentinel_or_number(double v) {
    if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
    return Json(v);
}

struct Parsed {
    ExprPtr canonical;
    RealFunction fn;
    std::optional<MatchResult> match;
};

Parsed prepare(const std::string& expr_text) {
    Parsed p;
    p.canonical = canonicalize(parse(expr_text));
    const ExprPtr g = p.canonical;
    p.fn.value = [g](double x) { return evaluate(g, x); };
    try {
        const ExprPtr dg = classical_diff(g);
        p.fn.classical_derivative = [dg](double x) { return evaluate(dg, x); };
    } catch (const Error&) {
        // engine falls back to central differences
    }
    p.match = match_catalog(p.canonical);
    return p;
}

}  // namespace

int cmd_scale(const TimeScale& ts, const std::string& scale_echo,
              const std::vector<double>& points, OutFormat fmt, std::ostream& out) {
    if (points.empty()) {
        Renderer r(fmt, {"scale", "description", "infimum", "supremum"}, out);
        Json rec;
        rec["command"] = "scale";
        rec["scale"] = scale_echo;
        rec["description"] = ts.describe();
        rec["infimum"] = sentinel_or_number(ts.infimum());
        rec["supremum"] = sentinel_or_number(ts.supremum());
        r.emit(rec);
        return 0;
    }
    Renderer r(fmt, {"scale", "t", "sigma", "rho", "mu", "nu", "class", "in_kappa"}, out);
    bool bad = false;
    for (double t : points) {
        Json rec;
        rec["command"] = "scale";
        rec["scale"] = scale_echo;
        rec["t"] = t;
        try {
            rec["sigma"] = ts.sigma(t);
            rec["rho"] = ts.rho(t);
            rec["mu"] = ts.mu(t);
            rec["nu"] = ts.nu(t);
            rec["class"] = ts.classify(t).label();
            rec["in_kappa"] = ts.in_kappa(t);
        } catch (const Error& e) {
            mark_error(rec, {"sigma", "rho", "mu", "nu", "class", "in_kappa"}, e.what());
            bad = true;
        }
        r.emit(rec);
    }
    return bad ? 1 : 0;
}

int cmd_diff(const TimeScale& ts, const std::string& scale_echo, const std::string& expr_text,
             const std::vector<double>& points, bool nabla, const std::string& method, double tol,
             bool parallel, OutFormat fmt, std::ostream& out) {
    const Parsed p = prepare(expr_text);
    const std::string mode = method.empty() ? (nabla ? "quotient" : "auto") : method;
    if (nabla && mode != "quotient")
        throw Error("nabla derivatives support method=quotient only");

    auto work = [&](double t) -> Rows {
        Json rec;
        rec["command"] = "diff";
        rec["scale"] = scale_echo;
        rec["expr"] = expr_text;
        if (nabla) rec["nabla"] = true;
        rec["t"] = t;
        bool bad = false;
        try {
            if (nabla) {
                const DerivativeReport rep = nabla_derivative(ts, p.fn, t);
                rec["value"] = rep.value;
                rec["method"] = method_name(rep.method);
                rec["mu"] = rep.mu_used;
                rec["provenance"] = "symbolic-fallback";
                rec["diagnostics"] = rep.diagnostics;
            } else if (mode == "quotient") {
                const DiffOutcome o = differentiate(p.canonical, ts, t);
                rec["value"] = o.report.value;
                rec["method"] = method_name(o.report.method);
                rec["mu"] = o.report.mu_used;
                rec["provenance"] = o.provenance;
                rec["diagnostics"] = o.report.diagnostics;
            } else if (mode == "quadrature") {
                const DerivativeReport rep = delta_derivative_quadrature(ts, p.fn, t, tol);
                rec["value"] = rep.value;
                rec["method"] = method_name(rep.method);
                rec["mu"] = rep.mu_used;
                rec["provenance"] = p.match ? p.match->entry_id : "symbolic-fallback";
                rec["diagnostics"] = rep.diagnostics;
            } else {
                const DiffOutcome o = differentiate(p.canonical, ts, t);
                const double qtol = 1e-10 * std::max(1.0, std::abs(o.report.value));
                const DerivativeReport rq = delta_derivative_quadrature(ts, p.fn, t, qtol);
                rec["value"] = o.report.value;
                rec["method"] = method_name(o.report.method);
                rec["mu"] = o.report.mu_used;
                rec["provenance"] = o.provenance;
                rec["quadrature"] = rq.value;
                const double gap = std::abs(o.report.value - rq.value);
                rec["gap"] = gap;
                if (gap > tol * std::max(1.0, std::abs(o.report.value))) {
                    rec["breach"] = true;
                    bad = true;
                }
            }
        } catch (const Error& e) {
            mark_error(rec, {"value", "method", "mu", "provenance", "gap"}, e.what());
            bad = true;
        }
        return {{rec}, bad};
    };

    Renderer r(fmt, {"scale", "expr", "t", "value", "method", "mu", "provenance", "gap"}, out);
    bool bad = false;
    for (const Rows& rows : over_points(points, parallel, work)) {
        bad = bad || rows.bad;
        for (const Json& rec : rows.recs) r.emit(rec);
    }
    return bad ? 1 : 0;
}

int cmd_oracle(const TimeScale& ts, const std::string& scale_echo, const std::string& expr_text,
               const std::vector<double>& points, double tol, bool parallel, OutFormat fmt,
               std::ostream& out) {
    const Parsed p = prepare(expr_text);

    auto work = [&](double t) -> Rows {
        Json rec;
        rec["command"] = "oracle";
        rec["scale"] = scale_echo;
        rec["expr"] = expr_text;
        rec["t"] = t;
        bool bad = false;
        try {
            if (p.match) {
                const CrossCheck cc = cross_check(p.match->entry_id, p.match->params, ts, t);
                rec["closed_form"] = cc.closed_form;
                rec["difference_quotient"] = cc.difference_quotient;
                rec["quadrature"] = cc.quadrature;
                rec["max_abs_gap"] = cc.max_abs_gap;
                rec["provenance"] = p.match->entry_id;
                if (cc.max_abs_gap > tol * std::max(1.0, std::abs(cc.difference_quotient))) {
                    rec["breach"] = true;
                    bad = true;
                }
            } else {
                const DerivativeReport rd = delta_derivative(ts, p.fn, t);
                const double qtol = 1e-10 * std::max(1.0, std::abs(rd.value));
                const DerivativeReport rq = delta_derivative_quadrature(ts, p.fn, t, qtol);
                rec["difference_quotient"] = rd.value;
                rec["quadrature"] = rq.value;
                const double gap = std::abs(rd.value - rq.value);
                rec["max_abs_gap"] = gap;
                rec["provenance"] = "symbolic-fallback";
                if (gap > tol * std::max(1.0, std::abs(rd.value))) {
                    rec["breach"] = true;
                    bad = true;
                }
            }
        } catch (const Error& e) {
            mark_error(rec,
                       {"closed_form", "difference_quotient", "quadrature", "max_abs_gap"},
                       e.what());
            bad = true;
        }
        return {{rec}, bad};
    };

    Renderer r(fmt,
               {"scale", "expr", "t", "closed_form", "difference_quotient", "quadrature",
                "max_abs_gap", "provenance"},
               out);
    bool bad = false;
    for (const Rows& rows : over_points(points, parallel, work)) {
        bad = bad || rows.bad;
        for (const Json& rec : rows.recs) r.emit(rec);
    }
    return bad ? 1 : 0;
}

int cmd_integrate(const TimeScale& ts, const std::string& scale_echo,
                  const std::string& expr_text, double a, double b, double max_step, double tol,
                  bool check_ftc, OutFormat fmt, std::ostream& out) {
    const Parsed p = prepare(expr_text);
    Renderer r(fmt, {"scale", "expr", "a", "b", "value", "ftc_integral", "ftc_residual"}, out);
    Json rec;
    rec["command"] = "integrate";
    rec["scale"] = scale_echo;
    rec["expr"] = expr_text;
    rec["a"] = a;
    rec["b"] = b;
    bool bad = false;
    try {
        rec["value"] = delta_integral(ts, p.fn, a, b, max_step, tol);
        if (check_ftc) {
            RealFunction df;
            const RealFunction fn = p.fn;
            df.value = [&ts, fn](double x) { return delta_derivative(ts, fn, x).value; };
            const double integral = delta_integral(ts, df, a, b, max_step, tol);
            const double endpoints = p.fn.value(b) - p.fn.value(a);
            const double residual = std::abs(integral - endpoints);
            rec["ftc_integral"] = integral;
            rec["ftc_residual"] = residual;
            if (residual > 1e-6 * std::max(1.0, std::abs(endpoints))) {
                rec["breach"] = true;
                bad = true;
            }
        }
    } catch (const Error& e) {
        mark_error(rec, {"value", "ftc_integral", "ftc_residual"}, e.what());
        bad = true;
    }
    r.emit(rec);
    return bad ? 1 : 0;
}

int cmd_table(const TimeScale& ts, const std::string& scale_echo,
              const std::vector<double>& points, const CatalogParams& params, double tol,
              bool parallel, OutFormat fmt, std::ostream& out) {
    auto work = [&](double t) -> Rows {
        Rows rows;
        auto base = [&](const char* id) {
            Json rec;
            rec["command"] = "table";
            rec["scale"] = scale_echo;
            rec["k"] = params.k;
            rec["c"] = params.c;
            rec["n"] = params.n;
            rec["id"] = id;
            rec["t"] = t;
            return rec;
        };
        if (!ts.contains(t) || !ts.in_kappa(t)) {
            Json rec = base("");
            mark_error(rec,
                       {"mu", "closed_form", "difference_quotient", "quadrature", "max_abs_gap"},
                       ts.contains(t) ? "delta derivative undefined at the left-scattered maximum"
                                      : "point is not in the time scale");
            rows.recs.push_back(std::move(rec));
            rows.bad = true;
            return rows;
        }
        const double mu = ts.mu(t);
        for (const CatalogEntry& e : list_catalog()) {
            Json rec = base(e.id);
            rec["mu"] = mu;
            try {
                const CrossCheck cc = cross_check(e.id, params, ts, t);
                rec["closed_form"] = cc.closed_form;
                rec["difference_quotient"] = cc.difference_quotient;
                rec["quadrature"] = cc.quadrature;
                rec["max_abs_gap"] = cc.max_abs_gap;
                if (cc.max_abs_gap > tol * std::max(1.0, std::abs(cc.closed_form))) {
                    rec["breach"] = true;
                    rows.bad = true;
                }
            } catch (const Error& ex) {
                mark_error(rec,
                           {"closed_form", "difference_quotient", "quadrature", "max_abs_gap"},
                           ex.what());
                rows.bad = true;
            }
            rows.recs.push_back(std::move(rec));
        }
        return rows;
    };

    Renderer r(fmt,
               {"id", "t", "mu", "closed_form", "difference_quotient", "quadrature",
                "max_abs_gap"},
               out);
    bool bad = false;
    for (const Rows& rows : over_points(points, parallel, work)) {
        bad = bad || rows.bad;
        for (const Json& rec : rows.recs) r.emit(rec);
    }
    return bad ? 1 : 0;
}

int cmd_identity_check(const TimeScale& ts, const std::string& scale_echo, double a, double b,
                       double max_step, double tol, OutFormat fmt, std::ostream& out) {
    const std::vector<double> pts = ts.sample(a, b, max_step);
    Renderer r(fmt, {"scale", "t", "mu", "identity", "lhs", "rhs", "gap"}, out);
    bool bad = false;
    for (double t : pts) {
        for (int which = 0; which < 2; ++which) {
            Json rec;
            rec["command"] = "identity-check";
            rec["scale"] = scale_echo;
            rec["t"] = t;
            const char* name = which == 0 ? "pythagorean" : "hyperbolic";
            try {
                const DefectReport d =
                    which == 0 ? pythagorean_defect(ts, t) : hyperbolic_defect(ts, t);
                rec["mu"] = d.mu;
                rec["identity"] = name;
                rec["lhs"] = d.lhs;
                rec["rhs"] = d.rhs;
                rec["gap"] = d.gap;
                double allow;
                if (which == 0) {
                    allow = tol * std::max(1.0, std::abs(d.rhs));
                } else if (std::abs(t) <= 1.0) {
                    allow = tol;
                } else if (std::abs(t) <= 5.0) {
                    allow = 1e-9 * std::max(1.0, d.rhs);
                } else {
                    allow = 1e-9 * std::max(1.0, d.rhs) * std::exp(2.0 * (std::abs(t) - 5.0));
                }
                if (d.gap > allow) {
                    rec["breach"] = true;
                    bad = true;
                }
            } catch (const Error& e) {
                rec["identity"] = name;
                mark_error(rec, {"mu", "lhs", "rhs", "gap"}, e.what());
                bad = true;
            }
            r.emit(rec);
        }
    }
    return bad ? 1 : 0;
}

namespace {

TimeScale load_scale(const std::string& spec, const std::string& file) {
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw Error("cannot read scale file: " + file);
        std::ostringstream buf;
        buf << in.rdbuf();
        return TimeScale::from_json_text(buf.str());
    }
    return TimeScale::parse_spec(spec);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"delta and nabla calculus on time scales"};
    app.name("tscalc");
    app.require_subcommand(1);

    std::string scale_spec, scale_file, expr_text, method;
    std::vector<double> points, window;
    double max_step = 0.25;
    bool json = false, csv = false, parallel = false, nabla = false, check_ftc = false;
    double diff_tol = 1e-8, oracle_tol = 1e-8, table_tol = 1e-8;
    double integ_tol = 1e-10, ident_tol = 1e-12;
    CatalogParams params;
    params.k = 2.0;
    params.c = 3.0;
    params.n = 2;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--scale", scale_spec, "compact scale spec (R, Z, hZ:h, q:q, set:{...}, union:..., cantor:d)");
        c->add_option("--scale-file", scale_file, "path to a scale JSON document");
        c->add_flag("--json", json, "one JSON object per record");
        c->add_flag("--csv", csv, "CSV with a header row");
    };

    CLI::App* c_scale = app.add_subcommand("scale", "jump operators and point classification");
    add_common(c_scale);
    c_scale->add_option("--points", points, "evaluation points");

    CLI::App* c_diff = app.add_subcommand("diff", "delta (or nabla) derivative of an expression");
    add_common(c_diff);
    c_diff->add_option("expr", expr_text, "expression in t")->required();
    c_diff->add_option("--points", points, "evaluation points")->required();
    c_diff->add_flag("--nabla", nabla, "backward quotient instead of forward");
    c_diff->add_option("--method", method, "auto|quotient|quadrature")
        ->check(CLI::IsMember({"auto", "quotient", "quadrature"}));
    c_diff->add_option("--tol", diff_tol, "cross-check gap tolerance (default 1e-8)");
    c_diff->add_flag("--parallel", parallel, "evaluate points concurrently");

    CLI::App* c_oracle =
        app.add_subcommand("oracle", "closed form vs quotient vs quadrature per point");
    add_common(c_oracle);
    c_oracle->add_option("expr", expr_text, "expression in t")->required();
    c_oracle->add_option("--points", points, "evaluation points")->required();
    c_oracle->add_option("--tol", oracle_tol, "gap tolerance (default 1e-8)");
    c_oracle->add_flag("--parallel", parallel, "evaluate points concurrently");

    CLI::App* c_int = app.add_subcommand("integrate", "delta integral over a window");
    add_common(c_int);
    c_int->add_option("expr", expr_text, "expression in t")->required();
    c_int->add_option("--window", window, "integration bounds a b")->expected(2)->required();
    c_int->add_option("--max-step", max_step, "dense-piece panel seed (default 0.25)");
    c_int->add_option("--tol", integ_tol, "quadrature tolerance (default 1e-10)");
    c_int->add_flag("--check-ftc", check_ftc,
                    "also integrate the delta derivative and report the endpoint residual");

    CLI::App* c_table = app.add_subcommand("table", "all twenty derivative formulas at a point");
    add_common(c_table);
    c_table->add_option("--points", points, "evaluation points")->required();
    c_table->add_option("--k", params.k, "parameter k (default 2)");
    c_table->add_option("--c", params.c, "parameter c (default 3)");
    c_table->add_option("--n", params.n, "parameter n (default 2)");
    c_table->add_option("--tol", table_tol, "gap tolerance (default 1e-8)");
    c_table->add_flag("--parallel", parallel, "evaluate points concurrently");

    CLI::App* c_ident =
        app.add_subcommand("identity-check", "pythagorean and hyperbolic defects over a window");
    add_common(c_ident);
    c_ident->add_option("--window", window, "sample bounds a b")->expected(2)->required();
    c_ident->add_option("--max-step", max_step, "dense sampling step (default 0.25)");
    c_ident->add_option("--tol", ident_tol, "base gap tolerance (default 1e-12)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    if (json && csv) {
        err << "error: --json and --csv are mutually exclusive\n";
        return 2;
    }
    const OutFormat fmt = csv ? OutFormat::Csv : (json ? OutFormat::Json : OutFormat::Human);

    if (scale_spec.empty() && scale_file.empty()) {
        err << "error: one of --scale or --scale-file is required\n";
        return 2;
    }
    if (nabla && !method.empty() && method != "quotient") {
        err << "error: --nabla supports --method quotient only\n";
        return 2;
    }

    try {
        const TimeScale ts = load_scale(scale_spec, scale_file);
        const std::string echo = scale_spec.empty() ? ts.spec_string() : scale_spec;
        if (app.got_subcommand(c_scale))
            return cmd_scale(ts, echo, points, fmt, out);
        if (app.got_subcommand(c_diff))
            return cmd_diff(ts, echo, expr_text, points, nabla, method, diff_tol, parallel, fmt,
                            out);
        if (app.got_subcommand(c_oracle))
            return cmd_oracle(ts, echo, expr_text, points, oracle_tol, parallel, fmt, out);
        if (app.got_subcommand(c_int))
            return cmd_integrate(ts, echo, expr_text, window[0], window[1], max_step, integ_tol,
                                 check_ftc, fmt, out);
        if (app.got_subcommand(c_table))
            return cmd_table(ts, echo, points, params, table_tol, parallel, fmt, out);
        if (app.got_subcommand(c_ident))
            return cmd_identity_check(ts, echo, window[0], window[1], max_step, ident_tol, fmt,
                                      out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << "error: no command\n";
    return 2;
}

}  // namespace tscalc
