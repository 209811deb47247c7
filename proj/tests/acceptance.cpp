// Acceptance suite: one line per criterion, exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tscalc/catalog.hpp"
#include "tscalc/cli.hpp"
#include "tscalc/derivative.hpp"
#include "tscalc/expr.hpp"
#include "tscalc/special.hpp"
#include "tscalc/timescale.hpp"

using namespace tscalc;

namespace {

struct Check {
    bool ok = true;
    std::string why;
    long asserts = 0;

    void expect(bool cond, const std::string& msg) {
        ++asserts;
        if (!cond && ok) {
            ok = false;
            why = msg;
        }
    }
};

bool rel_ok(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string at(const std::string& scale, const std::string& id, double t) {
    std::ostringstream s;
    s << id << " on " << scale << " at t=" << t;
    return s.str();
}

struct ScaleCase {
    std::string name;
    TimeScale ts;
    std::vector<double> pts;
};

std::vector<ScaleCase> table_scales() {
    std::vector<ScaleCase> v;
    v.push_back({"R", TimeScale::parse_spec("R"), {}});
    for (int j = 1; j <= 10; ++j) v.back().pts.push_back(0.3 * j);
    v.push_back({"Z", TimeScale::parse_spec("Z"), {}});
    for (int j = 1; j <= 10; ++j) v.back().pts.push_back(j);
    v.push_back({"hZ:0.5", TimeScale::parse_spec("hZ:0.5"), {}});
    for (int j = 1; j <= 10; ++j) v.back().pts.push_back(0.5 * j);
    v.push_back({"q:2", TimeScale::parse_spec("q:2"), {}});
    for (int j = 0; j < 10; ++j) v.back().pts.push_back(std::ldexp(1.0, j));
    v.push_back({"union:[0,1]+{2}+[3,4]", TimeScale::parse_spec("union:[0,1]+{2}+[3,4]"),
                 {0.2, 0.4, 0.6, 0.8, 1.0, 2.0, 3.2, 3.4, 3.6, 3.8}});
    return v;
}

// Large q-lattice jumps would overflow the exponential entries with the
// default parameters; a small frequency keeps every entry finite there.
CatalogParams params_on(const std::string& scale) {
    if (scale == "q:2") return {0.25, 0.5, 3};
    return {2.0, 3.0, 3};
}

// --- criterion bodies ------------------------------------------------------

void c1_three_paths(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& sc : table_scales()) {
        const CatalogParams p = params_on(sc.name);
        for (const auto& e : list_catalog()) {
            int used = 0;
            for (double t : sc.pts) {
                CrossCheck cc;
                try {
                    cc = cross_check(e.id, p, sc.ts, t);
                } catch (const Error& ex) {
                    c.expect(false, at(sc.name, e.id, t) + ": " + ex.what());
                    continue;
                }
                ++used;
                c.expect(rel_ok(cc.closed_form, cc.difference_quotient, 1e-10),
                         at(sc.name, e.id, t) + ": quotient gap");
                c.expect(std::abs(cc.closed_form - cc.quadrature) <=
                             1e-8 * std::max(1.0, std::abs(cc.closed_form)),
                         at(sc.name, e.id, t) + ": quadrature gap");
            }
            c.expect(used >= 10, std::string(e.id) + " on " + sc.name + ": fewer than 10 points");
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(secs < 10.0, "sweep took too long");
}

void c2_limits(Check& c) {
    c.expect(eval_delta("B03", {2.0, 0, 1}, 3.0, 0.0) == 8.0 * std::log(2.0),
             "2^t limit at t=3 is not exactly 8 ln 2");
    c.expect(eval_delta("R01", {}, 4.0, 0.0) == 0.25, "sqrt limit at t=4 is not exactly 1/4");

    struct Anchor {
        const char* id;
        CatalogParams p;
        double t;
    };
    const Anchor anchors[] = {
        {"B01", {1, 0, 1}, 1.0},  {"B02", {0, 0, 3}, 2.0},  {"B03", {2, 0, 1}, 3.0},
        {"B04", {1, 0, 3}, 2.0},  {"R01", {0, 0, 1}, 4.0},  {"R02", {2, 0, 3}, 1.0},
        {"R03", {2, 1, 2}, 1.0},  {"L01", {0, 0, 3}, 2.0},  {"L02", {2, 3, 1}, 1.0},
        {"E01", {1, 0, 1}, 2.0},  {"E02", {1, 0, 2}, 4.0},  {"T01", {0, 0, 1}, 0.5},
        {"T02", {0, 0, 1}, 1.0},  {"TM01", {1, 0, 1}, 1.0}, {"TM02", {1, 0, 1}, 2.0},
        {"TE01", {1, 1, 1}, 1.0}, {"TE02", {1, 1, 1}, 2.0}, {"H01", {1, 0, 1}, 1.0},
        {"H02", {1, 0, 1}, 1.0},  {"H03", {1, 0, 1}, 0.25},
    };
    for (const auto& a : anchors) {
        const double want = eval_classical(a.id, a.p, a.t);
        for (int m = 1; m <= 12; ++m) {
            const double mu = std::pow(10.0, -m);
            const double got = eval_delta(a.id, a.p, a.t, mu);
            c.expect(std::isfinite(got), std::string(a.id) + ": blow-up at mu=1e-" +
                                             std::to_string(m));
            if (m >= 6)
                c.expect(rel_ok(got, want, 1e-6),
                         std::string(a.id) + ": off the classical value at mu=1e-" +
                             std::to_string(m));
        }
    }
}

void c3_shift_identity(Check& c) {
    for (const auto& sc : table_scales()) {
        const CatalogParams p = params_on(sc.name);
        for (double t : sc.pts) {
            const double mu = sc.ts.mu(t);
            if (mu <= mu_threshold(t)) continue;
            const double st = sc.ts.sigma(t);
            for (const auto& e : list_catalog()) {
                const double fs = e.value(st, p);
                const double rebuilt = e.value(t, p) + mu * eval_delta(e.id, p, t, mu);
                c.expect(std::abs(fs - rebuilt) <= 1e-12 * std::max(1.0, std::abs(fs)),
                         at(sc.name, e.id, t) + ": shift identity");
            }
        }
    }
}

void c4_defects(Check& c) {
    for (const auto& sc : table_scales()) {
        std::vector<double> pts;
        if (sc.name == "R" || sc.name == "hZ:0.5")
            for (int j = -10; j <= 10; ++j) pts.push_back(0.5 * j);
        else if (sc.name == "Z")
            for (int j = -5; j <= 5; ++j) pts.push_back(j);
        else if (sc.name == "q:2")
            pts = {1.0, 2.0, 4.0};
        else
            pts = sc.ts.sample(0.0, 4.0, 0.25);
        for (double t : pts) {
            const DefectReport py = pythagorean_defect(sc.ts, t);
            c.expect(py.gap <= 1e-12, at(sc.name, "pythagorean", t) + ": gap");
            const DefectReport hy = hyperbolic_defect(sc.ts, t);
            c.expect(hy.gap <= (std::abs(t) <= 1.0 ? 1e-12 : 1e-9),
                     at(sc.name, "hyperbolic", t) + ": gap");
            if (sc.name == "R") {
                c.expect(py.rhs == 1.0, "pythagorean defect on R is not exactly 1");
                c.expect(hy.rhs == 1.0, "hyperbolic defect on R is not exactly 1");
            }
        }
    }
}

void c5_linkage(Check& c) {
    struct Pair {
        const char* id;
        RealFunction f;
    };
    const Pair pairs[] = {
        {"T01", {[](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }}},
        {"T02", {[](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); }}},
        {"H01", {[](double x) { return std::sinh(x); }, [](double x) { return std::cosh(x); }}},
        {"H02", {[](double x) { return std::cosh(x); }, [](double x) { return std::sinh(x); }}},
    };
    const CatalogParams unit{1.0, 0.0, 1};
    for (const auto& sc : table_scales()) {
        std::vector<double> pts;
        if (sc.name == "q:2")
            pts = {1.0, 2.0, 4.0};
        else
            for (int j = -10; j <= 10; ++j) pts.push_back(0.5 * j);
        for (double t : pts) {
            if (!sc.ts.contains(t) || !sc.ts.in_kappa(t)) continue;
            const double mu = sc.ts.mu(t);
            for (const auto& pr : pairs) {
                const double engine = delta_derivative(sc.ts, pr.f, t).value;
                const double closed = eval_delta(pr.id, unit, t, mu);
                c.expect(rel_ok(engine, closed, 1e-12),
                         at(sc.name, pr.id, t) + ": derivative pair");
            }
        }
    }
}

void c6_ftc(Check& c) {
    struct Window {
        const char* spec;
        double a, b;
    };
    const Window windows[] = {
        {"R", 0.0, 2.0},
        {"Z", 0.0, 3.0},
        {"hZ:0.5", 0.0, 2.0},
        {"q:2", 1.0, 8.0},
        {"union:[0,1]+{2}+[3,4]", 0.0, 4.0},
    };
    const char* fns[] = {"t^2", "exp(t)", "sin(t)"};
    for (const auto& w : windows) {
        const TimeScale ts = TimeScale::parse_spec(w.spec);
        for (const char* fn : fns) {
            std::ostringstream out;
            int rc = 1;
            try {
                rc = cmd_integrate(ts, w.spec, fn, w.a, w.b, 0.25, 1e-10, true,
                                   OutFormat::Json, out);
            } catch (const Error& e) {
                c.expect(false, std::string(fn) + " on " + w.spec + ": " + e.what());
                continue;
            }
            c.expect(rc == 0, std::string(fn) + " on " + w.spec + ": nonzero exit");
            const auto rec = nlohmann::json::parse(out.str());
            const ExprPtr g = canonicalize(parse(fn));
            const double endpoints = evaluate(g, w.b) - evaluate(g, w.a);
            c.expect(rec["ftc_residual"].get<double>() <=
                         1e-6 * std::max(1.0, std::abs(endpoints)),
                     std::string(fn) + " on " + w.spec + ": residual too large");
        }
    }
}

void c7_nabla_duality(Check& c) {
    const TimeScale z = TimeScale::parse_spec("Z");
    RealFunction sq;
    sq.value = [](double x) { return x * x; };
    c.expect(nabla_derivative(z, sq, 3.0).value == 5.0, "nabla of t^2 at 3 is not 5");
    c.expect(delta_derivative(z, sq, 2.0).value == 5.0, "delta of t^2 at 2 is not 5");
    c.expect(nabla_derivative(z, sq, 3.0).value == delta_derivative(z, sq, 2.0).value,
             "nabla at 3 differs from delta at 2");

    std::vector<RealFunction> fns(4);
    fns[0].value = [](double x) { return x * x; };
    fns[1].value = [](double x) { return x * x * x - 2.0 * x; };
    fns[2].value = [](double x) { return std::sin(x); };
    fns[3].value = [](double x) { return std::exp(0.05 * x); };
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> pick_t(-40, 40);
    for (int i = 0; i < 100; ++i) {
        const double t = pick_t(rng);
        const RealFunction& f = fns[i % 4];
        const double fwd = delta_derivative(z, f, t).value;
        const double bwd = nabla_derivative(z, f, z.sigma(t)).value;
        c.expect(rel_ok(fwd, bwd, 1e-12), "shifted equality fails at t=" + std::to_string(t));
    }
}

// random AST source shared by the parser criteria
ExprPtr gen(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth >= 4 ? 1 : 9);
    switch (pick(rng)) {
        case 0: {
            std::uniform_int_distribution<int> k(-8, 8);
            return make_constant(k(rng) / 2.0);
        }
        case 1: return make_var();
        case 2: return make_add(gen(rng, depth + 1), gen(rng, depth + 1));
        case 3: return make_sub(gen(rng, depth + 1), gen(rng, depth + 1));
        case 4: return make_mul(gen(rng, depth + 1), gen(rng, depth + 1));
        case 5: return make_div(gen(rng, depth + 1), gen(rng, depth + 1));
        case 6: {
            std::uniform_int_distribution<int> n(-2, 4);
            int e = n(rng);
            if (e == 0 || e == 1) e = 2;
            return make_pow_int(gen(rng, depth + 1), e);
        }
        case 7: {
            const double bases[3] = {0.5, 2.0, 3.0};
            std::uniform_int_distribution<int> b(0, 2);
            return make_pow_base(bases[b(rng)]);
        }
        default: {
            std::uniform_int_distribution<int> f(0, 6);
            return make_call(static_cast<Fn>(f(rng)), gen(rng, depth + 1));
        }
    }
}

void c8_expressions(Check& c) {
    struct Shape {
        const char* text;
        const char* id;
    };
    const Shape shapes[] = {
        {"2", "B01"},
        {"t^3", "B02"},
        {"2^t", "B03"},
        {"(t + 2)^3", "B04"},
        {"sqrt(t)", "R01"},
        {"sqrt(2 + t^3)", "R02"},
        {"t^3*sqrt(2 + 3*t)", "R03"},
        {"ln(t^3)", "L01"},
        {"ln(2*t + 3)", "L02"},
        {"exp(2*t)", "E01"},
        {"t^3*exp(2*t)", "E02"},
        {"sin(t)", "T01"},
        {"cos(t)", "T02"},
        {"t*sin(2*t)", "TM01"},
        {"t*cos(2*t)", "TM02"},
        {"exp(2*t)*sin(3*t)", "TE01"},
        {"exp(2*t)*cos(3*t)", "TE02"},
        {"sinh(2*t)", "H01"},
        {"cosh(2*t)", "H02"},
        {"sinh(2*t)*cosh(2*t)", "H03"},
    };
    for (const auto& s : shapes) {
        const auto m = match_catalog(canonicalize(parse(s.text)));
        c.expect(m.has_value() && m->entry_id == s.id,
                 std::string(s.text) + ": does not match " + s.id);
    }

    std::mt19937 rng(12345);
    int trips = 0, guard = 0;
    while (trips < 1000 && guard < 30000) {
        ++guard;
        ExprPtr g;
        try {
            g = canonicalize(gen(rng, 0));
        } catch (const Error&) {
            continue;
        }
        const std::string s = format(g);
        try {
            c.expect(expr_equal(canonicalize(parse(s)), g), "round-trip changed: " + s);
        } catch (const Error&) {
            c.expect(false, "round-trip failed to parse: " + s);
        }
        ++trips;
    }
    c.expect(trips == 1000, "fewer than 1000 round-trips");

    std::mt19937 rng2(777);
    std::uniform_real_distribution<double> td(0.4, 2.1);
    int done = 0;
    guard = 0;
    while (done < 100 && guard < 20000) {
        ++guard;
        ExprPtr g, dg;
        try {
            g = canonicalize(gen(rng2, 0));
            dg = classical_diff(g);
        } catch (const Error&) {
            continue;
        }
        const double t = td(rng2);
        const double h = 1e-4 * std::max(1.0, t);
        const double fp = evaluate(g, t + h), fm = evaluate(g, t - h);
        const double fp2 = evaluate(g, t + h / 2), fm2 = evaluate(g, t - h / 2);
        const double f0 = evaluate(g, t);
        const double ex = evaluate(dg, t);
        bool usable = std::isfinite(fp) && std::isfinite(fm) && std::isfinite(fp2) &&
                      std::isfinite(fm2) && std::isfinite(f0) && std::isfinite(ex);
        usable = usable && std::abs(f0) < 1e3 && std::abs(fp) < 1e3 && std::abs(fm) < 1e3 &&
                 std::abs(ex) < 1e3;
        if (!usable) continue;
        const double d1 = (fp - fm) / (2.0 * h);
        const double d2 = (fp2 - fm2) / h;
        const double fd = (4.0 * d2 - d1) / 3.0;
        c.expect(std::abs(fd - ex) <= 1e-6 * std::max(1.0, std::abs(ex)),
                 "symbolic derivative disagrees with differences: " + format(g));
        ++done;
    }
    c.expect(done == 100, "fewer than 100 difference comparisons");
}

void c9_jump_closed_forms(Check& c) {
    const TimeScale r = TimeScale::parse_spec("R");
    for (int j = 0; j < 20; ++j) {
        const double t = -5.0 + 0.5 * j;
        c.expect(r.sigma(t) == t && r.rho(t) == t && r.mu(t) == 0.0 && r.nu(t) == 0.0,
                 "jump operators on R at t=" + std::to_string(t));
    }
    const TimeScale h = TimeScale::parse_spec("hZ:0.5");
    for (int k = -10; k < 10; ++k) {
        const double t = 0.5 * k;
        c.expect(h.sigma(t) == t + 0.5 && h.rho(t) == t - 0.5 && h.mu(t) == 0.5 &&
                     h.nu(t) == 0.5,
                 "jump operators on the half-step lattice at t=" + std::to_string(t));
    }
    const TimeScale q = TimeScale::parse_spec("q:2");
    for (int j = 1; j <= 20; ++j) {
        const double t = std::ldexp(1.0, j);
        c.expect(q.sigma(t) == 2.0 * t && q.rho(t) == 0.5 * t && q.mu(t) == (2.0 - 1.0) * t &&
                     q.nu(t) == (1.0 - 0.5) * t,
                 "jump operators on the doubling lattice at t=" + std::to_string(t));
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        void (*body)(Check&);
    };
    const Criterion criteria[] = {
        {"closed forms vs quotient and quadrature on five scales", c1_three_paths},
        {"vanishing-graininess limits splice in the classical derivative", c2_limits},
        {"shift identity f(sigma) = f + mu*delta at scattered points", c3_shift_identity},
        {"pythagorean and hyperbolic defect identities", c4_defects},
        {"trig and hyperbolic derivative pairs", c5_linkage},
        {"fundamental theorem residual through the integrate command", c6_ftc},
        {"nabla at sigma(t) mirrors delta at t", c7_nabla_duality},
        {"expression matching, round-trips, and symbolic derivatives", c8_expressions},
        {"jump operator closed forms on lattice scales", c9_jump_closed_forms},
    };

    int failures = 0;
    int idx = 0;
    for (const auto& cr : criteria) {
        ++idx;
        Check c;
        try {
            cr.body(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("unexpected exception: ") + e.what());
        }
        if (c.ok) {
            std::printf("PASS %d: %s (%ld checks)\n", idx, cr.label, c.asserts);
        } else {
            ++failures;
            std::printf("FAIL %d: %s: %s\n", idx, cr.label, c.why.c_str());
        }
    }
    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures;
}
