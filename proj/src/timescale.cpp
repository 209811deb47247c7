#include "tscalc/timescale.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace tscalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
    if (x == kInf) return "inf";
    if (x == -kInf) return "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

}  // namespace

std::string PointClass::label() const {
    if (isolated()) return "isolated";
    if (dense()) return "dense";
    std::string s = left_scattered ? "left-scattered" : "left-dense";
    s += right_scattered ? ", right-scattered" : ", right-dense";
    return s;
}

double TimeScale::membership_tol(double t) {
    return 1e-9 * std::max(1.0, std::abs(t));
}

TimeScale TimeScale::reals() {
    TimeScale ts;
    ts.kind_ = ScaleKind::Reals;
    return ts;
}

TimeScale TimeScale::uniform_lattice(double step, double offset) {
    if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(offset))
        throw BadScaleSpec("lattice step must be a finite positive real");
    TimeScale ts;
    ts.kind_ = ScaleKind::UniformLattice;
    ts.h_ = step;
    ts.offset_ = offset;
    return ts;
}

TimeScale TimeScale::q_lattice(double ratio) {
    if (!(ratio > 1.0) || !std::isfinite(ratio))
        throw BadScaleSpec("q-lattice ratio must be a finite real > 1");
    TimeScale ts;
    ts.kind_ = ScaleKind::QLattice;
    ts.q_ = ratio;
    return ts;
}

TimeScale TimeScale::finite_set(std::vector<double> points) {
    if (points.empty()) throw BadScaleSpec("finite set needs at least one point");
    for (double p : points)
        if (!std::isfinite(p)) throw BadScaleSpec("finite set points must be finite");
    std::sort(points.begin(), points.end());
    // Points closer than the membership tolerance are indistinguishable; keep one.
    std::vector<double> kept;
    for (double p : points) {
        if (kept.empty() || p - kept.back() > membership_tol(p)) kept.push_back(p);
    }
    TimeScale ts;
    ts.kind_ = ScaleKind::FiniteSet;
    ts.points_ = std::move(kept);
    return ts;
}

TimeScale TimeScale::interval_union(std::vector<Interval> intervals) {
    if (intervals.empty()) throw BadScaleSpec("interval union needs at least one interval");
    for (const auto& iv : intervals) {
        if (std::isnan(iv.lo) || std::isnan(iv.hi)) throw BadScaleSpec("interval ends must not be NaN");
        if (!(iv.lo <= iv.hi)) throw BadScaleSpec("interval requires lo <= hi");
        if (iv.lo == kInf || iv.hi == -kInf) throw BadScaleSpec("interval ends out of order with infinity");
        if (iv.degenerate() && !std::isfinite(iv.lo))
            throw BadScaleSpec("degenerate interval must be a finite point");
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
    // Merge pieces that overlap or touch so that gaps are strictly positive.
    std::vector<Interval> merged;
    for (const auto& iv : intervals) {
        if (!merged.empty() && iv.lo <= merged.back().hi + membership_tol(iv.lo)) {
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        } else {
            merged.push_back(iv);
        }
    }
    TimeScale ts;
    ts.kind_ = ScaleKind::IntervalUnion;
    ts.intervals_ = std::move(merged);
    return ts;
}

TimeScale TimeScale::cantor_approx(int depth) {
    if (depth < 0 || depth > kMaxCantorDepth)
        throw BadScaleSpec("cantor depth must be between 0 and " + std::to_string(kMaxCantorDepth));
    // Interval starts as integers over 3^depth: stage d+1 maps s to {3s, 3s+2}.
    std::vector<long long> starts{0};
    for (int d = 0; d < depth; ++d) {
        std::vector<long long> next;
        next.reserve(starts.size() * 2);
        for (long long s : starts) {
            next.push_back(3 * s);
            next.push_back(3 * s + 2);
        }
        starts = std::move(next);
    }
    double denom = 1.0;
    for (int d = 0; d < depth; ++d) denom *= 3.0;
    std::vector<Interval> ivs;
    ivs.reserve(starts.size());
    for (long long s : starts)
        ivs.push_back({static_cast<double>(s) / denom, static_cast<double>(s + 1) / denom});
    TimeScale ts = interval_union(std::move(ivs));
    ts.cantor_depth_ = depth;
    return ts;
}

// ---------------------------------------------------------------------------
// Spec string parsing

namespace {

double parse_number(const std::string& text, const char* what) {
    const char* s = text.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0' || std::isnan(v))
        throw BadScaleSpec(std::string("bad ") + what + ": '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

TimeScale TimeScale::parse_spec(const std::string& raw) {
    const std::string spec = strip(raw);
    if (spec.empty()) throw BadScaleSpec("empty scale spec");
    if (spec == "R") return reals();
    if (spec == "Z") return uniform_lattice(1.0, 0.0);
    if (spec.rfind("hZ:", 0) == 0) return uniform_lattice(parse_number(spec.substr(3), "lattice step"), 0.0);
    if (spec.rfind("q:", 0) == 0) return q_lattice(parse_number(spec.substr(2), "q ratio"));
    if (spec.rfind("cantor:", 0) == 0) {
        double d = parse_number(spec.substr(7), "cantor depth");
        if (d != std::floor(d)) throw BadScaleSpec("cantor depth must be an integer");
        return cantor_approx(static_cast<int>(d));
    }
    if (spec.rfind("set:", 0) == 0) {
        std::string body = strip(spec.substr(4));
        if (body.size() < 2 || body.front() != '{' || body.back() != '}')
            throw BadScaleSpec("set spec must look like set:{a,b,c}");
        std::vector<double> pts;
        for (const auto& tok : split(body.substr(1, body.size() - 2), ','))
            pts.push_back(parse_number(strip(tok), "set point"));
        return finite_set(std::move(pts));
    }
    if (spec.rfind("union:", 0) == 0) {
        std::vector<Interval> ivs;
        for (const auto& raw_term : split(spec.substr(6), '+')) {
            std::string term = strip(raw_term);
            if (term.size() >= 2 && term.front() == '[' && term.back() == ']') {
                auto ends = split(term.substr(1, term.size() - 2), ',');
                if (ends.size() != 2) throw BadScaleSpec("interval must be [a,b]: '" + term + "'");
                ivs.push_back({parse_number(strip(ends[0]), "interval end"),
                               parse_number(strip(ends[1]), "interval end")});
            } else if (term.size() >= 2 && term.front() == '{' && term.back() == '}') {
                double p = parse_number(strip(term.substr(1, term.size() - 2)), "union point");
                ivs.push_back({p, p});
            } else {
                throw BadScaleSpec("union term must be [a,b] or {p}: '" + term + "'");
            }
        }
        return interval_union(std::move(ivs));
    }
    throw BadScaleSpec("unrecognized scale spec '" + spec + "'");
}

// ---------------------------------------------------------------------------
// JSON form

TimeScale TimeScale::from_json_text(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw BadScaleSpec(std::string("invalid scale JSON: ") + e.what());
    }
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "reals") return reals();
        if (kind == "lattice") return uniform_lattice(j.at("h").get<double>(), j.value("offset", 0.0));
        if (kind == "qlattice") return q_lattice(j.at("q").get<double>());
        if (kind == "finite") return finite_set(j.at("points").get<std::vector<double>>());
        if (kind == "cantor") return cantor_approx(j.at("depth").get<int>());
        if (kind == "union") {
            std::vector<Interval> ivs;
            for (const auto& pair : j.at("intervals")) {
                if (!pair.is_array() || pair.size() != 2)
                    throw BadScaleSpec("union intervals must be [a,b] pairs");
                auto end = [](const nlohmann::json& v) -> double {
                    if (v.is_string()) {
                        const std::string s = v.get<std::string>();
                        if (s == "inf") return kInf;
                        if (s == "-inf") return -kInf;
                        throw BadScaleSpec("interval end string must be 'inf' or '-inf'");
                    }
                    return v.get<double>();
                };
                ivs.push_back({end(pair[0]), end(pair[1])});
            }
            return interval_union(std::move(ivs));
        }
        throw BadScaleSpec("unknown scale kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw BadScaleSpec(std::string("invalid scale JSON: ") + e.what());
    }
}

std::string TimeScale::to_json_text() const {
    nlohmann::json j;
    switch (kind_) {
        case ScaleKind::Reals:
            j["kind"] = "reals";
            break;
        case ScaleKind::UniformLattice:
            j["kind"] = "lattice";
            j["h"] = h_;
            j["offset"] = offset_;
            break;
        case ScaleKind::QLattice:
            j["kind"] = "qlattice";
            j["q"] = q_;
            break;
        case ScaleKind::FiniteSet:
            j["kind"] = "finite";
            j["points"] = points_;
            break;
        case ScaleKind::IntervalUnion:
            if (cantor_depth_) {
                j["kind"] = "cantor";
                j["depth"] = *cantor_depth_;
                break;
            }
            j["kind"] = "union";
            j["intervals"] = nlohmann::json::array();
            for (const auto& iv : intervals_) {
                nlohmann::json pair = nlohmann::json::array();
                if (iv.lo == -kInf)
                    pair.push_back("-inf");
                else
                    pair.push_back(iv.lo);
                if (iv.hi == kInf)
                    pair.push_back("inf");
                else
                    pair.push_back(iv.hi);
                j["intervals"].push_back(pair);
            }
            break;
    }
    return j.dump();
}

std::string TimeScale::spec_string() const {
    switch (kind_) {
        case ScaleKind::Reals:
            return "R";
        case ScaleKind::UniformLattice:
            if (h_ == 1.0 && offset_ == 0.0) return "Z";
            return "hZ:" + fmt(h_);
        case ScaleKind::QLattice:
            return "q:" + fmt(q_);
        case ScaleKind::FiniteSet: {
            std::string s = "set:{";
            for (std::size_t i = 0; i < points_.size(); ++i) {
                if (i) s += ",";
                s += fmt(points_[i]);
            }
            return s + "}";
        }
        case ScaleKind::IntervalUnion: {
            if (cantor_depth_) return "cantor:" + std::to_string(*cantor_depth_);
            std::string s = "union:";
            for (std::size_t i = 0; i < intervals_.size(); ++i) {
                if (i) s += "+";
                const auto& iv = intervals_[i];
                if (iv.degenerate())
                    s += "{" + fmt(iv.lo) + "}";
                else
                    s += "[" + fmt(iv.lo) + "," + fmt(iv.hi) + "]";
            }
            return s;
        }
    }
    return "?";
}

std::string TimeScale::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case ScaleKind::Reals:
            os << "the real line";
            break;
        case ScaleKind::UniformLattice:
            os << "uniform lattice, step " << fmt(h_);
            if (offset_ != 0.0) os << ", offset " << fmt(offset_);
            break;
        case ScaleKind::QLattice:
            os << "q-lattice {q^k, k >= 0} with q = " << fmt(q_);
            break;
        case ScaleKind::FiniteSet:
            os << "finite set of " << points_.size() << " points";
            break;
        case ScaleKind::IntervalUnion:
            if (cantor_depth_)
                os << "cantor stage " << *cantor_depth_ << " (" << intervals_.size() << " intervals)";
            else
                os << "union of " << intervals_.size() << " intervals";
            break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Membership and jump operators

std::optional<long long> TimeScale::lattice_index(double t) const {
    const double k = std::round((t - offset_) / h_);
    if (std::abs(k) > 9.0e15) return std::nullopt;
    const double snapped = offset_ + k * h_;
    if (std::abs(t - snapped) <= membership_tol(t)) return static_cast<long long>(k);
    return std::nullopt;
}

std::optional<long long> TimeScale::q_index(double t) const {
    if (!(t > 0.0)) return std::nullopt;
    const double k = std::round(std::log(t) / std::log(q_));
    if (k < 0.0 || k > 4000.0) return std::nullopt;
    const double snapped = std::pow(q_, k);
    if (std::abs(t - snapped) <= membership_tol(t)) return static_cast<long long>(k);
    return std::nullopt;
}

std::optional<TimeScale::Loc> TimeScale::locate(double t) const {
    // Candidate: last interval with lo <= t, and also the one after it in
    // case t sits within tolerance below its lo.
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                               [](double v, const Interval& iv) { return v < iv.lo; });
    const double tol = membership_tol(t);
    for (auto cand : {it == intervals_.begin() ? intervals_.end() : std::prev(it), it}) {
        if (cand == intervals_.end()) continue;
        if (t < cand->lo - tol || t > cand->hi + tol) continue;
        std::size_t idx = static_cast<std::size_t>(cand - intervals_.begin());
        if (cand->degenerate()) return Loc{idx, Pos::AtHi};
        if (std::abs(t - cand->hi) <= tol) return Loc{idx, Pos::AtHi};
        if (std::abs(t - cand->lo) <= tol) return Loc{idx, Pos::AtLo};
        return Loc{idx, Pos::Interior};
    }
    return std::nullopt;
}

bool TimeScale::contains(double t) const {
    if (!std::isfinite(t)) return false;
    switch (kind_) {
        case ScaleKind::Reals:
            return true;
        case ScaleKind::UniformLattice:
            return lattice_index(t).has_value();
        case ScaleKind::QLattice:
            return q_index(t).has_value();
        case ScaleKind::FiniteSet: {
            auto it = std::lower_bound(points_.begin(), points_.end(), t);
            const double tol = membership_tol(t);
            if (it != points_.end() && std::abs(*it - t) <= tol) return true;
            if (it != points_.begin() && std::abs(*std::prev(it) - t) <= tol) return true;
            return false;
        }
        case ScaleKind::IntervalUnion:
            return locate(t).has_value();
    }
    return false;
}

double TimeScale::sigma(double t) const {
    switch (kind_) {
        case ScaleKind::Reals:
            if (!std::isfinite(t)) throw PointNotInScale(t, describe());
            return t;
        case ScaleKind::UniformLattice: {
            auto k = lattice_index(t);
            if (!k) throw PointNotInScale(t, describe());
            return offset_ + static_cast<double>(*k + 1) * h_;
        }
        case ScaleKind::QLattice: {
            if (!q_index(t)) throw PointNotInScale(t, describe());
            return t * q_;
        }
        case ScaleKind::FiniteSet: {
            if (!contains(t)) throw PointNotInScale(t, describe());
            auto it = std::upper_bound(points_.begin(), points_.end(), t + membership_tol(t));
            return it == points_.end() ? points_.back() : *it;
        }
        case ScaleKind::IntervalUnion: {
            auto loc = locate(t);
            if (!loc) throw PointNotInScale(t, describe());
            if (loc->pos != Pos::AtHi) return t;
            // Right endpoint: jump across the gap, clamping at the supremum.
            if (loc->index + 1 < intervals_.size()) return intervals_[loc->index + 1].lo;
            return intervals_[loc->index].hi;
        }
    }
    throw PointNotInScale(t, describe());
}

double TimeScale::rho(double t) const {
    switch (kind_) {
        case ScaleKind::Reals:
            if (!std::isfinite(t)) throw PointNotInScale(t, describe());
            return t;
        case ScaleKind::UniformLattice: {
            auto k = lattice_index(t);
            if (!k) throw PointNotInScale(t, describe());
            return offset_ + static_cast<double>(*k - 1) * h_;
        }
        case ScaleKind::QLattice: {
            auto k = q_index(t);
            if (!k) throw PointNotInScale(t, describe());
            return *k == 0 ? t : t / q_;
        }
        case ScaleKind::FiniteSet: {
            if (!contains(t)) throw PointNotInScale(t, describe());
            auto it = std::lower_bound(points_.begin(), points_.end(), t - membership_tol(t));
            return it == points_.begin() ? points_.front() : *std::prev(it);
        }
        case ScaleKind::IntervalUnion: {
            auto loc = locate(t);
            if (!loc) throw PointNotInScale(t, describe());
            const auto& iv = intervals_[loc->index];
            bool at_lo = loc->pos == Pos::AtLo || (iv.degenerate() && loc->pos == Pos::AtHi);
            if (!at_lo) return t;
            if (loc->index > 0) return intervals_[loc->index - 1].hi;
            return iv.lo;
        }
    }
    throw PointNotInScale(t, describe());
}

double TimeScale::mu(double t) const {
    if (kind_ == ScaleKind::UniformLattice) {
        if (!lattice_index(t)) throw PointNotInScale(t, describe());
        return h_;
    }
    return sigma(t) - t;
}

double TimeScale::nu(double t) const {
    if (kind_ == ScaleKind::UniformLattice) {
        if (!lattice_index(t)) throw PointNotInScale(t, describe());
        return h_;
    }
    return t - rho(t);
}

PointClass TimeScale::classify(double t) const {
    return PointClass{sigma(t) > t, rho(t) < t};
}

bool TimeScale::in_kappa(double t) const {
    if (!contains(t)) throw PointNotInScale(t, describe());
    const double sup = supremum();
    if (!std::isfinite(sup)) return true;
    if (std::abs(t - sup) > membership_tol(t)) return true;
    return !classify(sup).left_scattered;
}

bool TimeScale::in_kappa_nabla(double t) const {
    if (!contains(t)) throw PointNotInScale(t, describe());
    const double inf = infimum();
    if (!std::isfinite(inf)) return true;
    if (std::abs(t - inf) > membership_tol(t)) return true;
    return !classify(inf).right_scattered;
}

double TimeScale::infimum() const {
    switch (kind_) {
        case ScaleKind::Reals:
        case ScaleKind::UniformLattice:
            return -kInf;
        case ScaleKind::QLattice:
            return 1.0;
        case ScaleKind::FiniteSet:
            return points_.front();
        case ScaleKind::IntervalUnion:
            return intervals_.front().lo;
    }
    return -kInf;
}

double TimeScale::supremum() const {
    switch (kind_) {
        case ScaleKind::Reals:
        case ScaleKind::UniformLattice:
        case ScaleKind::QLattice:
            return kInf;
        case ScaleKind::FiniteSet:
            return points_.back();
        case ScaleKind::IntervalUnion:
            return intervals_.back().hi;
    }
    return kInf;
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

// Uniform fill of [a, b] at spacing <= max_step, endpoints exact.
void fill_dense(std::vector<double>& out, double a, double b, double max_step) {
    if (b <= a) {
        out.push_back(a);
        return;
    }
    const auto n = static_cast<std::size_t>(std::ceil((b - a) / max_step));
    const double step = (b - a) / static_cast<double>(n);
    out.push_back(a);
    for (std::size_t i = 1; i < n; ++i) out.push_back(a + static_cast<double>(i) * step);
    out.push_back(b);
}

constexpr std::size_t kMaxSamplePoints = 1u << 24;

}  // namespace

std::vector<double> TimeScale::sample(double a, double b, double max_step) const {
    if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b))
        throw Error("sample window must satisfy a <= b with finite ends");
    if (!(max_step > 0.0)) throw Error("max_step must be positive");
    std::vector<double> out;
    switch (kind_) {
        case ScaleKind::Reals:
            fill_dense(out, a, b, max_step);
            return out;
        case ScaleKind::UniformLattice: {
            const double k_lo = std::ceil((a - offset_) / h_ - 1e-9);
            const double k_hi = std::floor((b - offset_) / h_ + 1e-9);
            if (k_lo > k_hi) throw EmptyWindow("no lattice points in [" + fmt(a) + ", " + fmt(b) + "]");
            if (k_hi - k_lo > static_cast<double>(kMaxSamplePoints))
                throw Error("sample window covers too many lattice points");
            for (double k = k_lo; k <= k_hi; k += 1.0) out.push_back(offset_ + k * h_);
            return out;
        }
        case ScaleKind::QLattice: {
            if (b < 1.0) throw EmptyWindow("q-lattice starts at 1");
            const double lq = std::log(q_);
            double k_lo = a <= 1.0 ? 0.0 : std::ceil(std::log(a) / lq - 1e-9);
            double k_hi = std::floor(std::log(b) / lq + 1e-9);
            if (k_lo > k_hi) throw EmptyWindow("no q-lattice points in [" + fmt(a) + ", " + fmt(b) + "]");
            for (double k = k_lo; k <= k_hi; k += 1.0) out.push_back(std::pow(q_, k));
            return out;
        }
        case ScaleKind::FiniteSet: {
            for (double p : points_)
                if (p >= a - membership_tol(p) && p <= b + membership_tol(p)) out.push_back(p);
            if (out.empty()) throw EmptyWindow("no points of the finite set in [" + fmt(a) + ", " + fmt(b) + "]");
            return out;
        }
        case ScaleKind::IntervalUnion: {
            for (const auto& iv : intervals_) {
                const double lo = std::max(iv.lo, a);
                const double hi = std::min(iv.hi, b);
                if (lo > hi) continue;
                if (out.size() > kMaxSamplePoints) throw Error("sample grid too large");
                fill_dense(out, lo, hi, max_step);
            }
            if (out.empty()) throw EmptyWindow("scale does not meet [" + fmt(a) + ", " + fmt(b) + "]");
            return out;
        }
    }
    throw EmptyWindow("unreachable");
}

}  // namespace tscalc
