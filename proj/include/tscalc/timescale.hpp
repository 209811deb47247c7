#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tscalc/errors.hpp"

namespace tscalc {

/// Closed interval [lo, hi]. lo == hi denotes an isolated point; lo may be
/// -infinity and hi may be +infinity on the outermost pieces of a union.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool degenerate() const { return lo == hi; }
    double length() const { return hi - lo; }
};

enum class ScaleKind {
    Reals,           // all of R
    UniformLattice,  // { offset + k h : k in Z }, h > 0
    QLattice,        // { q^k : k in N0 }, q > 1
    FiniteSet,       // finitely many points
    IntervalUnion,   // sorted disjoint closed intervals with positive gaps
};

/// Scattering classification of a point, derived from the jump operators:
/// right-scattered iff sigma(t) > t, left-scattered iff rho(t) < t.
/// A point is isolated when both hold and dense when neither does.
struct PointClass {
    bool right_scattered = false;
    bool left_scattered = false;

    bool isolated() const { return right_scattered && left_scattered; }
    bool dense() const { return !right_scattered && !left_scattered; }

    /// "dense", "isolated", or "left-X, right-Y".
    std::string label() const;

    bool operator==(const PointClass&) const = default;
};

/// A nonempty closed subset of the real line together with its jump
/// operators sigma/rho and graininess functions mu/nu.
///
/// Values are immutable after construction and every member function is
/// pure, so a TimeScale may be shared freely across threads.
///
/// Membership of a floating-point t is decided up to the relative tolerance
/// membership_tol(t) = 1e-9 * max(1, |t|). Lattice kinds snap t to the
/// nearest index before verifying, so operators are exact index arithmetic
/// rather than accumulated sums.
class TimeScale {
public:
    static constexpr int kMaxCantorDepth = 20;

    // Constructors for each kind. Inputs are normalized: finite-set points
    // are sorted and deduplicated, intervals are sorted and merged when they
    // overlap or touch (adjacent pieces b_i = a_{i+1} become one piece).
    static TimeScale reals();
    static TimeScale uniform_lattice(double step, double offset = 0.0);
    static TimeScale q_lattice(double ratio);
    static TimeScale finite_set(std::vector<double> points);
    static TimeScale interval_union(std::vector<Interval> intervals);
    /// Stage `depth` of the middle-thirds construction on [0, 1]: the union
    /// of 2^depth closed intervals of width 3^-depth with triadic endpoints.
    static TimeScale cantor_approx(int depth);

    /// Compact textual form: "R", "Z", "hZ:0.5", "q:2", "set:{0,0.5,1}",
    /// "union:[0,1]+{2}+[3,4]" (with "inf"/"-inf" allowed as interval ends),
    /// "cantor:5". Throws BadScaleSpec.
    static TimeScale parse_spec(const std::string& spec);

    /// JSON object form, e.g. {"kind":"lattice","h":0.5,"offset":0}. The
    /// document may be given as text; see also to_json_text().
    static TimeScale from_json_text(const std::string& json_text);
    std::string to_json_text() const;

    ScaleKind kind() const { return kind_; }
    /// Set when the scale was built by cantor_approx().
    std::optional<int> cantor_depth() const { return cantor_depth_; }
    /// One-line human description.
    std::string describe() const;
    /// The compact spec string this scale round-trips through, when one
    /// exists (finite sets and unions are reconstructed from the data).
    std::string spec_string() const;

    double infimum() const;   // -inf when unbounded below
    double supremum() const;  // +inf when unbounded above

    bool contains(double t) const;

    /// Forward jump: least point of the scale strictly greater than t, or t
    /// itself when t is the finite supremum.
    double sigma(double t) const;
    /// Backward jump: greatest point strictly less than t, or t itself when
    /// t is the finite infimum.
    double rho(double t) const;
    /// Forward graininess sigma(t) - t.
    double mu(double t) const;
    /// Backward graininess t - rho(t).
    double nu(double t) const;

    PointClass classify(double t) const;

    /// False exactly when t is the finite supremum and left-scattered; the
    /// delta derivative is not uniquely defined there.
    bool in_kappa(double t) const;
    /// Dual condition for the nabla derivative: false exactly when t is the
    /// finite infimum and right-scattered.
    bool in_kappa_nabla(double t) const;

    /// All points of the scale in [a, b], with dense stretches filled at
    /// spacing <= max_step. Sorted; every element is a member of the scale.
    /// Throws EmptyWindow when the scale does not meet [a, b].
    std::vector<double> sample(double a, double b, double max_step) const;

    /// Relative membership tolerance at t.
    static double membership_tol(double t);

    // Accessors for the kind-specific data (used by integration and output).
    double lattice_step() const { return h_; }
    double lattice_offset() const { return offset_; }
    double q_ratio() const { return q_; }
    const std::vector<double>& points() const { return points_; }
    const std::vector<Interval>& intervals() const { return intervals_; }

private:
    TimeScale() = default;

    // Index of the interval containing t plus where in it t sits.
    enum class Pos { Interior, AtLo, AtHi };
    struct Loc {
        std::size_t index;
        Pos pos;
    };
    std::optional<Loc> locate(double t) const;
    std::optional<long long> lattice_index(double t) const;
    std::optional<long long> q_index(double t) const;

    ScaleKind kind_ = ScaleKind::Reals;
    double h_ = 1.0;
    double offset_ = 0.0;
    double q_ = 2.0;
    std::vector<double> points_;
    std::vector<Interval> intervals_;
    std::optional<int> cantor_depth_;
};

}  // namespace tscalc
