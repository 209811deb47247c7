#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tscalc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A point was passed to a scale operator but does not belong to the scale.
class PointNotInScale : public Error {
public:
    PointNotInScale(double t, const std::string& scale_desc)
        : Error("point " + std::to_string(t) + " is not in the time scale (" + scale_desc + ")"),
          point(t) {}
    double point;
};

/// Delta derivative requested at the maximal left-scattered point, where it
/// is not uniquely defined. Also used for the dual condition of the nabla
/// derivative at a right-scattered minimum.
class NotInKappa : public Error {
public:
    explicit NotInKappa(const std::string& what) : Error(what) {}
};

/// A window [a, b] has empty intersection with the scale.
class EmptyWindow : public Error {
public:
    explicit EmptyWindow(const std::string& what) : Error(what) {}
};

/// A scale description string or JSON document could not be parsed.
class BadScaleSpec : public Error {
public:
    explicit BadScaleSpec(const std::string& what) : Error(what) {}
};

/// A function evaluation produced NaN or infinity.
class NonFiniteValue : public Error {
public:
    explicit NonFiniteValue(const std::string& what) : Error(what) {}
};

/// Adaptive quadrature exhausted its subdivision budget above tolerance.
class QuadratureNoConvergence : public Error {
public:
    explicit QuadratureNoConvergence(const std::string& what) : Error(what) {}
};

/// A catalog entry was evaluated outside the domain of its function.
class DomainViolation : public Error {
public:
    explicit DomainViolation(const std::string& what) : Error(what) {}
};

/// A catalog entry was configured with parameters violating its constraints.
class ParamViolation : public Error {
public:
    explicit ParamViolation(const std::string& what) : Error(what) {}
};

/// Expression text failed to parse. Carries the byte offset of the failure
/// and the set of tokens that would have been accepted there.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t byte_offset, std::vector<std::string> expected_tokens,
                const std::string& detail)
        : Error(compose(byte_offset, expected_tokens, detail)),
          offset(byte_offset),
          expected(std::move(expected_tokens)) {}

    std::size_t offset;
    std::vector<std::string> expected;

private:
    static std::string compose(std::size_t off, const std::vector<std::string>& exp,
                               const std::string& detail) {
        std::string msg = "syntax error at offset " + std::to_string(off) + ": " + detail;
        if (!exp.empty()) {
            msg += " (expected ";
            for (std::size_t i = 0; i < exp.size(); ++i) {
                if (i) msg += ", ";
                msg += exp[i];
            }
            msg += ")";
        }
        return msg;
    }
};

/// Expression tree exceeded the supported nesting depth.
class DepthExceeded : public Error {
public:
    explicit DepthExceeded(const std::string& what) : Error(what) {}
};

/// An expression node kind is not supported by the requested operation.
class UnsupportedNode : public Error {
public:
    explicit UnsupportedNode(const std::string& what) : Error(what) {}
};

}  // namespace tscalc
