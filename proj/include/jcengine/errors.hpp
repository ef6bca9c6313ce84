#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace jcengine {

/// Two independent constructions of the same operator disagree beyond
/// tolerance. Almost always a transcription bug in a closed form.
class ConsistencyError : public std::runtime_error {
public:
    ConsistencyError(const std::string& check, double deviation, double tolerance)
        : std::runtime_error(check + ": deviation " + sci(deviation) + " exceeds tolerance " + sci(tolerance)),
          check_(check),
          deviation_(deviation),
          tolerance_(tolerance) {}

    const std::string& check() const { return check_; }
    double deviation() const { return deviation_; }
    double tolerance() const { return tolerance_; }

private:
    static std::string sci(double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", x);
        return buf;
    }

    std::string check_;
    double deviation_;
    double tolerance_;
};

/// An operator moved amplitude out of a subspace it was asserted to leave invariant.
class InvarianceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace jcengine
