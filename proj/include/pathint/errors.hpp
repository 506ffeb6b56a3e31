#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathint {

/// A computed value left the representable/finite domain (NaN, inf, log of 0, ...).
class NumericDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A verified precondition of a theorem-backed routine failed on concrete data.
/// Carries the offending triple (s, u, t) and the defect/bound ratio.
class PremiseFailed : public std::runtime_error {
public:
    PremiseFailed(const std::string& what, double s, double u, double t, double ratio)
        : std::runtime_error(what), s(s), u(u), t(t), ratio(ratio) {}

    double s;
    double u;
    double t;
    double ratio;
};

/// Least-squares fit had a singular normal equation (no regularizer, zero design).
class SingularFit : public std::runtime_error {
public:
    SingularFit(const std::string& what, std::size_t index)
        : std::runtime_error(what), index(index) {}

    std::size_t index;
};

/// A matrix that must be inverted was singular at some grid time.
class NonInvertible : public std::runtime_error {
public:
    NonInvertible(const std::string& what, double time, std::size_t index)
        : std::runtime_error(what), time(time), index(index) {}

    double time;
    std::size_t index;
};

} // namespace pathint
