#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unitfrac {

// Argument outside the mathematical domain (e.g. theta not in (0,1]).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed textual input: rationals, sequence files, spec strings.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A weak greedy policy or explicit denominator list breaks the run invariants.
class PolicyViolation : public std::invalid_argument {
public:
    PolicyViolation(const std::string& what, std::size_t index)
        : std::invalid_argument(what), index_(index) {}

    // 1-based index of the offending term.
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

// Target sequence is not non-decreasing, starts below 2, or shows no jump in range.
class InvalidSequence : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An enclosure could not be tightened enough to certify a strict inequality.
class DepthExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace unitfrac
