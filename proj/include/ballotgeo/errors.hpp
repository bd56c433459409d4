#ifndef BALLOTGEO_ERRORS_HPP
#define BALLOTGEO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ballotgeo {

/// Malformed input text (BLT files, ballot literals, profile files).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An exact computation was requested whose size exceeds the configured budget.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ballotgeo

#endif
