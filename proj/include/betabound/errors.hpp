#pragma once

#include <stdexcept>
#include <string>

namespace betabound {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed arguments: empty matrices, row-count mismatches, bad config.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A column (after centering/residualization) is numerically dependent on
// the columns before it. Carries the offending column's label.
class RankDeficient : public Error {
public:
    explicit RankDeficient(std::string label)
        : Error("rank deficient: column '" + label + "' is linearly dependent"),
          column_(std::move(label)) {}

    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

// A vector required to be nonzero has (numerically) zero norm.
class DegenerateInput : public Error {
public:
    using Error::Error;
};

// The explanatory variable vanished after residualization.
class DegenerateExplanatory : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ColumnNotFound : public Error {
public:
    explicit ColumnNotFound(std::string label)
        : Error("column not found: '" + label + "'"), column_(std::move(label)) {}

    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

class TooFewRows : public Error {
public:
    using Error::Error;
};

class NodeBudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace betabound
