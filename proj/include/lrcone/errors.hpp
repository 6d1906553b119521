#pragma once

#include <stdexcept>
#include <string>

namespace lrcone {

/// Work exceeded a configured cap (Hilbert dimension, chain enumeration, ...).
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine failed to converge or produced an unusable result.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A config document violated a schema constraint. Carries the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error("config field '" + field + "': " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// A config document is not valid JSON. Carries line/column of the error.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

} // namespace lrcone
