#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace leadix {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A single problem found while validating a dataset.
struct Issue {
    std::string code;     // stable machine-readable tag, e.g. "duplicate_paper_id"
    std::string message;  // human-readable detail

    friend bool operator==(const Issue&, const Issue&) = default;
    friend auto operator<=>(const Issue&, const Issue&) = default;
};

/// Raised when a dataset fails validation. Carries every issue found, sorted.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Issue> issues);

    const std::vector<Issue>& issues() const noexcept { return issues_; }

private:
    std::vector<Issue> issues_;
};

/// Raised by the file readers. `line` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::string path, std::size_t line, std::string field, const std::string& what);

    const std::string& path() const noexcept { return path_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::string path_;
    std::size_t line_;
    std::string field_;
};

/// A metric that has no defined value for the given input (e.g. T with zero total output).
class UndefinedMetric : public Error {
public:
    using Error::Error;
};

}  // namespace leadix
