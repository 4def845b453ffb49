#include "leadix/error.hpp"

#include <algorithm>
#include <sstream>

namespace leadix {

namespace {

std::string summarize(const std::vector<Issue>& issues) {
    std::ostringstream os;
    os << issues.size() << " validation error(s)";
    if (!issues.empty()) os << "; first: " << issues.front().message;
    return os.str();
}

std::string describe(const std::string& path, std::size_t line, const std::string& field,
                     const std::string& what) {
    std::ostringstream os;
    os << path;
    if (line > 0) os << ":" << line;
    if (!field.empty()) os << ": field '" << field << "'";
    os << ": " << what;
    return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : Error(summarize(issues)), issues_(std::move(issues)) {}

ParseError::ParseError(std::string path, std::size_t line, std::string field, const std::string& what)
    : Error(describe(path, line, field, what)), path_(std::move(path)), line_(line), field_(std::move(field)) {}

}  // namespace leadix
