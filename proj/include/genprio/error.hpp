#pragma once

#include <stdexcept>
#include <string>

namespace genprio {

/// Malformed or inconsistent input data (files, cases, timeseries).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A CSV/text parse failure; the message carries file and line.
class ParseError : public DataError {
public:
    ParseError(const std::string& file, int line, const std::string& what)
        : DataError(file + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
          file_(file), line_(line) {}

    const std::string& file() const { return file_; }
    int line() const { return line_; }

private:
    std::string file_;
    int line_ = 0;
};

/// Invalid run configuration or user arguments.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A solver could not be set up (e.g. an island without a reference bus).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace genprio
