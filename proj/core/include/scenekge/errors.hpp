#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scenekge {

// Base of every error the toolkit raises for bad input or failed computation.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line_number, std::size_t byte_column, const std::string& message)
        : Error("line " + std::to_string(line_number) + ", column " + std::to_string(byte_column) +
                ": " + message),
          line_number_(line_number),
          byte_column_(byte_column),
          detail_(message) {}

    // 1-based line of the offending input.
    std::size_t line_number() const noexcept { return line_number_; }
    // 0-based byte offset within that line.
    std::size_t byte_column() const noexcept { return byte_column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_number_;
    std::size_t byte_column_;
    std::string detail_;
};

class OntologyError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    FormatError(std::size_t line_number, const std::string& message)
        : Error("line " + std::to_string(line_number) + ": " + message), line_number_(line_number) {}

    std::size_t line_number() const noexcept { return line_number_; }

private:
    std::size_t line_number_;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

class SamplingError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace scenekge
