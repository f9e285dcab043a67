#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace placenet {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. line is 1-based, 0 when not applicable.
class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t line, const std::string& what)
        : Error(format(source, line, what)), source_(std::move(source)), line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& source, std::size_t line, const std::string& what) {
        std::string out = source.empty() ? std::string("<input>") : source;
        if (line > 0) out += ":" + std::to_string(line);
        return out + ": " + what;
    }

    std::string source_;
    std::size_t line_;
};

// Well-formed input that violates a precondition (unknown id, undersized class, ...).
class DataError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace placenet
