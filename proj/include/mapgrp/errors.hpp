#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace mapgrp {

enum class ErrorKind {
    invalid_argument,
    branch_cut,
    geometry,
    precision,
    evaluation,
    numeric_blowup,
    ambiguity,
    unsupported,
    sampling_resolution,
    parse,
    schema,
};

const char* to_string(ErrorKind kind);

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column);
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// Raised when a form or expression cannot be evaluated (pole, non-finite value).
/// `where` carries the path parameter or point that triggered it, if known.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, std::optional<double> parameter = std::nullopt)
        : Error(ErrorKind::evaluation, what), parameter_(parameter) {}
    std::optional<double> parameter() const noexcept { return parameter_; }

private:
    std::optional<double> parameter_;
};

[[noreturn]] void throw_invalid(const std::string& what);

/// CLI exit code for an error kind: 2 input, 3 numeric, 4 ambiguity.
int exit_code_for(ErrorKind kind);

} // namespace mapgrp
