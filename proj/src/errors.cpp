#include "mapgrp/errors.hpp"

namespace mapgrp {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::branch_cut: return "branch-cut";
    case ErrorKind::geometry: return "geometry";
    case ErrorKind::precision: return "precision";
    case ErrorKind::evaluation: return "evaluation";
    case ErrorKind::numeric_blowup: return "numeric-blowup";
    case ErrorKind::ambiguity: return "ambiguity";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::sampling_resolution: return "sampling-resolution";
    case ErrorKind::parse: return "parse";
    case ErrorKind::schema: return "schema";
    }
    return "unknown";
}

ParseError::ParseError(const std::string& what, int line, int column)
    : Error(ErrorKind::parse,
            what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line), column_(column)
{
}

void throw_invalid(const std::string& what)
{
    throw Error(ErrorKind::invalid_argument, what);
}

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::geometry:
    case ErrorKind::unsupported:
    case ErrorKind::parse:
    case ErrorKind::schema:
        return 2;
    case ErrorKind::ambiguity:
        return 4;
    default:
        return 3;
    }
}

} // namespace mapgrp
