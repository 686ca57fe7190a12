#pragma once

#include <stdexcept>
#include <string>

namespace ssdo {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text. Carries the 1-based line/column when known (0 = unknown).
struct ParseError : Error {
    ParseError(const std::string& msg, int line_no = 0, int col_no = 0)
        : Error(locate(msg, line_no, col_no)), line(line_no), column(col_no) {}

    int line;
    int column;

private:
    static std::string locate(const std::string& msg, int line_no, int col_no) {
        if (line_no <= 0) return msg;
        std::string s = "line " + std::to_string(line_no);
        if (col_no > 0) s += ", column " + std::to_string(col_no);
        return s + ": " + msg;
    }
};

// Structurally invalid input: self-loop, duplicate edge, negative or
// non-finite weight, out-of-range vertex id, bad counts.
struct ValidationError : Error {
    using Error::Error;
};

// A documented precondition of an API call was violated.
struct ContractError : Error {
    using Error::Error;
};

// A build cannot proceed (unreachable vertex, strict mode refusing bridges).
struct BuildError : Error {
    using Error::Error;
};

// Infeasible or inconsistent generator parameters.
struct GenerationError : Error {
    using Error::Error;
};

// Query arguments outside the oracle's domain (e.g. the pair is not an edge).
struct QueryError : Error {
    using Error::Error;
};

// Corrupt, truncated, or mismatched serialized oracle.
struct ContainerError : Error {
    using Error::Error;
};

}  // namespace ssdo
