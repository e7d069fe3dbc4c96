#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace l0cert {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Input text could not be parsed. `line` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ZeroColumn : public Error {
public:
    explicit ZeroColumn(int index)
        : Error("column " + std::to_string(index + 1) + " has zero norm"), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

/// A column submatrix was singular within tolerance. Indices are 0-based.
class RankDeficient : public Error {
public:
    explicit RankDeficient(std::vector<int> indices);
    const std::vector<int>& indices() const noexcept { return indices_; }

private:
    std::vector<int> indices_;
};

class NotStandardized : public Error {
public:
    NotStandardized() : Error("instance columns are not standardized") {}
};

/// Correlation magnitudes tie across the boundary that defines the most-correlated set.
class TiedCorrelations : public Error {
public:
    using Error::Error;
};

/// Generator parameters broke one of the family's required inequalities.
class SpecViolation : public Error {
public:
    using Error::Error;
};

/// Subset enumeration would exceed the configured cap.
class TooLarge : public Error {
public:
    TooLarge(unsigned long long requested, unsigned long long cap);
    unsigned long long requested() const noexcept { return requested_; }
    unsigned long long cap() const noexcept { return cap_; }

private:
    unsigned long long requested_;
    unsigned long long cap_;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

}  // namespace l0cert
