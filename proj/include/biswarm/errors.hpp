#pragma once

#include <stdexcept>
#include <string>

namespace biswarm {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Structural problems in an input file (ragged rows, bad header).
class FormatError : public Error {
public:
    using Error::Error;
};

/// A cell that is neither numeric nor the missing marker.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Matrix or mask dimensions out of contract.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A bicluster with an empty gene or condition selection.
class EmptySelectionError : public Error {
public:
    using Error::Error;
};

/// A selection whose submatrix contains no present cell.
class DegenerateSubmatrixError : public Error {
public:
    using Error::Error;
};

/// gbest requested from an empty archive.
class EmptyArchiveError : public Error {
public:
    using Error::Error;
};

/// No feasible bicluster found after all re-initialization attempts.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Invalid run or search configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Failure writing or renaming output artifacts.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace biswarm
