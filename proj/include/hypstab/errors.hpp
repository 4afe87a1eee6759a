#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hypstab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A point or vector fails its model constraint (hyperboloid, light cone, unit spacelike).
class ConstraintViolation : public Error {
public:
    using Error::Error;
};

class DegenerateSimplex : public Error {
public:
    using Error::Error;
};

/// The linear system is solvable in exact arithmetic but too ill-conditioned in doubles.
class NumericallySingular : public Error {
public:
    using Error::Error;
};

/// A face has no incenter (a 1-simplex with an ideal endpoint).
class UndefinedIncenter : public Error {
public:
    using Error::Error;
};

class InvalidTriangulation : public Error {
public:
    InvalidTriangulation(const std::string& what, std::vector<std::string> issues)
        : Error(what), issues_(std::move(issues)) {}
    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    std::vector<std::string> issues_;
};

/// A cover specification has nontrivial holonomy around a codimension-2 face.
class BranchedCover : public Error {
public:
    BranchedCover(const std::string& what, std::string cycle)
        : Error(what), cycle_(std::move(cycle)) {}
    const std::string& cycle() const noexcept { return cycle_; }

private:
    std::string cycle_;
};

class SearchExhausted : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace hypstab
