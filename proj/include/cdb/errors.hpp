#pragma once

#include <stdexcept>
#include <string>

namespace cdb {

// Thrown when an input violates a precondition (NaN coordinates, empty
// point sets, bad grid sizes, malformed JSON bodies, ...).
class InvalidInput : public std::runtime_error {
 public:
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a sampled-grid operation cannot be carried out at the
// requested resolution (cutoff too large for the grid, atoms that do not
// lie on the grid, incompatible grid sizes).
class ResolutionError : public std::runtime_error {
 public:
  explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a measure fails to be the surface area measure of a convex
// body (closure condition violated beyond tolerance).
class MeasureError : public std::runtime_error {
 public:
  explicit MeasureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cdb
