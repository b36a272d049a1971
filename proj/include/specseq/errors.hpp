#pragma once

#include <stdexcept>
#include <string>

namespace specseq {

// Each category maps to a distinct CLI exit code (see tools/specseq.cpp).

// Malformed input: bad JSON, missing fields, shape mismatches in a document.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A well-formed object violates one of its mathematical invariants.
class invariant_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid constructor parameters (e.g. a witness-boundary disc with r = 0).
class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Morphisms whose sources/targets do not line up.
class endpoint_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation applied to an object of the wrong category.
class category_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Programming errors in library use: dimension mismatches, mixed fields.
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace specseq
