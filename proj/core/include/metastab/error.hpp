#pragma once

#include <stdexcept>
#include <string>

namespace metastab {

// A caller broke a documented precondition (bad window size, invalid
// sampling, missing rate entry, ...).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or version-mismatched external input (JSON documents, CSV files).
class schema_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace metastab
