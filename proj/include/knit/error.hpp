#pragma once

#include <stdexcept>
#include <string>

namespace knit {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally broken input: ragged tables, out-of-range indices, bad JSON.
struct malformed_error : error {
  using error::error;
};

// A documented precondition was violated by the caller.
struct precondition_error : error {
  using error::error;
};

// A search would exceed the configured cap.
struct search_limit_error : error {
  long long cap;
  search_limit_error(const std::string& what, long long cap_)
      : error(what), cap(cap_) {}
};

}  // namespace knit
