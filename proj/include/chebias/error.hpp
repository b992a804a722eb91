#pragma once

#include <stdexcept>
#include <string>

namespace chebias {

/// Raised for violated preconditions and malformed input throughout the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field data whose automorphisms or Frobenius matches are inconsistent.
class corrupt_data : public error {
 public:
  using error::error;
};

}  // namespace chebias
