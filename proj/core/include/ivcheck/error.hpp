#pragma once

#include <stdexcept>
#include <string>

namespace ivcheck {

/// Raised on precondition and schema violations anywhere in the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ivcheck
