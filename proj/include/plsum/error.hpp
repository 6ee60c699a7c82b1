#pragma once

#include <stdexcept>
#include <string>

namespace plsum {

// Raised for problems with user-supplied data: unreadable files, malformed
// lines, protocol violations. The CLI maps this to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace plsum
