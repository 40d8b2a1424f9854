#pragma once

#include <stdexcept>
#include <string>

namespace vvs {

// Malformed or out-of-contract user input (files, flags, configs).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A simulator or solver invariant did not hold. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define VVS_CHECK(cond, msg)                                             \
  do {                                                                   \
    if (!(cond))                                                         \
      throw ::vvs::InvariantError(std::string(__FILE__) + ":" +          \
                                  std::to_string(__LINE__) + ": " + msg); \
  } while (0)

}  // namespace vvs
