#ifndef SMATCH_ERRORS_HPP
#define SMATCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace smatch {

// Invalid arguments, malformed inputs, violated invariants.  CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Missing or unreadable/unwritable files.  CLI exit code 2.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Requests beyond the designed problem-size ceilings.  CLI exit code 3.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace smatch

#endif
