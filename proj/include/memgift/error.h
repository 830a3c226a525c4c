#ifndef MEMGIFT_ERROR_H_
#define MEMGIFT_ERROR_H_

#include <stdexcept>
#include <string>

namespace memgift {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input: bad hex, wrong block width, unreadable input file.
class InputError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration: unknown parameter keys, out-of-range device values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A simulated-hardware contract was violated (e.g. stepping past the final
// round, sensing a column with no selected cell).
class SimulationError : public Error {
 public:
  using Error::Error;
};

}  // namespace memgift

#endif  // MEMGIFT_ERROR_H_
