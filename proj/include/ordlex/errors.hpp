// Error types shared across the library.
#ifndef ORDLEX_ERRORS_HPP
#define ORDLEX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ordlex {

// Bad input supplied by a caller or a file: rejected values, malformed text,
// out-of-range arguments. The CLI maps this to exit status 2.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input specifically (schemes, grammars, ordinal literals).
class parse_error : public input_error {
 public:
  explicit parse_error(const std::string& what) : input_error(what) {}
};

}  // namespace ordlex

#endif
