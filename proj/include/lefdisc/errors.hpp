#pragma once

#include <stdexcept>
#include <string>

namespace lefdisc {

// Malformed textual input (polynomials, rational lists, ring documents).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lefdisc
