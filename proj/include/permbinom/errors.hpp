#ifndef PERMBINOM_ERRORS_HPP
#define PERMBINOM_ERRORS_HPP

#include <stdexcept>

namespace permbinom {

// A size cap (field order, scan length, table memory) was exceeded.
class capacity_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace permbinom

#endif  // PERMBINOM_ERRORS_HPP
