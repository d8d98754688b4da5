#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

namespace heapconn {

/// Exact arbitrary-precision rational coefficient.
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace heapconn
