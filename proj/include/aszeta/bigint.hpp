#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace aszeta {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt ipow(std::uint64_t base, std::uint64_t e) {
  BigInt result = 1;
  BigInt b = base;
  while (e > 0) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1u;
  }
  return result;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace aszeta
