#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace divelect {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Renders an exact rational: "3" for integers, "3/4" otherwise.
std::string rat_to_string(const Rat& r);

/// Renders an exact rational rounded half-up to `digits` decimal places,
/// always emitting the full number of places ("0.857143").
std::string rat_to_decimal(const Rat& r, int digits);

/// Smallest integer >= r.
BigInt rat_ceil(const Rat& r);

/// Converts to int64, throwing ResourceError when out of range.
std::int64_t checked_int64(const BigInt& v, const char* what);

}  // namespace divelect
