#include "divelect/numeric.hpp"

#include <limits>

#include "divelect/errors.hpp"

namespace divelect {

std::string rat_to_string(const Rat& r) {
  if (rat_den(r) == 1) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

std::string rat_to_decimal(const Rat& r, int digits) {
  BigInt pow10 = 1;
  for (int i = 0; i < digits; ++i) pow10 *= 10;
  BigInt num = rat_num(r) * pow10;
  BigInt den = rat_den(r);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scaled = (num + den / 2) / den;  // round half up in magnitude
  BigInt whole = scaled / pow10;
  BigInt frac = scaled % pow10;
  std::string frac_str = frac.str();
  frac_str.insert(frac_str.begin(), digits - frac_str.size(), '0');
  std::string out = whole.str() + "." + frac_str;
  if (negative && scaled != 0) out.insert(out.begin(), '-');
  return out;
}

BigInt rat_ceil(const Rat& r) {
  const BigInt num = rat_num(r);
  const BigInt den = rat_den(r);
  BigInt q = num / den;
  if (num > 0 && q * den != num) ++q;
  return q;
}

std::int64_t checked_int64(const BigInt& v, const char* what) {
  if (v < std::numeric_limits<std::int64_t>::min() ||
      v > std::numeric_limits<std::int64_t>::max()) {
    throw ResourceError(std::string(what) + " exceeds the 64-bit range");
  }
  return v.convert_to<std::int64_t>();
}

}  // namespace divelect
