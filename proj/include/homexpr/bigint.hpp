#ifndef HOMEXPR_BIGINT_HPP
#define HOMEXPR_BIGINT_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace homexpr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using u128 = unsigned __int128;

inline BigInt to_big(u128 v) {
  BigInt hi = static_cast<unsigned long long>(v >> 64);
  BigInt lo = static_cast<unsigned long long>(v);
  return (hi << 64) | lo;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

// "p/q" with q omitted when it is 1.
inline std::string to_string(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& s) {
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

}  // namespace homexpr

#endif  // HOMEXPR_BIGINT_HPP
