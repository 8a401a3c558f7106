#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace stdperm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace stdperm
