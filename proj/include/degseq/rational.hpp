#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace degseq {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace degseq
