#pragma once

#include <gmpxx.h>

#include <string>

namespace khr {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace khr
