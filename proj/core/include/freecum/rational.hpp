#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace fc {

using Rational = mpq_class;
using Integer = mpz_class;

struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);

Integer factorial(long n);
Integer binomial(long n, long k);
Integer catalan(long n);
Integer bell(long n);

inline int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace fc
