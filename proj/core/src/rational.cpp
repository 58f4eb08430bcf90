#include "freecum/rational.hpp"

#include <vector>

namespace fc {

Rational parse_rational(std::string_view s) {
  std::string t;
  for (char c : s)
    if (c != ' ' && c != '(' && c != ')') t.push_back(c);
  if (t.empty()) throw DomainError("empty rational");
  if (t.front() == '+') t.erase(0, 1);
  Rational q;
  if (q.set_str(t, 10) != 0) throw DomainError("bad rational: " + std::string(s));
  if (q.get_den() == 0) throw DomainError("zero denominator");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer factorial(long n) {
  if (n < 0) throw DomainError("factorial of a negative number");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer catalan(long n) { return binomial(2 * n, n) / (n + 1); }

Integer bell(long n) {
  std::vector<Integer> row{1};
  for (long i = 0; i < n; ++i) {
    std::vector<Integer> next{row.back()};
    for (const auto& x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace fc
