#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freecum/rational.hpp"

namespace fc {

// Interned cumulant indeterminates k[a,b,...]; index lists are kept sorted decreasingly.
using KappaId = std::uint16_t;

KappaId kappa_id(std::vector<int> index);
const std::vector<int>& kappa_index(KappaId id);
int kappa_order(KappaId id);
std::string kappa_name(KappaId id);  // "k[2,1]"
// canonical order: by order, then by index (lexicographic on the decreasing lists)
bool kappa_less(KappaId a, KappaId b);

using Monomial = boost::container::small_vector<KappaId, 8>;  // sorted ids, repeated for powers

// Sparse polynomial in the cumulant indeterminates with rational coefficients.
class KappaPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  KappaPoly() = default;
  KappaPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  KappaPoly(long c) : KappaPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static KappaPoly kappa(const std::vector<int>& index);
  static KappaPoly from_id(KappaId id);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::size_t size() const { return terms_.size(); }

  KappaPoly operator+(const KappaPoly& o) const;
  KappaPoly operator-(const KappaPoly& o) const;
  KappaPoly operator-() const;
  KappaPoly operator*(const KappaPoly& o) const;
  KappaPoly& operator+=(const KappaPoly& o);
  KappaPoly& operator-=(const KappaPoly& o);
  KappaPoly& operator*=(const KappaPoly& o);
  KappaPoly scaled(const Rational& c) const;
  // division by a nonzero constant polynomial
  KappaPoly divided(const KappaPoly& c) const;
  bool operator==(const KappaPoly& o) const { return terms_ == o.terms_; }

  // partial derivative with respect to one indeterminate
  KappaPoly derivative(KappaId id) const;
  // ids of first-order indeterminates occurring
  std::vector<KappaId> first_order_ids() const;
  // every indeterminate replaced by a rational value
  Rational evaluate(const std::function<Rational(KappaId)>& value) const;
  // keeps the terms whose monomial satisfies pred
  KappaPoly filtered(const std::function<bool(const Monomial&)>& pred) const;

  std::string to_string() const;
  static KappaPoly parse(std::string_view s);

  // Raw accumulation helpers: terms may repeat or cancel until from_terms normalizes them.
  static KappaPoly from_terms(std::vector<Term> raw);
  static void append_into(const KappaPoly& a, const Rational& scale, std::vector<Term>& out);
  static void multiply_into(const KappaPoly& a, const KappaPoly& b, const Rational& scale, std::vector<Term>& out);

 private:
  void normalize();
  std::vector<Term> terms_;
};

// The multilinear Leibniz operator: D(f_1..f_d) = sum_q k[q_1..q_d] prod_i df_i/dk[q_i].
KappaPoly D_operator(const std::vector<KappaPoly>& args);

// Deterministic pseudo-random rational for each indeterminate.
Rational specialization_value(KappaId id, std::uint64_t seed);

bool is_zero(const KappaPoly& p);
bool is_zero(const Rational& q);

}  // namespace fc
