#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freecum/kappa.hpp"
#include "freecum/rational.hpp"

namespace fc {

// Precision carried by exact polynomials.
inline constexpr int kExact = 1 << 20;
inline constexpr int kMaxVars = 8;

// Packed exponent vector, one byte per variable.
using ExpKey = std::uint64_t;

inline int key_exp(ExpKey k, int i) { return static_cast<int>((k >> (8 * i)) & 0xffu); }
inline int key_degree(ExpKey k) { return static_cast<int>((k * 0x0101010101010101ull) >> 56); }
ExpKey make_key(const std::vector<int>& exps);
std::vector<int> key_exps(ExpKey k, int nvars);

// Truncated multivariate power series in nvars variables: every coefficient of total
// degree <= prec is known exactly, nothing beyond prec is stored.
template <class R>
class Series {
 public:
  struct Term {
    ExpKey key;
    R coef;
  };

  explicit Series(int nvars = 1, int prec = kExact);
  static Series constant(int nvars, const R& c, int prec = kExact);
  static Series monomial(int nvars, const std::vector<int>& exps, const R& c, int prec = kExact);
  static Series variable(int nvars, int i, int prec = kExact);
  // combines repeated keys, drops zeros and everything beyond prec
  static Series from_terms(int nvars, int prec, std::vector<Term> raw);

  int nvars() const { return nvars_; }
  int prec() const { return prec_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // lowest total degree present (kExact for the zero series)
  int valuation() const;
  R coefficient(const std::vector<int>& exps) const;
  R coefficient(ExpKey k) const;
  R constant_term() const { return coefficient(ExpKey{0}); }

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const;
  Series operator*(const Series& o) const;
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }
  Series scaled(const Rational& c) const;
  Series times(const R& c) const;
  bool operator==(const Series& o) const;

  Series truncated(int d) const;
  Series with_prec(int d) const { return truncated(d); }
  Series pow(int k) const;
  // d/dY_i; the precision drops by one
  Series deriv(int i) const;
  // Y_i d/dY_i
  Series theta(int i) const;
  // multiplication by Y_i^k
  Series shifted(int i, int k) const;
  Series unit_inverse() const;
  Series log_one_minus() const;
  // quotient by (Y_a - Y_b); throws DomainError when the remainder is nonzero
  Series divided_difference(int a, int b) const;
  std::optional<Series> try_divided_difference(int a, int b) const;
  // substitutes the univariate series g (zero constant term) for variable i
  Series compose(int i, const Series& g) const;
  // variable i goes to variable perm[i] of a space with new_nvars variables
  Series relabeled(const std::vector<int>& perm, int new_nvars) const;
  Series relabeled(const std::vector<int>& perm) const { return relabeled(perm, nvars_); }

  template <class F>
  auto mapped(F&& fn) const -> Series<decltype(fn(std::declval<const R&>()))> {
    using R2 = decltype(fn(std::declval<const R&>()));
    std::vector<typename Series<R2>::Term> raw;
    raw.reserve(terms_.size());
    for (const auto& t : terms_) raw.push_back({t.key, fn(t.coef)});
    return Series<R2>::from_terms(nvars_, prec_, std::move(raw));
  }

  // "(3/2)*k[2]*Y1^2*Y2 + k[1,1]*Y1*Y2"; terms by increasing degree
  std::string to_string(const std::string& symbol = "Y") const;

 private:
  int nvars_;
  int prec_;
  std::vector<Term> terms_;  // sorted by (degree, key)
};

extern template class Series<KappaPoly>;
extern template class Series<Rational>;

using KSeries = Series<KappaPoly>;
using QSeries = Series<Rational>;

// Header line "# D=<prec> vars=Y1,Y2" followed by the body.
std::string dump_series(const KSeries& s, const std::string& symbol = "Y");
KSeries parse_series(std::string_view text);

QSeries specialize(const KSeries& s, std::uint64_t seed);

// D(f_1..f_d) acting on the first-order cumulants of the coefficients.
KSeries D_operator(const std::vector<KSeries>& args);

// A sum of coefficient times tensor products of series, one factor per block.
struct TensorTerm {
  KappaPoly coef;
  std::vector<KSeries> factors;
};
using TensorState = std::vector<TensorTerm>;

// D-tensor over the factor indices in K.
TensorState D_tensor(const std::vector<int>& K, const TensorState& state);
// multiplies all factors (which must live in one variable space) and sums
KSeries P_product(const TensorState& state);

// Ring context: the value of an indeterminate, symbolic or specialized.
template <class R>
struct Ring;

template <>
struct Ring<KappaPoly> {
  KappaPoly kappa(const std::vector<int>& idx) const { return KappaPoly::kappa(idx); }
  bool symbolic() const { return true; }
};

template <>
struct Ring<Rational> {
  std::uint64_t seed = 1;
  Rational kappa(const std::vector<int>& idx) const { return specialization_value(kappa_id(idx), seed); }
  bool symbolic() const { return false; }
};

// Series with simple poles 1/(Y_a - Y_b)^e: the value is numerator / prod (Y_a - Y_b)^{e_ab}.
template <class R>
class PolarSeries {
 public:
  PolarSeries();
  PolarSeries(const Series<R>& s);  // NOLINT(google-explicit-constructor)
  static PolarSeries pole(int nvars, int a, int b, int e);
  // Y_a Y_b / (Y_a - Y_b)^2
  static PolarSeries kernel(int nvars, int a, int b);

  int nvars() const { return num_.nvars(); }
  const Series<R>& numerator() const { return num_; }
  int exponent(int a, int b) const;
  int pole_degree() const;
  // precision of the represented function
  int prec() const { return num_.prec() - pole_degree(); }

  PolarSeries operator+(const PolarSeries& o) const;
  PolarSeries operator-(const PolarSeries& o) const;
  PolarSeries operator-() const;
  PolarSeries operator*(const PolarSeries& o) const;
  PolarSeries& operator+=(const PolarSeries& o) { return *this = *this + o; }
  PolarSeries& operator-=(const PolarSeries& o) { return *this = *this - o; }
  PolarSeries& operator*=(const PolarSeries& o) { return *this = *this * o; }
  PolarSeries scaled(const Rational& c) const;

  PolarSeries theta(int i) const;
  PolarSeries deriv(int i) const;
  PolarSeries relabeled(const std::vector<int>& perm) const;
  // cancels every pole factor that divides the numerator
  PolarSeries reduced() const;
  // the regular series; throws DomainError if a pole survives
  Series<R> to_series() const;
  bool is_regular() const { return pole_degree() == 0; }
  bool numerator_is_zero() const { return num_.is_zero(); }
  // substitutes Y_i = g(X_i) in every variable; g univariate with g(0)=0, g'(0)=1
  PolarSeries compose_all(const Series<R>& g) const;

 private:
  Series<R> num_;
  std::vector<int> exps_;  // nvars*nvars, only a<b used

  int& e(int a, int b) { return exps_[a * kMaxVars + b]; }
  int e(int a, int b) const { return exps_[a * kMaxVars + b]; }
  PolarSeries raised_to(const std::vector<int>& target) const;
};

extern template class PolarSeries<KappaPoly>;
extern template class PolarSeries<Rational>;

// Difference polynomial (Y_a - Y_b)^k as an exact series.
template <class R>
Series<R> difference_power(int nvars, int a, int b, int k);

}  // namespace fc
