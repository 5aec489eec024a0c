#pragma once

// Exact rationals and cyclotomic numbers, plus a small float-with-radius type
// used wherever exact values are finally turned into doubles.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adele {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "n" or "p/q" (optional leading '-'); throws std::invalid_argument.
Rational parse_rational(std::string_view text);
/// "p/q", or "n" when the denominator is 1.
std::string to_string(const Rational& r);

Rational make_rational(long num, long den = 1);

/// Reduces r into [0, 1).
Rational mod_one(const Rational& r);

double upper_double(const Rational& r);  // |r| rounded up

// ---------------------------------------------------------------------------
// ComplexApprox: a double-precision complex value together with a radius that
// bounds its distance to the exact value it stands for.

struct ComplexApprox {
  double re = 0.0;
  double im = 0.0;
  double err = 0.0;

  ComplexApprox() = default;
  ComplexApprox(double r, double i, double e = 0.0) : re(r), im(i), err(e) {}
  explicit ComplexApprox(std::complex<double> z, double e = 0.0)
      : re(z.real()), im(z.imag()), err(e) {}

  std::complex<double> value() const { return {re, im}; }
  double magnitude_bound() const;  // upper bound for |re + i im| + err

  ComplexApprox& operator+=(const ComplexApprox& o);
  ComplexApprox& operator*=(const ComplexApprox& o);
  friend ComplexApprox operator+(ComplexApprox a, const ComplexApprox& b) { return a += b; }
  friend ComplexApprox operator*(ComplexApprox a, const ComplexApprox& b) { return a *= b; }
  friend ComplexApprox operator-(const ComplexApprox& a) { return {-a.re, -a.im, a.err}; }
  friend ComplexApprox operator-(ComplexApprox a, const ComplexApprox& b) { return a += -b; }
};

/// Exact complex constant (err 0).
inline ComplexApprox exact_complex(std::complex<double> z) { return ComplexApprox(z, 0.0); }

// ---------------------------------------------------------------------------
// Cyclotomic numbers.
//
// Stored relative to the minimal conductor N: a sorted list of exponents k
// (meaning e(k/N) = exp(2 pi i k / N)) drawn from the Zumbroich basis of
// Q(zeta_N), each with a nonzero rational coefficient. Every value built
// through the public interface is in this form, so == is exact equality of
// complex numbers.

class ConductorOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Largest conductor accepted by cyclotomic arithmetic (default 10^6).
std::uint64_t conductor_limit();
void set_conductor_limit(std::uint64_t limit);

class Cyclotomic;

/// Unreduced sum of rational multiples of roots of unity.
class CyclotomicSum {
 public:
  CyclotomicSum& add(const Rational& angle, const Rational& coeff);
  CyclotomicSum& add(const Cyclotomic& c);
  bool empty() const { return terms_.empty(); }
  const std::vector<std::pair<Rational, Rational>>& terms() const { return terms_; }

 private:
  std::vector<std::pair<Rational, Rational>> terms_;
};

class Cyclotomic {
 public:
  struct Term {
    Rational angle;  // in [0, 1)
    Rational coeff;
  };

  Cyclotomic() = default;  // zero
  explicit Cyclotomic(const Rational& r);
  Cyclotomic(long r) : Cyclotomic(Rational(r)) {}  // NOLINT: integer literals are natural here

  /// e(r mod 1).
  static Cyclotomic root_of_unity(const Rational& r);
  static Cyclotomic reduce(const CyclotomicSum& sum);

  bool is_zero() const { return terms_.empty(); }
  std::uint64_t conductor() const { return conductor_; }
  std::size_t size() const { return terms_.size(); }
  std::vector<Term> terms() const;
  /// The value if it is rational.
  bool is_rational() const { return conductor_ == 1; }
  Rational rational_part_if_rational() const;

  /// Upper bound for the absolute value (sum of |coeff|).
  double abs_bound() const;

  Cyclotomic conj() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& r);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
  friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }
  friend Cyclotomic operator-(Cyclotomic a) { return a *= Rational(-1); }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

 private:
  friend class CyclotomicReducer;
  std::uint64_t conductor_ = 1;
  std::vector<std::pair<std::uint64_t, Rational>> terms_;
};

/// e(r mod 1), canonical.
inline Cyclotomic root_of_unity(const Rational& r) { return Cyclotomic::root_of_unity(r); }

/// Canonical form of an arbitrary sum. Idempotent on canonical input.
Cyclotomic cyclo_reduce(const CyclotomicSum& sum);
inline Cyclotomic cyclo_reduce(const Cyclotomic& c) { return c; }

/// Double-precision value with a rounding radius.
ComplexApprox cyclo_eval(const Cyclotomic& c);

std::string to_string(const Cyclotomic& c);

}  // namespace adele
