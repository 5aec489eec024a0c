#pragma once

// Valuations, fractional parts and the standard additive character at a
// finite place. Elements of Q_p are always represented by rationals.

#include <cstdint>
#include <limits>
#include <vector>

#include "adele/exact.hpp"

namespace adele {

class Prime {
 public:
  /// Throws std::invalid_argument unless value is prime.
  explicit Prime(std::uint64_t value);
  std::uint64_t value() const { return value_; }
  operator std::uint64_t() const { return value_; }  // NOLINT
  friend auto operator<=>(const Prime&, const Prime&) = default;

 private:
  std::uint64_t value_;
};

bool is_prime(std::uint64_t n);

/// Valuation of zero.
inline constexpr long kValuationInfinity = std::numeric_limits<long>::max();

long vp(const Rational& x, const Prime& p);
long vp(const BigInt& x, const Prime& p);

/// p^k as a rational (k may be negative).
Rational prime_power(const Prime& p, long k);

/// The r in [0, 1) with p-power denominator such that x - r lies in Z_p.
Rational frac_p(const Rational& x, const Prime& p);

/// psi_p(x) = e(frac_p(x)).
Cyclotomic psi_p(const Rational& x, const Prime& p);

/// Canonical representative of x modulo p^level Z_p: digits v_p(x)..level-1.
Rational reduce_mod_ball(const Rational& x, const Prime& p, long level);

/// The ball center + p^level Z_p with a canonical center.
class PadicBall {
 public:
  PadicBall(Prime p, const Rational& center, long level);

  const Prime& p() const { return p_; }
  const Rational& center() const { return center_; }
  long level() const { return level_; }

  bool contains(const Rational& x) const;
  /// True if *this is a subset of other (same prime).
  bool inside(const PadicBall& other) const;

  friend bool operator==(const PadicBall& a, const PadicBall& b) {
    return a.p_ == b.p_ && a.level_ == b.level_ && a.center_ == b.center_;
  }

 private:
  Prime p_;
  Rational center_;
  long level_;
};

inline bool ball_contains(const PadicBall& b, const Rational& x) { return b.contains(x); }

/// The phi(p^k) integers in [1, p^k] prime to p (coset representatives of
/// Z_p^x / (1 + p^k Z_p)).
std::vector<Rational> unit_coset_reps(const Prime& p, long k);

/// Multiplicative volume 1 / ((p-1) p^{k-1}) of one coset u(1 + p^k Z_p).
Rational unit_coset_volume(const Prime& p, long k);

/// u mod p^k as an integer, for u a p-adic unit given as a rational.
std::uint64_t unit_residue(const Rational& u, const Prime& p, long k);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

}  // namespace adele
