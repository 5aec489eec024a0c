#pragma once

// Locally constant compactly supported functions on Q_p, written as finite
// sums of character-twisted ball indicators
//
//     x -> coeff * psi_p(twist * x) * 1_{center + p^level Z_p}(x),
//
// together with their exact Fourier transform and integrals. Haar measure is
// normalised by vol(Z_p) = 1 additively and vol(Z_p^x) = 1 multiplicatively.

#include <vector>

#include "adele/exact.hpp"
#include "adele/padic.hpp"

namespace adele {

struct TwistedBall {
  Cyclotomic coeff;
  Rational twist;
  PadicBall ball;

  /// Canonical atom: twist reduced modulo p^{-level} Z_p, the dropped part
  /// folded into coeff as a constant phase.
  static TwistedBall make(Cyclotomic coeff, const Rational& twist, const PadicBall& ball);

  Cyclotomic value_at(const Rational& x) const;

  friend bool operator==(const TwistedBall& a, const TwistedBall& b) {
    return a.ball == b.ball && a.twist == b.twist && a.coeff == b.coeff;
  }
};

/// Canonical form: the maximal balls on which the function is a single
/// nonzero twisted exponential, ordered by (level, center). Two LocalSB are
/// equal as functions iff their canonical atom lists agree.
class LocalSB {
 public:
  explicit LocalSB(Prime p) : p_(p) {}
  LocalSB(Prime p, std::vector<TwistedBall> atoms);

  static LocalSB indicator(Prime p, const Rational& center, long level);
  /// 1_{Z_p}, the default local factor.
  static LocalSB integers(Prime p) { return indicator(p, 0, 0); }

  const Prime& p() const { return p_; }
  const std::vector<TwistedBall>& atoms() const { return atoms_; }
  bool is_zero() const { return atoms_.empty(); }
  bool is_integers_indicator() const;

  /// Smallest m with f constant on every coset of p^m Z_p.
  long constancy_level() const;
  /// Largest s with supp f inside p^s Z_p (0 for the zero function).
  long support_level() const;
  /// Upper bound for sup |f|.
  double sup_bound() const;

  LocalSB& operator+=(const LocalSB& o);
  LocalSB& operator*=(const Cyclotomic& c);
  friend LocalSB operator+(LocalSB a, const LocalSB& b) { return a += b; }
  friend LocalSB operator-(LocalSB a, const LocalSB& b);
  friend LocalSB operator*(LocalSB a, const Cyclotomic& c) { return a *= c; }
  friend LocalSB operator*(const Cyclotomic& c, LocalSB a) { return a *= c; }
  friend bool operator==(const LocalSB& a, const LocalSB& b) {
    return a.p_ == b.p_ && a.atoms_ == b.atoms_;
  }

 private:
  Prime p_;
  std::vector<TwistedBall> atoms_;
};

Cyclotomic sb_eval(const LocalSB& f, const Rational& x);
/// f^(y) = \int f(x) psi_p(x y) dx.
LocalSB sb_fourier(const LocalSB& f);
Cyclotomic sb_integral(const LocalSB& f);
/// x -> f(-x).
LocalSB sb_reflect(const LocalSB& f);
/// x -> conj(f(x)).
LocalSB sb_conj(const LocalSB& f);
/// Pointwise product.
LocalSB sb_mul(const LocalSB& f, const LocalSB& g);

// ---------------------------------------------------------------------------

struct UnitAtom {
  Cyclotomic coeff;
  PadicBall coset;  // inside Z_p^x, level >= 1

  friend bool operator==(const UnitAtom& a, const UnitAtom& b) {
    return a.coset == b.coset && a.coeff == b.coeff;
  }
};

/// Locally constant function on Z_p^x, canonically written on maximal
/// cosets u + p^k Z_p (k >= 1) of constancy.
class UnitFunction {
 public:
  explicit UnitFunction(Prime p) : p_(p) {}
  /// Throws std::invalid_argument if a coset is not inside Z_p^x or has level < 1.
  UnitFunction(Prime p, std::vector<UnitAtom> atoms);

  /// 1_{Z_p^x}, the default unit factor.
  static UnitFunction units(Prime p);

  const Prime& p() const { return p_; }
  const std::vector<UnitAtom>& atoms() const { return atoms_; }
  bool is_units_indicator() const;

  Cyclotomic eval(const Rational& u) const;
  /// Smallest k >= 0 such that the function is invariant under 1 + p^k Z_p.
  long conductor_exponent() const;
  /// Largest coset level used (>= 1).
  long level() const;

  friend bool operator==(const UnitFunction& a, const UnitFunction& b) {
    return a.p_ == b.p_ && a.atoms_ == b.atoms_;
  }

 private:
  Prime p_;
  std::vector<UnitAtom> atoms_;
};

/// \int_{Z_p^x} g(u) f(q u) d^x u, computed exactly by intersecting the
/// cosets of g with the scaled balls of f. q must be nonzero.
Cyclotomic unit_mult_integral(const UnitFunction& g, const Rational& q, const LocalSB& f);

}  // namespace adele
