#pragma once

// Factorizable test functions on G = A^1 x| A. An atom is
//
//     h(q' u, x) = [q' = q] * coeff * prod_p unit_p(u_p) additive_p(x_p) * arch(x_inf)
//
// with q' in Q^x, u in prod Z_p^x, and the default factors 1_{Z_p^x} and
// 1_{Z_p} at every prime not listed.

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "adele/arch.hpp"
#include "adele/localsb.hpp"

namespace adele {

struct LocalFactor {
  UnitFunction unit;
  LocalSB additive;

  static LocalFactor defaults(Prime p) { return {UnitFunction::units(p), LocalSB::integers(p)}; }
  const Prime& p() const { return additive.p(); }
  bool is_default() const { return unit.is_units_indicator() && additive.is_integers_indicator(); }
  friend bool operator==(const LocalFactor&, const LocalFactor&) = default;
};

struct HeckeAtom {
  std::complex<double> coeff{1.0, 0.0};
  Rational q{1};
  std::map<std::uint64_t, LocalFactor> locals;  // non-default primes only
  ArchFunction arch = ArchFunction::gaussian();

  /// Stores f at its prime, or erases the entry when f is the default.
  void set_local(LocalFactor f);
  LocalFactor factor_at(const Prime& p) const;
  /// Throws std::invalid_argument on q = 0, bad arch atoms, or mismatched primes.
  void validate() const;
  friend bool operator==(const HeckeAtom&, const HeckeAtom&) = default;
};

struct HeckeElement {
  std::vector<HeckeAtom> atoms;

  /// q = 1, default factors everywhere, standard Gaussian.
  static HeckeElement standard();
  bool is_zero() const { return atoms.empty(); }
  void validate() const;

  HeckeElement& operator+=(const HeckeElement& o);
  HeckeElement& operator*=(std::complex<double> s);
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator*(HeckeElement a, std::complex<double> s) { return a *= s; }
  friend bool operator==(const HeckeElement&, const HeckeElement&) = default;
};

/// The point (q u, x) of G: u is 1 except at the listed primes, x equals
/// x_rational at every finite place except the listed corrections, and has
/// real coordinate x_inf.
struct GroupPoint {
  Rational q{1};
  std::map<std::uint64_t, Rational> unit_corrections;
  Rational x_rational{0};
  std::map<std::uint64_t, Rational> x_corrections;
  double x_inf = 0.0;

  /// The identity (1, 0).
  static GroupPoint identity() { return {}; }
  void validate() const;
};

ComplexApprox hecke_eval(const HeckeElement& h, const GroupPoint& pt);

/// Fourier transform in the additive variable against the global character
/// psi = prod_p psi_p * conj(psi_inf), which is trivial on Q: sb_fourier at
/// every prime and arch_fourier_global at the real place.
HeckeElement hecke_fourier(const HeckeElement& h);

struct OrbitSumOptions {
  LatticeOptions lattice;
  /// Refines the q-lattice (1/D)Z to (1/(D m))Z; the value must not move.
  long denominator_multiplier = 1;
};

/// For an atom with q = 1, the orbit integral of its additive slot over the
/// norm-one ideles scaled by x != 0:
///
///     sum_{r in Q^x} coeff * prod_p unit_p(1) \int_{Z_p^x} additive_p(r x u) d^x u * arch(r x).
///
/// Only finitely many denominators contribute; the numerator range is cut
/// where the Gaussian tail (times a bound on the finite-place weight) falls
/// below the tolerance.
BoundedValue idele_orbit_integral(const HeckeAtom& atom, const Rational& x, const OrbitSumOptions& opts);

/// Primes dividing n (n != 0), ascending.
std::vector<std::uint64_t> prime_divisors(const BigInt& n);

}  // namespace adele
