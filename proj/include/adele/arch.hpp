#pragma once

// Test functions at the real place: finite sums of modulated, shifted
// Gaussians
//
//     x -> amp * exp(-pi a (x - mu)^2) * exp(2 pi i xi x),   a > 0,
//
// a class closed under the Fourier transform with kernel exp(2 pi i x y).
//
// Lattice sums over (1/D)Z are truncated at |q| <= M, with M a lattice point
// beyond every shift. For q >= M the summand modulus is decreasing, so
// comparing each term with the integral over the preceding cell of width 1/D
// gives
//
//     sum_{|q| > M} |f(q)| <= D * sum_atoms |amp| exp(-pi a (M-|mu|)^2) / (pi a (M-|mu|)),
//
// using the Gaussian tail estimate
// \int_t^inf exp(-pi a s^2) ds <= exp(-pi a t^2) / (2 pi a t) on both sides.

#include <complex>
#include <functional>
#include <vector>

#include "adele/exact.hpp"

namespace adele {

struct ArchAtom {
  std::complex<double> amp{1.0, 0.0};
  double width = 1.0;  // a
  double shift = 0.0;  // mu
  double modulation = 0.0;  // xi

  /// Throws std::invalid_argument unless width > 0 and all fields are finite.
  void validate() const;
  friend bool operator==(const ArchAtom&, const ArchAtom&) = default;
};

struct ArchFunction {
  std::vector<ArchAtom> atoms;

  static ArchFunction gaussian() { return {{ArchAtom{}}}; }
  bool is_zero() const { return atoms.empty(); }
  friend bool operator==(const ArchFunction&, const ArchFunction&) = default;
};

struct BoundedValue {
  std::complex<double> value{};
  double bound = 0.0;

  BoundedValue& operator+=(const BoundedValue& o);
  friend BoundedValue operator+(BoundedValue a, const BoundedValue& b) { return a += b; }
};

BoundedValue to_bounded(const ComplexApprox& c);

ComplexApprox arch_eval_approx(const ArchFunction& f, double x);
std::complex<double> arch_eval(const ArchFunction& f, double x);
ArchFunction arch_fourier(const ArchFunction& f);
/// x -> f(-x).
ArchFunction arch_reflect(const ArchFunction& f);
/// Transform with kernel exp(-2 pi i x y). This is the real component of
/// the global character, which must be trivial on Q together with the
/// finite components psi_p(x) = e(frac_p(x)); every adelic transform uses it.
ArchFunction arch_fourier_global(const ArchFunction& f);
/// \int_R f(x) dx, with a rounding radius.
ComplexApprox arch_integral_approx(const ArchFunction& f);
std::complex<double> arch_integral(const ArchFunction& f);
/// Pointwise product g(x) = f(x * s) for s != 0 (a dilation; stays Gaussian).
ArchFunction arch_dilate(const ArchFunction& f, double s);

struct LatticeOptions {
  double tol = 1e-12;
  /// Multiplies the truncation index; used to check the reported bound.
  long cutoff_multiplier = 1;
};

/// Per-point finite-place weight for weighted lattice sums.
using LatticeWeight = std::function<ComplexApprox(const Rational& q)>;

/// \sum_{q in (1/D)Z} w(q) f(q) in ascending q, truncated where the tail
/// bound (scaled by weight_sup >= sup |w|) drops below tol. The returned
/// bound covers the tail and accumulated rounding.
BoundedValue weighted_lattice_sum(const ArchFunction& f, long denominator, const LatticeOptions& opts,
                                  const LatticeWeight& weight, double weight_sup, bool skip_zero);

/// \sum_{q in (1/D)Z} f(q).
BoundedValue lattice_sum(const ArchFunction& f, long denominator, double tol);
BoundedValue lattice_sum(const ArchFunction& f, long denominator, const LatticeOptions& opts);

/// Tail bound for truncation at index K (M = K/D); exposed for tests.
double lattice_tail_bound(const ArchFunction& f, long denominator, long index);

}  // namespace adele
