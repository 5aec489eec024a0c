#pragma once

// Independent reference computations. Each one evaluates a quantity by brute
// force from pointwise values, never through the closed forms under test.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "adele/hecke.hpp"
#include "adele/localsb.hpp"
#include "adele/trace.hpp"

namespace oracle {

using namespace adele;

/// f^(y) by summing f(x) psi_p(x y) p^-m over x in p^-m Z_p / p^m Z_p.
/// Exact when f is supported in p^-m Z_p, constant on p^m cosets, and
/// v_p(y) >= -m.
inline Cyclotomic fourier_riemann(const LocalSB& f, const Rational& y, long m) {
  const Prime& p = f.p();
  const std::uint64_t count = ipow(p.value(), static_cast<unsigned>(2 * m));
  const Rational step = prime_power(p, -m);
  CyclotomicSum acc;
  for (std::uint64_t k = 0; k < count; ++k) {
    const Rational x = Rational(static_cast<unsigned long>(k)) * step;
    const Cyclotomic v = sb_eval(f, x);
    if (!v.is_zero()) acc.add(v * psi_p(x * y, p) * step);
  }
  return cyclo_reduce(acc);
}

/// \int f by counting cosets of p^m Z_p inside p^-m Z_p.
inline Cyclotomic integral_by_cosets(const LocalSB& f, long m) { return fourier_riemann(f, 0, m); }

/// \int_{Z_p^x} g(u) f(q u) d^x u as a sum over unit_coset_reps(p, k).
inline Cyclotomic unit_integral_coset_sum(const UnitFunction& g, const Rational& q, const LocalSB& f, long k) {
  const Prime& p = g.p();
  CyclotomicSum acc;
  for (const auto& u : unit_coset_reps(p, k)) {
    const Cyclotomic v = g.eval(u) * sb_eval(f, q * u);
    if (!v.is_zero()) acc.add(v);
  }
  return cyclo_reduce(acc) * unit_coset_volume(p, k);
}

/// Level at which both g and u -> f(q u) are constant on unit cosets.
inline long safe_unit_level(const UnitFunction& g, const Rational& q, const LocalSB& f) {
  long k = std::max(g.level(), 1L);
  if (!f.is_zero()) k = std::max(k, f.constancy_level() - vp(q, f.p()));
  return k;
}

/// \sum_{|n| <= N} f(n / D), straight summation in long double.
inline std::complex<long double> lattice_direct(const ArchFunction& f, long D, long N) {
  std::complex<long double> s = 0;
  for (long n = -N; n <= N; ++n) {
    const long double x = static_cast<long double>(n) / D;
    for (const auto& a : f.atoms) {
      const long double d = x - a.shift;
      const long double g = std::exp(-std::numbers::pi_v<long double> * a.width * d * d);
      const long double th = 2 * std::numbers::pi_v<long double> * a.modulation * x;
      s += std::complex<long double>(a.amp.real(), a.amp.imag()) * g * std::complex<long double>(std::cos(th), std::sin(th));
    }
  }
  return s;
}

/// \int f(x) exp(2 pi i sign x y) dx by composite Simpson on [-L, L].
inline std::complex<double> fourier_quadrature(const ArchFunction& f, double y, int sign = 1, double L = 14.0,
                                               long n = 40000) {
  const long double h = 2.0L * L / n;
  std::complex<long double> s = 0;
  for (long i = 0; i <= n; ++i) {
    const long double x = -L + h * i;
    std::complex<long double> v = 0;
    for (const auto& a : f.atoms) {
      const long double d = x - a.shift;
      const long double g = std::exp(-std::numbers::pi_v<long double> * a.width * d * d);
      const long double th = 2 * std::numbers::pi_v<long double> * (a.modulation * x + sign * x * y);
      v += std::complex<long double>(a.amp.real(), a.amp.imag()) * g * std::complex<long double>(std::cos(th), std::sin(th));
    }
    const long double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    s += w * v;
  }
  s *= h / 3;
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

/// \int_{Z_p^x} additive(q u) d^x u from pointwise values.
inline Cyclotomic local_orbit_average(const LocalSB& f, const Rational& q, long k) {
  return unit_integral_coset_sum(UnitFunction::units(f.p()), q, f, k);
}

/// \sum_{q in (1/D)Z, 0 < |q| <= M} \int_{Z^x} h(1, q u) d^x u for a q = 1 atom,
/// with the finite factors averaged by coset sums.
inline std::complex<double> additive_orbit_direct(const HeckeAtom& atom, long D, long M) {
  std::complex<double> total = 0;
  for (long n = -M * D; n <= M * D; ++n) {
    if (n == 0) continue;
    const Rational q = make_rational(n, D);
    std::complex<double> avg = atom.coeff * arch_eval(atom.arch, q.get_d());
    bool zero = false;
    for (const auto& [p, f] : atom.locals) {
      const long k = std::max(1L, f.additive.constancy_level() - vp(q, Prime(p)));
      const Cyclotomic local = f.unit.eval(1) * local_orbit_average(f.additive, q, k);
      if (local.is_zero()) {
        zero = true;
        break;
      }
      avg *= cyclo_eval(local).value();
    }
    if (zero) continue;
    // Unlisted primes need q in Z_p.
    BigInt den = q.get_den();
    for (const auto& [p, f] : atom.locals) {
      while (mpz_divisible_ui_p(den.get_mpz_t(), p)) den /= p;
    }
    if (den != 1) continue;
    total += avg;
  }
  return total;
}

}  // namespace oracle
