#include "adele/hecke.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace adele {

std::vector<std::uint64_t> prime_divisors(const BigInt& n) {
  if (n == 0) throw std::invalid_argument("prime_divisors of zero");
  BigInt m = abs(n);
  std::vector<std::uint64_t> out;
  for (unsigned long d = 2; BigInt(d) * d <= m; ++d) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      out.push_back(d);
      while (mpz_divisible_ui_p(m.get_mpz_t(), d)) m /= d;
    }
  }
  if (m > 1) {
    if (!m.fits_ulong_p()) throw std::invalid_argument("prime factor too large");
    out.push_back(m.get_ui());
  }
  return out;
}

void HeckeAtom::set_local(LocalFactor f) {
  if (f.unit.p() != f.additive.p()) throw std::invalid_argument("local factor mixes primes");
  const std::uint64_t p = f.p().value();
  if (f.is_default()) {
    locals.erase(p);
  } else {
    locals.insert_or_assign(p, std::move(f));
  }
}

LocalFactor HeckeAtom::factor_at(const Prime& p) const {
  auto it = locals.find(p.value());
  return it == locals.end() ? LocalFactor::defaults(p) : it->second;
}

void HeckeAtom::validate() const {
  if (q == 0) throw std::invalid_argument("atom q must be a nonzero rational");
  for (const auto& [p, f] : locals) {
    if (f.unit.p().value() != p || f.additive.p().value() != p) {
      throw std::invalid_argument("local factor stored under the wrong prime");
    }
  }
  for (const auto& a : arch.atoms) a.validate();
}

HeckeElement HeckeElement::standard() { return HeckeElement{{HeckeAtom{}}}; }

void HeckeElement::validate() const {
  for (const auto& a : atoms) a.validate();
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& o) {
  atoms.insert(atoms.end(), o.atoms.begin(), o.atoms.end());
  return *this;
}

HeckeElement& HeckeElement::operator*=(std::complex<double> s) {
  for (auto& a : atoms) a.coeff *= s;
  return *this;
}

void GroupPoint::validate() const {
  if (q == 0) throw std::invalid_argument("group point q must be nonzero");
  for (const auto& [p, u] : unit_corrections) {
    if (u == 0 || vp(u, Prime(p)) != 0) {
      throw std::invalid_argument("unit correction " + to_string(u) + " is not a unit at " + std::to_string(p));
    }
  }
}

ComplexApprox hecke_eval(const HeckeElement& h, const GroupPoint& pt) {
  pt.validate();
  std::set<std::uint64_t> point_primes;
  for (const auto& [p, u] : pt.unit_corrections) point_primes.insert(p);
  for (const auto& [p, x] : pt.x_corrections) point_primes.insert(p);
  for (auto p : prime_divisors(pt.x_rational.get_den())) point_primes.insert(p);

  ComplexApprox total;
  for (const auto& atom : h.atoms) {
    if (atom.q != pt.q) continue;
    std::set<std::uint64_t> primes = point_primes;
    for (const auto& [p, f] : atom.locals) primes.insert(p);
    ComplexApprox value = exact_complex(atom.coeff);
    for (auto pv : primes) {
      const Prime p(pv);
      const LocalFactor f = atom.factor_at(p);
      auto uit = pt.unit_corrections.find(pv);
      auto xit = pt.x_corrections.find(pv);
      const Rational& u = uit == pt.unit_corrections.end() ? Rational(1) : uit->second;
      const Rational& x = xit == pt.x_corrections.end() ? pt.x_rational : xit->second;
      const Cyclotomic local = f.unit.eval(u) * sb_eval(f.additive, x);
      if (local.is_zero()) {
        value = {};
        break;
      }
      value *= cyclo_eval(local);
    }
    if (value.re == 0.0 && value.im == 0.0 && value.err == 0.0) continue;
    value *= arch_eval_approx(atom.arch, pt.x_inf);
    total += value;
  }
  return total;
}

HeckeElement hecke_fourier(const HeckeElement& h) {
  HeckeElement out;
  out.atoms.reserve(h.atoms.size());
  for (const auto& atom : h.atoms) {
    HeckeAtom t;
    t.coeff = atom.coeff;
    t.q = atom.q;
    t.arch = arch_fourier_global(atom.arch);
    for (const auto& [p, f] : atom.locals) t.set_local(LocalFactor{f.unit, sb_fourier(f.additive)});
    out.atoms.push_back(std::move(t));
  }
  return out;
}

namespace {

struct LocalOrbit {
  Prime p;
  ComplexApprox unit_at_one;
  LocalSB additive;
  long constancy;
  long support;
  std::map<Rational, ComplexApprox> memo;

  ComplexApprox at(const Rational& y) {
    const long v = vp(y, p);
    if (v < support) return {};
    if (v >= constancy) return unit_at_one * cyclo_eval(sb_eval(additive, 0));
    Rational key = reduce_mod_ball(y, p, constancy);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    ComplexApprox value = unit_at_one * cyclo_eval(unit_mult_integral(UnitFunction::units(p), key, additive));
    memo.emplace(std::move(key), value);
    return value;
  }
};

long checked_long(const BigInt& n, const char* what) {
  if (!n.fits_slong_p()) throw std::overflow_error(std::string(what) + " does not fit in a machine word");
  return n.get_si();
}

}  // namespace

BoundedValue idele_orbit_integral(const HeckeAtom& atom, const Rational& x, const OrbitSumOptions& opts) {
  if (x == 0) throw std::invalid_argument("idele_orbit_integral: x must be nonzero");
  if (opts.denominator_multiplier < 1) throw std::invalid_argument("denominator multiplier must be >= 1");

  std::vector<LocalOrbit> orbits;
  double weight_sup = std::abs(atom.coeff);
  BigInt denominator = 1;
  for (const auto& [pv, f] : atom.locals) {
    const Cyclotomic u1 = f.unit.eval(1);
    if (u1.is_zero() || f.additive.is_zero()) return {};
    LocalOrbit o{f.p(), cyclo_eval(u1), f.additive, f.additive.constancy_level(), f.additive.support_level(), {}};
    weight_sup *= o.unit_at_one.magnitude_bound() * f.additive.sup_bound();
    if (o.support < 0) {
      BigInt pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), pv, static_cast<unsigned long>(-o.support));
      denominator *= pk;
    }
    orbits.push_back(std::move(o));
  }
  if (weight_sup == 0.0 || atom.arch.is_zero()) return {};

  // r x in (1/D)Z forces r in (1/(D |num x|))Z.
  denominator *= abs(x.get_num());
  denominator *= opts.denominator_multiplier;
  const long lattice_den = checked_long(denominator, "lattice denominator");

  const std::complex<double> coeff = atom.coeff;
  LatticeWeight weight = [&](const Rational& r) -> ComplexApprox {
    const Rational y = r * x;
    BigInt rest = y.get_den();
    for (const auto& o : orbits) {
      while (mpz_divisible_ui_p(rest.get_mpz_t(), o.p.value())) rest /= o.p.value();
    }
    if (rest != 1) return {};
    ComplexApprox w = exact_complex(coeff);
    for (auto& o : orbits) {
      const ComplexApprox local = o.at(y);
      if (local.re == 0.0 && local.im == 0.0 && local.err == 0.0) return {};
      w *= local;
    }
    return w;
  };

  const double xd = x.get_d();
  const ArchFunction g = arch_dilate(atom.arch, xd);
  BoundedValue out = weighted_lattice_sum(g, lattice_den, opts.lattice, weight, weight_sup, true);
  if (x != 1) {
    // Dilation parameters carry a relative rounding of a few ulps.
    double mass = 0.0;
    for (const auto& a : g.atoms) {
      mass += std::abs(a.amp) * (2.0 + 2.0 * static_cast<double>(lattice_den) / std::sqrt(a.width));
    }
    out.bound += 1e3 * std::numeric_limits<double>::epsilon() * weight_sup * mass;
  }
  return out;
}

}  // namespace adele
