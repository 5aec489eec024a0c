#include "adele/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace adele {

namespace {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

struct PrimePowerPart {
  u64 p;
  unsigned k;
  u64 pk;
};

std::vector<PrimePowerPart> factor(u64 n) {
  std::vector<PrimePowerPart> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    PrimePowerPart part{d, 0, 1};
    while (n % d == 0) {
      n /= d;
      ++part.k;
      part.pk *= d;
    }
    out.push_back(part);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

u64 primitive_root(u64 p, u64 pk) {
  const u64 phi = pk / p * (p - 1);
  std::vector<u64> rs;
  for (const auto& f : factor(phi)) rs.push_back(f.p);
  for (u64 g = 2; g < pk; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (u64 r : rs) {
      if (powmod(g, phi / r, pk) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root");
}

// x = a mod m1, x = b mod m2 with gcd(m1, m2) = 1.
u64 crt(u64 a, u64 m1, u64 b, u64 m2) {
  BigInt x, inv;
  BigInt bm1(static_cast<unsigned long>(m1)), bm2(static_cast<unsigned long>(m2));
  mpz_invert(inv.get_mpz_t(), bm1.get_mpz_t(), bm2.get_mpz_t());
  BigInt t = (BigInt(static_cast<unsigned long>(b)) - BigInt(static_cast<unsigned long>(a))) * inv;
  mpz_mod(t.get_mpz_t(), t.get_mpz_t(), bm2.get_mpz_t());
  x = BigInt(static_cast<unsigned long>(a)) + bm1 * t;
  return x.get_ui();
}

// Discrete logs of r (a unit mod p^k) with respect to the local generators.
std::vector<u64> local_logs(const std::vector<const GeneratorImage*>& gens, u64 p, u64 pk, u64 r) {
  std::vector<u64> out;
  if (gens.empty()) return out;
  if (p == 2) {
    const bool neg = r % 4 == 3;
    out.push_back(neg ? 1 : 0);
    if (gens.size() == 1) return out;
    u64 target = neg ? (pk - r) % pk : r;
    u64 cur = 1;
    for (u64 e = 0; e < gens[1]->order; ++e) {
      if (cur == target) {
        out.push_back(e);
        return out;
      }
      cur = mulmod(cur, 5, pk);
    }
    throw std::logic_error("discrete log mod 2^k failed");
  }
  u64 cur = 1;
  for (u64 e = 0; e < gens[0]->order; ++e) {
    if (cur == r) {
      out.push_back(e);
      return out;
    }
    cur = mulmod(cur, gens[0]->local_gen, pk);
  }
  throw std::logic_error("discrete log failed");
}

}  // namespace

std::vector<GeneratorImage> DirichletCharacter::standard_generators(u64 modulus) {
  if (modulus == 0) throw std::invalid_argument("character modulus must be positive");
  std::vector<GeneratorImage> out;
  for (const auto& part : factor(modulus)) {
    const u64 rest = modulus / part.pk;
    auto push = [&](u64 local_gen, u64 order) {
      GeneratorImage g;
      g.prime = part.p;
      g.exponent = part.k;
      g.local_gen = local_gen;
      g.order = order;
      g.gen = rest == 1 ? local_gen % modulus : crt(local_gen, part.pk, 1, rest);
      out.push_back(g);
    };
    if (part.p == 2) {
      if (part.k >= 2) push(part.pk - 1, 2);
      if (part.k >= 3) push(5, part.pk / 4);
    } else {
      push(primitive_root(part.p, part.pk), part.pk / part.p * (part.p - 1));
    }
  }
  return out;
}

DirichletCharacter::DirichletCharacter(u64 modulus) : modulus_(modulus), gens_(standard_generators(modulus)) {}

std::vector<DirichletCharacter> DirichletCharacter::all(u64 modulus) {
  DirichletCharacter base(modulus);
  std::vector<DirichletCharacter> out{base};
  for (std::size_t i = 0; i < base.gens_.size(); ++i) {
    std::vector<DirichletCharacter> next;
    next.reserve(out.size() * base.gens_[i].order);
    for (const auto& chi : out) {
      for (u64 j = 0; j < base.gens_[i].order; ++j) {
        DirichletCharacter c = chi;
        c.gens_[i].angle = Rational(static_cast<unsigned long>(j), static_cast<unsigned long>(base.gens_[i].order));
        c.gens_[i].angle.canonicalize();
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

DirichletCharacter DirichletCharacter::from_images(u64 modulus,
                                                   const std::vector<std::pair<u64, Rational>>& images) {
  DirichletCharacter chi(modulus);
  std::vector<bool> seen(chi.gens_.size(), false);
  for (const auto& [gen, angle] : images) {
    auto it = std::find_if(chi.gens_.begin(), chi.gens_.end(),
                           [&](const GeneratorImage& g) { return g.gen == gen % modulus; });
    if (it == chi.gens_.end()) {
      throw std::invalid_argument("generator " + std::to_string(gen) + " is not a standard generator mod " +
                                  std::to_string(modulus));
    }
    const auto i = static_cast<std::size_t>(it - chi.gens_.begin());
    if (seen[i]) throw std::invalid_argument("generator " + std::to_string(gen) + " given twice");
    seen[i] = true;
    const Rational scaled = angle * static_cast<unsigned long>(it->order);
    if (scaled.get_den() != 1) {
      throw std::invalid_argument("angle " + to_string(angle) + " is not a root of unity of order dividing " +
                                  std::to_string(it->order));
    }
    it->angle = mod_one(angle);
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw std::invalid_argument("missing image for generator " + std::to_string(chi.gens_[i].gen));
  }
  return chi;
}

bool DirichletCharacter::is_trivial() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const GeneratorImage& g) { return g.angle == 0; });
}

unsigned DirichletCharacter::local_exponent(const Prime& p) const {
  unsigned k = 0;
  u64 n = modulus_;
  while (n % p.value() == 0) {
    n /= p.value();
    ++k;
  }
  return k;
}

Cyclotomic DirichletCharacter::local_value(const Prime& p, const Rational& u) const {
  const unsigned k = local_exponent(p);
  if (k == 0) return Cyclotomic(1);
  if (u == 0 || vp(u, p) != 0) throw std::invalid_argument("local_value: argument is not a p-adic unit");
  std::vector<const GeneratorImage*> gens;
  for (const auto& g : gens_) {
    if (g.prime == p.value()) gens.push_back(&g);
  }
  const u64 pk = ipow(p.value(), k);
  const u64 r = unit_residue(u, p, k);
  const auto logs = local_logs(gens, p.value(), pk, r);
  Rational angle = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) angle += gens[i]->angle * static_cast<unsigned long>(logs[i]);
  return root_of_unity(angle);
}

Cyclotomic DirichletCharacter::operator()(std::int64_t n) const {
  if (modulus_ > static_cast<u64>(INT64_MAX)) throw std::overflow_error("character modulus too large");
  const auto mod = static_cast<std::int64_t>(modulus_);
  const u64 m = static_cast<u64>((n % mod + mod) % mod);
  if (std::gcd(m, modulus_) != 1) return Cyclotomic();
  Cyclotomic out(1);
  const Rational u(static_cast<long>(n));
  for (const auto& part : factor(modulus_)) out = out * local_value(Prime(part.p), u);
  return out;
}

std::string to_string(const DirichletCharacter& chi) {
  std::string s = "chi mod " + std::to_string(chi.modulus()) + " [";
  bool first = true;
  for (const auto& g : chi.generators()) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(g.gen) + " -> e(" + to_string(g.angle) + ")";
  }
  return s + "]";
}

Cyclotomic atom_finite_trace(const HeckeAtom& atom) {
  Cyclotomic out(1);
  for (const auto& [p, f] : atom.locals) {
    out = out * f.unit.eval(1) * sb_integral(f.additive);
    if (out.is_zero()) break;
  }
  return out;
}

Cyclotomic atom_finite_trace(const HeckeAtom& atom, const DirichletCharacter& chi) {
  std::set<u64> primes;
  for (const auto& [p, f] : atom.locals) primes.insert(p);
  for (const auto& g : chi.generators()) primes.insert(g.prime);
  Cyclotomic out(1);
  for (u64 pv : primes) {
    const Prime p(pv);
    const LocalFactor f = atom.factor_at(p);
    const long k = std::max<long>({f.unit.level(), static_cast<long>(chi.local_exponent(p)), 1L});
    CyclotomicSum acc;
    for (const auto& rep : unit_coset_reps(p, k)) {
      const Cyclotomic v = f.unit.eval(rep);
      if (!v.is_zero()) acc.add(v * chi.local_value(p, rep));
    }
    Cyclotomic local = cyclo_reduce(acc) * unit_coset_volume(p, k);
    if (!f.additive.is_integers_indicator()) local = local * sb_integral(f.additive);
    out = out * local;
    if (out.is_zero()) break;
  }
  return out;
}

namespace {

BoundedValue atom_trace(const HeckeAtom& atom, const Cyclotomic& finite) {
  if (finite.is_zero()) return {};
  ComplexApprox v = exact_complex(atom.coeff);
  v *= cyclo_eval(finite);
  v *= arch_integral_approx(atom.arch);
  return to_bounded(v);
}

BoundedValue orbit_total(const HeckeElement& g, const Rational& x, const OrbitSumOptions& opts) {
  if (!(opts.lattice.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  std::size_t n = 0;
  for (const auto& a : g.atoms) n += a.q == 1 ? 1 : 0;
  if (n == 0) return {};
  OrbitSumOptions per = opts;
  per.lattice.tol = opts.lattice.tol / static_cast<double>(n);
  BoundedValue total;
  for (const auto& a : g.atoms) {
    if (a.q == 1) total += idele_orbit_integral(a, x, per);
  }
  return total;
}

}  // namespace

BoundedValue trace_RK(const HeckeElement& h) {
  h.validate();
  BoundedValue total;
  for (const auto& a : h.atoms) total += atom_trace(a, atom_finite_trace(a));
  return total;
}

BoundedValue trace_char(const HeckeElement& h, const DirichletCharacter& chi) {
  h.validate();
  BoundedValue total;
  for (const auto& a : h.atoms) total += atom_trace(a, atom_finite_trace(a, chi));
  return total;
}

BoundedValue trace_pi1(const HeckeElement& h, const OrbitSumOptions& opts) {
  h.validate();
  return orbit_total(hecke_fourier(h), 1, opts);
}

BoundedValue trace_pi1(const HeckeElement& h, double tol) {
  OrbitSumOptions opts;
  opts.lattice.tol = tol;
  return trace_pi1(h, opts);
}

BoundedValue trace_pi_x(const HeckeElement& h, const Rational& x, const DirichletCharacter& alpha,
                        const OrbitSumOptions& opts) {
  if (x == 0) return trace_char(h, alpha);
  if (!alpha.is_trivial()) {
    throw std::invalid_argument("trace_pi_x: x != 0 has trivial stabiliser, so alpha must be trivial");
  }
  h.validate();
  return orbit_total(hecke_fourier(h), x, opts);
}

std::uint64_t required_conductor(const HeckeElement& h) {
  std::map<u64, long> exps;
  for (const auto& a : h.atoms) {
    for (const auto& [p, f] : a.locals) {
      long& e = exps[p];
      e = std::max(e, f.unit.conductor_exponent());
    }
  }
  BigInt n = 1;
  for (const auto& [p, e] : exps) {
    BigInt pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(e));
    n *= pk;
  }
  if (!n.fits_ulong_p()) throw std::overflow_error("required conductor does not fit in 64 bits");
  return n.get_ui();
}

CharDecomposition char_decompose(const HeckeElement& h, std::uint64_t modulus) {
  h.validate();
  const u64 need = required_conductor(h);
  if (modulus == 0 || modulus % need != 0) {
    throw std::invalid_argument("modulus " + std::to_string(modulus) + " is not a multiple of the required conductor " +
                                std::to_string(need));
  }
  CharDecomposition out;
  out.modulus = modulus;
  const auto chars = DirichletCharacter::all(modulus);
  std::vector<CyclotomicSum> per_atom(h.atoms.size());
  for (const auto& chi : chars) {
    BoundedValue t;
    for (std::size_t i = 0; i < h.atoms.size(); ++i) {
      const Cyclotomic c = atom_finite_trace(h.atoms[i], chi);
      per_atom[i].add(c);
      t += atom_trace(h.atoms[i], c);
    }
    out.sum += t;
    out.traces.push_back({chi, t});
  }
  out.checksum_exact = true;
  for (std::size_t i = 0; i < h.atoms.size(); ++i) {
    if (!(cyclo_reduce(per_atom[i]) == atom_finite_trace(h.atoms[i]))) out.checksum_exact = false;
  }
  out.trace_rk = trace_RK(h);
  out.checksum_residual = std::abs(out.sum.value - out.trace_rk.value);
  out.checksum_within_bounds = out.checksum_residual <= out.sum.bound + out.trace_rk.bound + 1e-12;
  return out;
}

SpectralReport spectral_side(const HeckeElement& h, const OrbitSumOptions& opts) {
  SpectralReport r;
  r.rk = trace_RK(h);
  r.pi1 = trace_pi1(h, opts);
  r.total = r.rk + r.pi1;
  return r;
}

}  // namespace adele
