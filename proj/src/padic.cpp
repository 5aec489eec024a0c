#include "adele/padic.hpp"

#include <stdexcept>
#include <string>

namespace adele {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::uint64_t value) : value_(value) {
  if (!is_prime(value)) throw std::invalid_argument(std::to_string(value) + " is not prime");
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

long vp(const BigInt& x, const Prime& p) {
  if (x == 0) return kValuationInfinity;
  return static_cast<long>(mpz_remove(BigInt().get_mpz_t(), x.get_mpz_t(), BigInt(p.value()).get_mpz_t()));
}

long vp(const Rational& x, const Prime& p) {
  if (x == 0) return kValuationInfinity;
  return vp(x.get_num(), p) - vp(x.get_den(), p);
}

Rational prime_power(const Prime& p, long k) {
  BigInt pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), p.value(), static_cast<unsigned long>(k < 0 ? -k : k));
  if (k >= 0) return Rational(pk);
  Rational r(1, 1);
  r /= Rational(pk);
  return r;
}

Rational frac_p(const Rational& x, const Prime& p) {
  if (x == 0) return 0;
  BigInt unit_den;
  BigInt pk_big(p.value());
  const unsigned long k = mpz_remove(unit_den.get_mpz_t(), x.get_den_mpz_t(), pk_big.get_mpz_t());
  if (k == 0) return 0;
  BigInt pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), p.value(), k);
  // t = num * unit_den^{-1} mod p^k
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), unit_den.get_mpz_t(), pk.get_mpz_t());
  BigInt t = x.get_num() * inv;
  mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), pk.get_mpz_t());
  Rational r(t, pk);
  r.canonicalize();
  return r;
}

Cyclotomic psi_p(const Rational& x, const Prime& p) { return root_of_unity(frac_p(x, p)); }

Rational reduce_mod_ball(const Rational& x, const Prime& p, long level) {
  const Rational scale = prime_power(p, level);
  Rational r = frac_p(x / scale, p) * scale;
  r.canonicalize();
  return r;
}

PadicBall::PadicBall(Prime p, const Rational& center, long level)
    : p_(p), center_(reduce_mod_ball(center, p, level)), level_(level) {}

bool PadicBall::contains(const Rational& x) const {
  const Rational d = x - center_;
  return vp(d, p_) >= level_;
}

bool PadicBall::inside(const PadicBall& other) const {
  return p_ == other.p_ && level_ >= other.level_ && other.contains(center_);
}

std::vector<Rational> unit_coset_reps(const Prime& p, long k) {
  if (k < 1) throw std::invalid_argument("unit_coset_reps: k must be >= 1");
  const std::uint64_t pk = ipow(p.value(), static_cast<unsigned>(k));
  std::vector<Rational> reps;
  reps.reserve(pk - pk / p.value());
  for (std::uint64_t u = 1; u <= pk; ++u) {
    if (u % p.value() != 0) reps.emplace_back(static_cast<unsigned long>(u));
  }
  return reps;
}

Rational unit_coset_volume(const Prime& p, long k) {
  if (k < 1) throw std::invalid_argument("unit_coset_volume: k must be >= 1");
  return Rational(1) / (Rational(static_cast<unsigned long>(p.value() - 1)) * prime_power(p, k - 1));
}

std::uint64_t unit_residue(const Rational& u, const Prime& p, long k) {
  const std::uint64_t pk = ipow(p.value(), static_cast<unsigned>(k));
  if (pk == 1) {
    if (vp(u, p) != 0) throw std::invalid_argument(to_string(u) + " is not a p-adic unit");
    return 0;
  }
  BigInt mod(static_cast<unsigned long>(pk));
  BigInt inv;
  if (mpz_invert(inv.get_mpz_t(), u.get_den_mpz_t(), mod.get_mpz_t()) == 0 || vp(u, p) != 0) {
    throw std::invalid_argument(to_string(u) + " is not a " + std::to_string(p.value()) + "-adic unit");
  }
  BigInt r = u.get_num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  return r.get_ui();
}

}  // namespace adele
