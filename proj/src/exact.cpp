#include "adele/exact.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace adele {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::atomic<std::uint64_t> g_conductor_limit{1000000};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  // m is a prime power > 1 and gcd(a, m) = 1
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

struct PrimePower {
  std::uint64_t p;
  unsigned nu;
  std::uint64_t q;         // p^nu
  std::uint64_t cofactor;  // N / q
  std::uint64_t inv;       // cofactor^{-1} mod q
};

std::vector<PrimePower> factor_conductor(std::uint64_t n) {
  std::vector<PrimePower> out;
  const std::uint64_t total = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0, 1, 0, 0};
    while (n % p == 0) {
      n /= p;
      pp.q *= p;
      ++pp.nu;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n, 0, 0});
  for (auto& pp : out) {
    pp.cofactor = total / pp.q;
    pp.inv = mod_inverse(pp.cofactor % pp.q, pp.q);
  }
  return out;
}

using RawTerms = std::map<std::uint64_t, Rational>;

std::uint64_t checked_conductor(const BigInt& n) {
  if (!n.fits_ulong_p() || n.get_ui() > g_conductor_limit.load()) {
    throw ConductorOverflow("cyclotomic conductor " + n.get_str() + " exceeds limit " +
                            std::to_string(g_conductor_limit.load()));
  }
  return n.get_ui();
}

}  // namespace

// ---------------------------------------------------------------------------

Rational parse_rational(std::string_view text) {
  std::string s(text);
  const auto bad = [&] { return std::invalid_argument("malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  const auto slash = s.find('/');
  const auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') throw bad();
  if (num[0] == '+') num.erase(0, 1);
  BigInt n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational mod_one(const Rational& r) {
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  Rational out = r - Rational(fl);
  out.canonicalize();
  return out;
}

double upper_double(const Rational& r) {
  const double d = std::fabs(r.get_d());
  return d * (1.0 + 4.0 * kEps) + std::numeric_limits<double>::denorm_min();
}

// ---------------------------------------------------------------------------

double ComplexApprox::magnitude_bound() const {
  return std::hypot(re, im) * (1.0 + 2.0 * kEps) + err;
}

ComplexApprox& ComplexApprox::operator+=(const ComplexApprox& o) {
  re += o.re;
  im += o.im;
  err += o.err + kEps * (std::fabs(re) + std::fabs(im));
  return *this;
}

ComplexApprox& ComplexApprox::operator*=(const ComplexApprox& o) {
  const double ma = std::hypot(re, im);
  const double mb = std::hypot(o.re, o.im);
  const double r = re * o.re - im * o.im;
  const double i = re * o.im + im * o.re;
  err = ma * o.err + mb * err + err * o.err + 4.0 * kEps * ma * mb;
  re = r;
  im = i;
  return *this;
}

// ---------------------------------------------------------------------------

std::uint64_t conductor_limit() { return g_conductor_limit.load(); }
void set_conductor_limit(std::uint64_t limit) { g_conductor_limit.store(limit); }

CyclotomicSum& CyclotomicSum::add(const Rational& angle, const Rational& coeff) {
  if (coeff != 0) terms_.emplace_back(mod_one(angle), coeff);
  return *this;
}

CyclotomicSum& CyclotomicSum::add(const Cyclotomic& c) {
  for (auto& t : c.terms()) add(t.angle, t.coeff);
  return *this;
}

// Converts raw exponent sums into Zumbroich-basis coordinates and then
// descends to the smallest cyclotomic field containing the value.
class CyclotomicReducer {
 public:
  static Cyclotomic reduce(std::uint64_t n, RawTerms raw) {
    std::erase_if(raw, [](const auto& kv) { return kv.second == 0; });
    if (raw.empty()) return {};
    RawTerms basis = to_basis(n, raw);
    shrink(n, basis);
    Cyclotomic out;
    out.conductor_ = n;
    out.terms_.assign(basis.begin(), basis.end());
    return out;
  }

 private:
  static RawTerms to_basis(std::uint64_t n, const RawTerms& raw) {
    const auto pps = factor_conductor(n);
    RawTerms out;
    std::vector<std::vector<std::pair<std::uint64_t, int>>> options(pps.size());
    for (const auto& [e, coeff] : raw) {
      for (std::size_t i = 0; i < pps.size(); ++i) {
        const auto& pp = pps[i];
        const std::uint64_t ei = (e % pp.q) * pp.inv % pp.q;
        auto& opt = options[i];
        opt.clear();
        if (pp.p == 2) {
          const std::uint64_t half = pp.q / 2;
          if (ei >= half) opt.emplace_back(ei - half, -1);
          else opt.emplace_back(ei, 1);
        } else {
          const std::uint64_t low = pp.q / pp.p;
          if (ei / low >= 1) {
            opt.emplace_back(ei, 1);
          } else {
            for (std::uint64_t k = 1; k < pp.p; ++k) opt.emplace_back(ei + k * low, -1);
          }
        }
      }
      // Cartesian product of the per-component expansions.
      std::vector<std::size_t> idx(pps.size(), 0);
      while (true) {
        std::uint64_t exp = 0;
        int sign = 1;
        for (std::size_t i = 0; i < pps.size(); ++i) {
          const auto& [ci, si] = options[i][idx[i]];
          exp = (exp + ci * pps[i].cofactor) % n;
          sign *= si;
        }
        auto& slot = out[exp];
        if (sign > 0) slot += coeff;
        else slot -= coeff;
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  }

  static void shrink(std::uint64_t& n, RawTerms& terms) {
    if (terms.empty()) {
      n = 1;
      return;
    }
    bool changed = true;
    while (changed && n > 1) {
      changed = false;
      for (const auto& pp : factor_conductor(n)) {
        const std::uint64_t p = pp.p;
        if (p == 2 || pp.nu >= 2) {
          const bool divisible =
              std::all_of(terms.begin(), terms.end(), [&](const auto& kv) { return kv.first % p == 0; });
          if (!divisible) continue;
          RawTerms next;
          for (auto& [e, c] : terms) next.emplace(e / p, std::move(c));
          terms = std::move(next);
          n /= p;
          changed = true;
          break;
        }
        // p odd, exactly divides n: the value lies in the subfield iff the
        // coefficients along zeta_p^1..zeta_p^{p-1} agree for each cofactor.
        std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, const Rational*>>> groups;
        for (const auto& [e, c] : terms) {
          const std::uint64_t ep = (e % p) * pp.inv % p;
          const std::uint64_t rest = (e + n - (ep * pp.cofactor) % n) % n;
          groups[rest].emplace_back(ep, &c);
        }
        bool ok = true;
        for (const auto& [rest, members] : groups) {
          if (members.size() != p - 1) {
            ok = false;
            break;
          }
          for (const auto& m : members) {
            if (*m.second != *members.front().second) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (!ok) continue;
        RawTerms next;
        for (const auto& [rest, members] : groups) next.emplace(rest / p, -*members.front().second);
        terms = std::move(next);
        n /= p;
        changed = true;
        break;
      }
    }
  }

 public:
  static RawTerms scaled(const Cyclotomic& c, std::uint64_t n) {
    RawTerms out;
    const std::uint64_t scale = n / c.conductor_;
    for (const auto& [e, coeff] : c.terms_) out[(e * scale) % n] += coeff;
    return out;
  }
};

Cyclotomic::Cyclotomic(const Rational& r) {
  if (r != 0) terms_.emplace_back(0, r);
}

Cyclotomic Cyclotomic::root_of_unity(const Rational& r) {
  CyclotomicSum s;
  s.add(r, Rational(1));
  return reduce(s);
}

Cyclotomic Cyclotomic::reduce(const CyclotomicSum& sum) {
  BigInt lcm = 1;
  for (const auto& [angle, coeff] : sum.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), angle.get_den_mpz_t());
  const std::uint64_t n = checked_conductor(lcm);
  RawTerms raw;
  for (const auto& [angle, coeff] : sum.terms()) {
    BigInt e = angle.get_num() * (lcm / angle.get_den());
    raw[e.get_ui()] += coeff;
  }
  return CyclotomicReducer::reduce(n, std::move(raw));
}

Cyclotomic cyclo_reduce(const CyclotomicSum& sum) { return Cyclotomic::reduce(sum); }

std::vector<Cyclotomic::Term> Cyclotomic::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) {
    Rational angle(static_cast<unsigned long>(e), static_cast<unsigned long>(conductor_));
    angle.canonicalize();
    out.push_back({angle, c});
  }
  return out;
}

Rational Cyclotomic::rational_part_if_rational() const {
  if (!is_rational()) throw std::logic_error("cyclotomic value is not rational");
  return terms_.empty() ? Rational(0) : terms_.front().second;
}

double Cyclotomic::abs_bound() const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += upper_double(c);
  return s * (1.0 + static_cast<double>(terms_.size()) * kEps);
}

Cyclotomic Cyclotomic::conj() const {
  RawTerms raw;
  for (const auto& [e, c] : terms_) raw[(conductor_ - e) % conductor_] += c;
  return CyclotomicReducer::reduce(conductor_, std::move(raw));
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  BigInt lcm;
  mpz_lcm_ui(lcm.get_mpz_t(), BigInt(static_cast<unsigned long>(conductor_)).get_mpz_t(),
             static_cast<unsigned long>(o.conductor_));
  const std::uint64_t n = checked_conductor(lcm);
  RawTerms raw = CyclotomicReducer::scaled(*this, n);
  for (auto& [e, c] : CyclotomicReducer::scaled(o, n)) raw[e] += c;
  return *this = CyclotomicReducer::reduce(n, std::move(raw));
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
  if (r == 0) {
    terms_.clear();
    conductor_ = 1;
    return *this;
  }
  for (auto& t : terms_) t.second *= r;
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (is_zero() || o.is_zero()) return *this = Cyclotomic();
  if (o.is_rational()) return *this *= o.terms_.front().second;
  if (is_rational()) {
    const Rational r = terms_.front().second;
    return *this = o * r;
  }
  BigInt lcm;
  mpz_lcm_ui(lcm.get_mpz_t(), BigInt(static_cast<unsigned long>(conductor_)).get_mpz_t(),
             static_cast<unsigned long>(o.conductor_));
  const std::uint64_t n = checked_conductor(lcm);
  const std::uint64_t sa = n / conductor_, sb = n / o.conductor_;
  RawTerms raw;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) raw[(ea * sa + eb * sb) % n] += ca * cb;
  }
  return *this = CyclotomicReducer::reduce(n, std::move(raw));
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  return a.conductor_ == b.conductor_ && a.terms_ == b.terms_;
}

namespace {

// |x| to within relative 2^-63 (exact below 2^64).
long double to_long_double(const BigInt& x) {
  const BigInt a = abs(x);
  const std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
  long double v;
  if (bits <= 64) {
    BigInt hi = a >> 32, lo = a - (hi << 32);
    v = std::ldexp(static_cast<long double>(hi.get_ui()), 32) + static_cast<long double>(lo.get_ui());
  } else {
    const BigInt top = a >> static_cast<mp_bitcnt_t>(bits - 64);
    BigInt hi = top >> 32, lo = top - (hi << 32);
    v = std::ldexp(std::ldexp(static_cast<long double>(hi.get_ui()), 32) + static_cast<long double>(lo.get_ui()),
                   static_cast<int>(bits - 64));
  }
  return sgn(x) < 0 ? -v : v;
}

}  // namespace

// Each term is formed in extended precision with relative error a few units
// of eps_ld; the only double rounding is the final one (half an ulp per
// component). With 64-bit long double the radius stays below
// #terms * eps * sum |coeff|.
ComplexApprox cyclo_eval(const Cyclotomic& c) {
  if (c.is_zero()) return {};
  constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  constexpr double eps_ld = static_cast<double>(std::numeric_limits<long double>::epsilon());
  long double re = 0.0L, im = 0.0L;
  double coeff_sum = 0.0;
  for (const auto& t : c.terms()) {
    const long double frac = to_long_double(t.angle.get_num()) / to_long_double(t.angle.get_den());
    const long double theta = two_pi * frac;
    const long double w = to_long_double(t.coeff.get_num()) / to_long_double(t.coeff.get_den());
    re += w * std::cos(theta);
    im += w * std::sin(theta);
    coeff_sum += upper_double(t.coeff);
  }
  const double n = static_cast<double>(c.size());
  coeff_sum *= 1.0 + (n + 1.0) * kEps;
  return {static_cast<double>(re), static_cast<double>(im), (0.75 * kEps + (n + 16.0) * eps_ld) * coeff_sum};
}

std::string to_string(const Cyclotomic& c) {
  if (c.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : c.terms()) {
    if (!first) os << " + ";
    first = false;
    os << to_string(t.coeff);
    if (t.angle != 0) os << "*e(" << to_string(t.angle) << ")";
  }
  return os.str();
}

}  // namespace adele
