#include "adele/trace.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace adele {

// ---------------------------------------------------------------------------
// Trace formula.

TraceReport verify_trace_formula(const HeckeElement& h, double tol, const OrbitSumOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  h.validate();
  TraceReport r;
  r.spectral = spectral_side(h, opts);
  r.geometric = geometric_total(h, opts);
  r.residual = std::abs(r.spectral.total.value - r.geometric.total.value);
  r.certified_bound = r.spectral.total.bound + r.geometric.total.bound;
  r.pass = r.residual <= r.certified_bound + tol;
  r.metadata.tol = tol;
  r.metadata.lattice_tol = opts.lattice.tol;
  r.metadata.input_sha256 = sha256_hex(hecke_to_json(h).dump());
  return r;
}

namespace {

Json metadata_to_json(const ReportMetadata& m) {
  return {{"schema", kSchema},
          {"version", kVersion},
          {"input_sha256", m.input_sha256},
          {"seed", m.seed ? Json(*m.seed) : Json(nullptr)},
          {"tolerances", {{"tol", m.tol}, {"lattice_tol", m.lattice_tol}}}};
}

}  // namespace

Json trace_report_to_json(const TraceReport& r) {
  return {{"metadata", metadata_to_json(r.metadata)},
          {"spectral", spectral_to_json(r.spectral)},
          {"geometric", geometric_to_json(r.geometric)},
          {"residual", r.residual},
          {"certified_bound", r.certified_bound},
          {"verdict", r.pass ? "pass" : "fail"},
          {"notes", {{"archimedean_class", "gaussian-atoms"}, {"hyperbolic_jacobian", 1}}}};
}

// ---------------------------------------------------------------------------
// Poisson summation.

void PoissonInput::set_local(LocalSB f) {
  const std::uint64_t p = f.p().value();
  if (f.is_integers_indicator()) {
    locals.erase(p);
  } else {
    locals.insert_or_assign(p, std::move(f));
  }
}

Json poisson_to_json(const PoissonInput& phi) {
  Json locals = Json::array();
  for (const auto& [p, f] : phi.locals) locals.push_back({{"p", p}, {"additive", localsb_atoms_to_json(f)}});
  return {{"schema", kSchema}, {"locals", std::move(locals)}, {"arch", arch_to_json(phi.arch)}};
}

PoissonInput poisson_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  if (j.contains("schema") && (!j["schema"].is_string() || j["schema"].get<std::string>() != kSchema)) {
    throw ParseError(path + ".schema", std::string("unsupported schema, expected \"") + kSchema + "\"");
  }
  PoissonInput phi;
  if (j.contains("locals")) {
    const Json& locals = j["locals"];
    const std::string lp = path + ".locals";
    if (!locals.is_array()) throw ParseError(lp, "expected an array");
    std::set<std::uint64_t> seen;
    for (std::size_t i = 0; i < locals.size(); ++i) {
      const std::string ep = lp + "[" + std::to_string(i) + "]";
      const Json& e = locals[i];
      if (!e.is_object() || !e.contains("p")) throw ParseError(ep + ".p", "missing field");
      if (!e["p"].is_number_integer() || e["p"].get<long>() < 2 || !is_prime(e["p"].get<std::uint64_t>())) {
        throw ParseError(ep + ".p", "expected a prime");
      }
      const Prime p(e["p"].get<std::uint64_t>());
      if (!seen.insert(p.value()).second) throw ParseError(ep + ".p", "prime listed twice");
      if (e.contains("additive")) phi.set_local(localsb_from_atoms_json(p, e["additive"], ep + ".additive"));
    }
  }
  if (j.contains("arch")) phi.arch = arch_from_json(j["arch"], path + ".arch");
  return phi;
}

BoundedValue adelic_lattice_sum(const PoissonInput& phi, const LatticeOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  struct Local {
    const LocalSB* f;
    long constancy;
    std::map<Rational, ComplexApprox> memo;
  };
  std::vector<Local> locals;
  double weight_sup = 1.0;
  BigInt denominator = 1;
  for (const auto& [p, f] : phi.locals) {
    if (f.is_zero()) return {};
    weight_sup *= f.sup_bound();
    const long s = f.support_level();
    if (s < 0) {
      BigInt pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(-s));
      denominator *= pk;
    }
    locals.push_back({&f, f.constancy_level(), {}});
  }
  if (!denominator.fits_slong_p()) throw std::overflow_error("lattice denominator does not fit in a machine word");
  LatticeWeight weight = [&](const Rational& q) -> ComplexApprox {
    ComplexApprox w(1.0, 0.0);
    for (auto& l : locals) {
      Rational key = reduce_mod_ball(q, l.f->p(), l.constancy);
      auto it = l.memo.find(key);
      if (it == l.memo.end()) {
        ComplexApprox v = cyclo_eval(sb_eval(*l.f, key));
        it = l.memo.emplace(std::move(key), v).first;
      }
      const ComplexApprox& v = it->second;
      if (v.re == 0.0 && v.im == 0.0 && v.err == 0.0) return {};
      w *= v;
    }
    return w;
  };
  return weighted_lattice_sum(phi.arch, denominator.get_si(), opts, weight, weight_sup, false);
}

PoissonInput poisson_fourier(const PoissonInput& phi) {
  PoissonInput out;
  out.arch = arch_fourier_global(phi.arch);
  for (const auto& [p, f] : phi.locals) out.set_local(sb_fourier(f));
  return out;
}

PoissonReport poisson_check(const PoissonInput& phi, double tol, const LatticeOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  PoissonReport r;
  r.lhs = adelic_lattice_sum(phi, opts);
  r.rhs = adelic_lattice_sum(poisson_fourier(phi), opts);
  r.residual = std::abs(r.lhs.value - r.rhs.value);
  r.bound = r.lhs.bound + r.rhs.bound;
  r.pass = r.residual <= r.bound + tol;
  r.metadata.tol = tol;
  r.metadata.lattice_tol = opts.tol;
  r.metadata.input_sha256 = sha256_hex(poisson_to_json(phi).dump());
  return r;
}

Json poisson_report_to_json(const PoissonReport& r) {
  return {{"metadata", metadata_to_json(r.metadata)},
          {"lhs", bounded_to_json(r.lhs)},
          {"rhs", bounded_to_json(r.rhs)},
          {"residual", r.residual},
          {"bound", r.bound},
          {"verdict", r.pass ? "pass" : "fail"}};
}

// ---------------------------------------------------------------------------
// Random inputs.

long Rng::integer(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("Rng::integer: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(next() % span);
}

double Rng::real(double lo, double hi) {
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

namespace {

Cyclotomic random_coeff(Rng& rng) {
  long num = 0;
  while (num == 0) num = rng.integer(-3, 3);
  Cyclotomic c(make_rational(num, rng.integer(1, 3)));
  if (rng.coin()) c = c * root_of_unity(make_rational(rng.integer(0, 3), 4));
  return c;
}

Rational random_q(Rng& rng, const RandomBox& box) {
  long num = 0;
  while (num == 0) num = rng.integer(-box.max_q_num, box.max_q_num);
  return make_rational(num, rng.integer(1, box.max_q_den));
}

}  // namespace

LocalSB random_localsb(Rng& rng, const Prime& p, const RandomBox& box) {
  const long span = static_cast<long>(ipow(p.value(), static_cast<unsigned>(box.depth)));
  const long n_atoms = rng.integer(1, 3);
  std::vector<TwistedBall> atoms;
  for (long i = 0; i < n_atoms; ++i) {
    const long level = rng.integer(-box.max_level, box.max_level);
    const Rational center = rng.integer(0, span - 1) * prime_power(p, level - box.depth);
    Rational twist = 0;
    if (rng.coin()) twist = rng.integer(0, span - 1) * prime_power(p, -level - box.depth);
    atoms.push_back(TwistedBall::make(random_coeff(rng), twist, PadicBall(p, center, level)));
  }
  return LocalSB(p, std::move(atoms));
}

UnitFunction random_unit_function(Rng& rng, const Prime& p, const RandomBox& box) {
  const long k = rng.integer(1, std::max(1L, box.max_level));
  const auto reps = unit_coset_reps(p, k);
  const long n_atoms = rng.integer(1, 2);
  std::vector<UnitAtom> atoms;
  for (long i = 0; i < n_atoms; ++i) {
    const Rational center = (i == 0 && rng.coin()) ? Rational(1) : reps[rng.integer(0, static_cast<long>(reps.size()) - 1)];
    atoms.push_back({random_coeff(rng), PadicBall(p, center, k)});
  }
  return UnitFunction(p, std::move(atoms));
}

ArchFunction random_arch(Rng& rng, const RandomBox& box) {
  ArchFunction f;
  const long n = rng.integer(1, 2);
  for (long i = 0; i < n; ++i) {
    ArchAtom a;
    a.amp = {rng.real(-1.0, 1.0), rng.real(-1.0, 1.0)};
    a.width = rng.real(box.min_width, box.max_width);
    a.shift = rng.real(-box.max_shift, box.max_shift);
    a.modulation = rng.real(-box.max_modulation, box.max_modulation);
    f.atoms.push_back(a);
  }
  return f;
}

HeckeElement random_hecke(Rng& rng, const RandomBox& box) {
  std::vector<Rational> pool;
  const long support = rng.integer(1, std::max(1L, box.max_q_support));
  if (rng.integer(0, 3) != 0) pool.emplace_back(1);
  while (static_cast<long>(pool.size()) < support) {
    Rational q = random_q(rng, box);
    if (std::find(pool.begin(), pool.end(), q) == pool.end()) pool.push_back(std::move(q));
  }
  HeckeElement h;
  for (long i = 0; i < box.atoms; ++i) {
    HeckeAtom atom;
    atom.q = pool[rng.integer(0, static_cast<long>(pool.size()) - 1)];
    atom.coeff = {rng.real(-1.0, 1.0), rng.real(-1.0, 1.0)};
    for (auto pv : box.primes) {
      const Prime p(pv);
      if (!rng.coin()) continue;
      LocalFactor f = LocalFactor::defaults(p);
      if (rng.coin()) f.unit = random_unit_function(rng, p, box);
      if (rng.coin()) f.additive = random_localsb(rng, p, box);
      atom.set_local(std::move(f));
    }
    atom.arch = random_arch(rng, box);
    h.atoms.push_back(std::move(atom));
  }
  return h;
}

PoissonInput random_poisson(Rng& rng, const RandomBox& box) {
  PoissonInput phi;
  for (auto pv : box.primes) {
    if (rng.coin()) phi.set_local(random_localsb(rng, Prime(pv), box));
  }
  phi.arch = random_arch(rng, box);
  return phi;
}

HeckeElement random_hecke(std::uint64_t seed, const RandomBox& box) {
  Rng rng(seed);
  return random_hecke(rng, box);
}

PoissonInput random_poisson(std::uint64_t seed, const RandomBox& box) {
  Rng rng(seed);
  return random_poisson(rng, box);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

}  // namespace adele
