// Acceptance suite: one pass/fail line per criterion, exit status 0 only if
// every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "adele/trace.hpp"
#include "fixture_io.hpp"
#include "oracles.hpp"

using namespace adele;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

OrbitSumOptions options(double tol, long multiplier = 1) {
  OrbitSumOptions o;
  o.lattice.tol = tol;
  o.lattice.cutoff_multiplier = multiplier;
  o.denominator_multiplier = multiplier;
  return o;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome theta_identity() {
  const auto t0 = Clock::now();
  const TraceReport r = verify_trace_formula(HeckeElement::standard(), 1e-8, options(kDefaultLatticeTol));
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const double direct = static_cast<double>(oracle::lattice_direct(ArchFunction::gaussian(), 1, 10).real());
  const double s = r.spectral.total.value.real(), g = r.geometric.total.value.real();
  Outcome o;
  o.pass = r.pass && r.residual < 1e-10 && std::abs(s - direct) < 1e-10 && std::abs(g - direct) < 1e-10 &&
           std::abs(r.spectral.rk.value - 1.0) < 1e-15 && secs < 1.0;
  o.detail = fmt("spectral %.12f geometric %.12f direct %.12f", s, g, direct) + fmt(" residual %.2e, %.3f s", r.residual, secs);
  return o;
}

std::vector<LocalSB> local_battery() {
  RandomBox box;
  box.max_level = 3;
  box.atoms = 3;
  Rng rng(2024);
  std::vector<LocalSB> out;
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (int i = 0; i < 100; ++i) out.push_back(random_localsb(rng, Prime(p), box));
  }
  return out;
}

Outcome fourier_involution() {
  const auto t0 = Clock::now();
  int bad = 0, n = 0;
  for (const auto& f : local_battery()) {
    ++n;
    bad += !(sb_fourier(sb_fourier(f)) == sb_reflect(f));
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return {bad == 0 && n >= 400 && secs < 10.0, std::to_string(n - bad) + "/" + std::to_string(n) + " exact" + fmt(", %.2f s", secs)};
}

Outcome plancherel() {
  int bad = 0, n = 0;
  for (const auto& f : local_battery()) {
    ++n;
    const LocalSB ft = sb_fourier(f);
    bad += !(sb_integral(sb_mul(f, sb_conj(f))) == sb_integral(sb_mul(ft, sb_conj(ft))));
  }
  return {bad == 0 && n >= 400, std::to_string(n - bad) + "/" + std::to_string(n) + " exact"};
}

/// Random h whose unit factors live at the primes of N with level at most the
/// exponent of p in N.
HeckeElement element_of_conductor(Rng& rng, std::uint64_t N) {
  RandomBox box;
  HeckeElement h;
  for (int a = 0; a < 3; ++a) {
    HeckeAtom atom;
    atom.coeff = {rng.real(-1, 1), rng.real(-1, 1)};
    for (std::uint64_t p : {2, 3, 5}) {
      LocalFactor f = LocalFactor::defaults(Prime(p));
      long k = 0;
      for (std::uint64_t m = N; m % p == 0; m /= p) ++k;
      if (k > 0 && rng.coin()) {
        RandomBox unit_box = box;
        unit_box.max_level = k;
        f.unit = random_unit_function(rng, Prime(p), unit_box);
      }
      if (rng.coin()) f.additive = random_localsb(rng, Prime(p), box);
      atom.set_local(std::move(f));
    }
    atom.arch = random_arch(rng, box);
    h.atoms.push_back(std::move(atom));
  }
  return h;
}

Outcome character_checksum() {
  Rng rng(77);
  Outcome o;
  std::ostringstream detail;
  double worst = 0.0;
  for (std::uint64_t N : {1, 3, 4, 5, 8, 12}) {
    for (int i = 0; i < 5; ++i) {
      const HeckeElement h = element_of_conductor(rng, N);
      if (N % required_conductor(h) != 0) {
        o.pass = false;
        detail << "generator broke conductor at N=" << N << "; ";
        continue;
      }
      const CharDecomposition d = char_decompose(h, N);
      worst = std::max(worst, d.checksum_residual);
      if (!d.checksum_exact || d.checksum_residual > 1e-12) o.pass = false;
    }
  }
  detail << "30 elements, exact finite checksums " << (o.pass ? "all hold" : "FAILED") << fmt(", worst arch residual %.1e", worst);
  o.detail = detail.str();
  return o;
}

Outcome orbit_invariance() {
  Rng rng(505);
  const RandomBox box;
  const OrbitSumOptions o = options(1e-12);
  double worst = 0.0;
  bool pass = true;
  for (int i = 0; i < 10; ++i) {
    const HeckeElement h = random_hecke(rng, box);
    const BoundedValue base = trace_pi1(h, o);
    for (const Rational& x : {Rational(1), Rational(2), make_rational(1, 2), Rational(-3)}) {
      const BoundedValue v = trace_pi_x(h, x, DirichletCharacter(1), o);
      const double d = std::abs(v.value - base.value);
      worst = std::max(worst, d);
      if (d > v.bound + base.bound) pass = false;
    }
  }
  return {pass, fmt("10 elements x 4 orbits, worst difference %.1e", worst)};
}

Outcome trace_battery() {
  const auto t0 = Clock::now();
  int ok = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const TraceReport r = verify_trace_formula(random_hecke(seed), 1e-8, options(kDefaultLatticeTol));
    ok += r.pass;
    worst = std::max(worst, r.residual);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return {ok == 20 && secs < 120.0, std::to_string(ok) + "/20 pass" + fmt(", worst residual %.1e, %.2f s", worst, secs)};
}

Outcome poisson_battery() {
  int ok = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const PoissonReport r = poisson_check(random_poisson(seed), 1e-8);
    ok += r.pass;
    worst = std::max(worst, r.residual);
  }
  return {ok == 20, std::to_string(ok) + "/20 pass" + fmt(", worst residual %.1e", worst)};
}

Outcome bound_validity() {
  int checked = 0, bad = 0;
  auto check = [&](const BoundedValue& first, const BoundedValue& doubled) {
    ++checked;
    if (std::abs(first.value - doubled.value) > first.bound) ++bad;
  };
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const HeckeElement h = random_hecke(seed);
    for (double tol : {1e-6, 1e-9}) {
      check(trace_pi1(h, options(tol)), trace_pi1(h, options(tol, 2)));
      check(term_additive(h, options(tol)), term_additive(h, options(tol, 2)));
      for (const Rational& x : {Rational(2), make_rational(1, 2)}) {
        check(trace_pi_x(h, x, DirichletCharacter(1), options(tol)),
              trace_pi_x(h, x, DirichletCharacter(1), options(tol, 2)));
      }
      for (const auto& atom : h.atoms) {
        check(lattice_sum(atom.arch, 6, LatticeOptions{tol, 1}), lattice_sum(atom.arch, 6, LatticeOptions{tol, 2}));
      }
    }
    const PoissonInput phi = random_poisson(seed);
    for (double tol : {1e-6, 1e-9}) {
      check(adelic_lattice_sum(phi, {tol, 1}), adelic_lattice_sum(phi, {tol, 2}));
      const PoissonInput hat = poisson_fourier(phi);
      check(adelic_lattice_sum(hat, {tol, 1}), adelic_lattice_sum(hat, {tol, 2}));
    }
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " doublings inside the first bound"};
}

Outcome fixtures() {
  const HeckeElement q2 = hecke_from_json(parse_json_text(fixture_text("q2_support.json")));
  const TraceReport r = verify_trace_formula(q2, 1e-8);
  const bool exact = r.spectral.total.value == std::complex<double>(1.0) && r.geometric.total.value == std::complex<double>(1.0);

  const PoissonReport z2 = poisson_check(poisson_from_json(parse_json_text(fixture_text("poisson_two_z2.json"))), 1e-8);
  double even = 1.0;
  for (int n = 1; n <= 4; ++n) even += 2 * std::exp(-4 * std::numbers::pi * n * n);
  const double half = 0.5 * static_cast<double>(oracle::lattice_direct(ArchFunction::gaussian(), 2, 20).real());
  const bool poisson = z2.pass && std::abs(z2.lhs.value - even) <= z2.lhs.bound + 1e-15 &&
                       std::abs(z2.rhs.value - half) <= z2.rhs.bound + 1e-15 && std::abs(z2.lhs.value - 1.0000070) < 1e-7;
  return {r.pass && exact && poisson,
          fmt("q-support {2}: %.17g = %.17g; ", r.spectral.total.value.real(), r.geometric.total.value.real()) +
              fmt("Poisson 1_{2Z_2}: lhs %.10f rhs %.10f direct %.10f", z2.lhs.value.real(), z2.rhs.value.real(), even)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"theta identity on the default element", theta_identity},
      {"local Fourier involution", fourier_involution},
      {"local Plancherel", plancherel},
      {"character decomposition checksum", character_checksum},
      {"orbit invariance of pi_x", orbit_invariance},
      {"trace formula battery", trace_battery},
      {"Poisson battery", poisson_battery},
      {"bound validity under doubling", bound_validity},
      {"hand-computed fixtures", fixtures},
  };
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %d. %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
