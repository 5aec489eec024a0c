#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "adele/trace.hpp"
#include "fixture_io.hpp"
#include "oracles.hpp"

using namespace adele;

namespace {

HeckeElement fixture(const std::string& name) { return hecke_from_json(parse_json_text(fixture_text(name))); }

PoissonInput poisson_fixture(const std::string& name) { return poisson_from_json(parse_json_text(fixture_text(name))); }

/// \sum_{q in (1/D)Z, |q| <= M} phi(q) from pointwise values.
std::complex<double> poisson_direct(const PoissonInput& phi, long M) {
  long D = 1;
  for (const auto& [p, f] : phi.locals) {
    const long s = f.support_level();
    if (s < 0) D *= static_cast<long>(ipow(p, static_cast<unsigned>(-s)));
  }
  std::complex<double> total = 0;
  for (long n = -M * D; n <= M * D; ++n) {
    const Rational q = make_rational(n, D);
    BigInt den = q.get_den();
    Cyclotomic finite(1);
    for (const auto& [p, f] : phi.locals) {
      finite *= sb_eval(f, q);
      while (mpz_divisible_ui_p(den.get_mpz_t(), p)) den /= p;
    }
    if (den != 1 || finite.is_zero()) continue;
    total += cyclo_eval(finite).value() * arch_eval(phi.arch, q.get_d());
  }
  return total;
}

}  // namespace

TEST_CASE("verify on the default element") {
  const TraceReport r = verify_trace_formula(HeckeElement::standard(), 1e-8);
  CHECK(r.pass);
  CHECK(r.residual < 1e-10);
  const double theta = static_cast<double>(oracle::lattice_direct(ArchFunction::gaussian(), 1, 8).real());
  CHECK(std::abs(r.spectral.total.value - theta) < 1e-12);
  CHECK(std::abs(r.geometric.total.value - theta) < 1e-12);
  CHECK(std::abs(r.spectral.total.value - 1.0864348112) < 1e-10);
}

TEST_CASE("verify on hand-computed fixtures") {
  const TraceReport two = verify_trace_formula(fixture("q2_support.json"), 1e-8);
  CHECK(two.pass);
  CHECK(two.spectral.total.value == std::complex<double>(1.0));
  CHECK(two.geometric.total.value == std::complex<double>(1.0));
  CHECK(two.residual == 0.0);

  const TraceReport z2 = verify_trace_formula(fixture("two_z2.json"), 1e-8);
  CHECK(z2.pass);
  CHECK(std::abs(z2.spectral.total.value - 1.0000069747) < 1e-9);
  CHECK(std::abs(z2.geometric.total.value - 1.0000069747) < 1e-9);
  CHECK(z2.residual < 1e-12);

  CHECK(verify_trace_formula(fixture("unit_2_mod_3.json"), 1e-8).pass);
  CHECK_THROWS_AS(verify_trace_formula(HeckeElement::standard(), 0.0), std::invalid_argument);
}

TEST_CASE("verdict follows residual against bound plus tol") {
  Rng rng(137);
  const RandomBox box;
  for (int i = 0; i < 10; ++i) {
    const TraceReport r = verify_trace_formula(random_hecke(rng, box), 1e-8);
    CHECK(r.pass == (r.residual <= r.certified_bound + 1e-8));
    CHECK(r.certified_bound >= r.spectral.total.bound);
    CHECK(r.certified_bound >= r.geometric.total.bound);
    CHECK(r.pass);
  }
}

TEST_CASE("poisson_check") {
  const PoissonReport d = poisson_check(PoissonInput{}, 1e-8);
  CHECK(d.pass);
  CHECK(std::abs(d.lhs.value - 1.0864348112) < 1e-10);
  CHECK(std::abs(d.rhs.value - 1.0864348112) < 1e-10);

  const PoissonReport z2 = poisson_check(poisson_fixture("poisson_two_z2.json"), 1e-8);
  CHECK(z2.pass);
  const double pi = std::numbers::pi;
  double even = 1;
  for (int n = 1; n <= 4; ++n) even += 2 * std::exp(-pi * 4 * n * n);
  const double half = 0.5 * static_cast<double>(oracle::lattice_direct(ArchFunction::gaussian(), 2, 16).real());
  CHECK(std::abs(z2.lhs.value - even) <= z2.lhs.bound + 1e-15);
  CHECK(std::abs(z2.rhs.value - half) <= z2.rhs.bound + 1e-15);
  CHECK(std::abs(z2.lhs.value - 1.0000070) < 1e-7);

  PoissonInput zero;
  zero.arch = ArchFunction{};
  const PoissonReport r0 = poisson_check(zero, 1e-8);
  CHECK(r0.pass);
  CHECK(r0.lhs.value == std::complex<double>(0.0));
  CHECK(r0.rhs.value == std::complex<double>(0.0));
  CHECK_THROWS_AS(poisson_check(PoissonInput{}, -1.0), std::invalid_argument);
}

TEST_CASE("adelic lattice sums agree with pointwise summation") {
  Rng rng(139);
  const RandomBox box;
  for (int i = 0; i < 20; ++i) {
    const PoissonInput phi = random_poisson(rng, box);
    const BoundedValue lhs = adelic_lattice_sum(phi, {1e-12, 1});
    CHECK(std::abs(lhs.value - poisson_direct(phi, 7)) <= lhs.bound + 1e-12);
    const PoissonInput hat = poisson_fourier(phi);
    const BoundedValue rhs = adelic_lattice_sum(hat, {1e-12, 1});
    CHECK(std::abs(rhs.value - poisson_direct(hat, 7)) <= rhs.bound + 1e-12);
    CHECK(poisson_check(phi, 1e-8).pass);
  }
}

TEST_CASE("random inputs are deterministic") {
  CHECK(hecke_to_json(random_hecke(1)).dump() == hecke_to_json(random_hecke(1)).dump());
  CHECK(poisson_to_json(random_poisson(5)).dump() == poisson_to_json(random_poisson(5)).dump());
  CHECK(hecke_to_json(random_hecke(1)).dump() != hecke_to_json(random_hecke(2)).dump());
  Rng a(9), b(9);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng c(3);
  for (int i = 0; i < 1000; ++i) {
    const long v = c.integer(-3, 4);
    CHECK(v >= -3);
    CHECK(v <= 4);
    const double x = c.real(0.5, 2.0);
    CHECK(x >= 0.5);
    CHECK(x < 2.0);
  }
}

TEST_CASE("random elements stay in their box") {
  RandomBox box;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const HeckeElement h = random_hecke(seed, box);
    std::set<std::string> qs;
    for (const auto& atom : h.atoms) {
      qs.insert(to_string(atom.q));
      CHECK(atom.q != 0);
      CHECK(abs(atom.q.get_num()) <= box.max_q_num);
      CHECK(atom.q.get_den() <= box.max_q_den);
      for (const auto& [p, f] : atom.locals) {
        CHECK(std::find(box.primes.begin(), box.primes.end(), p) != box.primes.end());
        if (f.additive.is_zero()) continue;
        // centers and twists reach depth digits past the drawn level
        CHECK(f.additive.support_level() >= -box.max_level - box.depth);
        CHECK(f.additive.constancy_level() <= box.max_level + box.depth);
      }
      for (const auto& a : atom.arch.atoms) {
        CHECK(a.width >= box.min_width);
        CHECK(a.width <= box.max_width);
      }
    }
    CHECK(static_cast<long>(qs.size()) <= box.max_q_support);
  }
}

TEST_CASE("reports are deterministic and complete") {
  const HeckeElement h = random_hecke(4);
  TraceReport a = verify_trace_formula(h, 1e-8), b = verify_trace_formula(h, 1e-8);
  a.metadata.input_sha256 = b.metadata.input_sha256 = sha256_hex(hecke_to_json(h).dump());
  const Json ja = trace_report_to_json(a), jb = trace_report_to_json(b);
  CHECK(ja.dump() == jb.dump());
  CHECK(ja["metadata"]["schema"] == kSchema);
  CHECK(ja["verdict"] == "pass");
  for (const char* key : {"spectral", "geometric", "residual", "certified_bound", "metadata"}) CHECK(ja.contains(key));
  CHECK(ja["metadata"]["version"] == kVersion);
  CHECK(ja["metadata"]["tolerances"]["tol"] == 1e-8);
  CHECK(ja["spectral"].contains("tr_RK"));
  CHECK(ja["geometric"].contains("hyperbolic_terms"));

  const Json jp = poisson_report_to_json(poisson_check(random_poisson(4), 1e-8));
  for (const char* key : {"lhs", "rhs", "residual", "bound", "verdict", "metadata"}) CHECK(jp.contains(key));
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("Poisson documents") {
  Rng rng(149);
  for (int i = 0; i < 30; ++i) {
    const PoissonInput phi = random_poisson(rng, RandomBox{});
    const Json j = poisson_to_json(phi);
    const PoissonInput back = poisson_from_json(parse_json_text(j.dump()));
    CHECK(poisson_to_json(back).dump() == j.dump());
  }
  CHECK_THROWS_AS(poisson_from_json(parse_json_text(R"({"locals":[{"p":2},{"p":2}]})")), ParseError);
  CHECK_THROWS_AS(poisson_from_json(parse_json_text(R"({"locals":[{"p":6}]})")), ParseError);
}
