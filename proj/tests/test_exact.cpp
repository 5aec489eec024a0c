#include <doctest.h>

#include <cmath>
#include <numbers>

#include "adele/exact.hpp"
#include "adele/trace.hpp"

using namespace adele;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Rational random_angle(Rng& rng, long max_den) {
  return make_rational(rng.integer(0, 4 * max_den), rng.integer(1, max_den));
}

Cyclotomic random_cyclotomic(Rng& rng, long terms, long max_den) {
  CyclotomicSum s;
  for (long i = 0; i < terms; ++i) s.add(random_angle(rng, max_den), make_rational(rng.integer(-5, 5), rng.integer(1, 4)));
  return cyclo_reduce(s);
}

bool near(const ComplexApprox& a, std::complex<double> z, double slack = 0.0) {
  return std::abs(a.value() - z) <= a.err + slack;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == make_rational(1, 2));
  CHECK(parse_rational("-7") == -7);
  CHECK(to_string(make_rational(-4, 6)) == "-2/3");
  CHECK(to_string(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK(mod_one(make_rational(-1, 3)) == make_rational(2, 3));
}

TEST_CASE("root_of_unity") {
  CHECK(root_of_unity(0) == Cyclotomic(1));
  CHECK(root_of_unity(make_rational(1, 2)) == Cyclotomic(-1));
  CHECK(root_of_unity(make_rational(5, 4)) == root_of_unity(make_rational(1, 4)));
  CHECK(root_of_unity(make_rational(-1, 4)) == root_of_unity(make_rational(3, 4)));
}

TEST_CASE("cyclo_reduce") {
  CyclotomicSum s;
  s.add(0, 1).add(make_rational(1, 3), 1).add(make_rational(2, 3), 1);
  CHECK(cyclo_reduce(s).is_zero());
  const ComplexApprox v = cyclo_eval(root_of_unity(0) + root_of_unity(make_rational(1, 3)) + root_of_unity(make_rational(2, 3)));
  CHECK(std::abs(v.value()) < 1e-15);

  CyclotomicSum t;
  t.add(make_rational(1, 2), 1).add(0, 1);
  CHECK(cyclo_reduce(t).is_zero());

  const Cyclotomic two_i = root_of_unity(make_rational(1, 4)) * Rational(2);
  CHECK(cyclo_reduce(two_i) == two_i);
  CHECK(two_i.size() == 1);
  CHECK(two_i.conductor() == 4);
}

TEST_CASE("canonical form is unique across different spellings") {
  // e(1/3) = -1 - e(2/3) and e(1/6) = 1 + e(1/3)
  CHECK(root_of_unity(make_rational(1, 3)) == Cyclotomic(-1) - root_of_unity(make_rational(2, 3)));
  CHECK(root_of_unity(make_rational(1, 6)) == Cyclotomic(1) + root_of_unity(make_rational(1, 3)));
  CHECK(root_of_unity(make_rational(1, 6)) - Cyclotomic(1) == root_of_unity(make_rational(1, 3)));
  // sqrt(2) two ways: e(1/8) + e(7/8) and -(e(3/8) + e(5/8))
  CHECK(root_of_unity(make_rational(1, 8)) + root_of_unity(make_rational(7, 8)) ==
        -(root_of_unity(make_rational(3, 8)) + root_of_unity(make_rational(5, 8))));
  // minimal conductor after cancellation
  const Cyclotomic c = root_of_unity(make_rational(1, 15)) + Cyclotomic(1) - root_of_unity(make_rational(1, 15));
  CHECK(c == Cyclotomic(1));
  CHECK(c.conductor() == 1);
}

TEST_CASE("cyclo_eval") {
  const ComplexApprox i = cyclo_eval(root_of_unity(make_rational(1, 4)));
  CHECK(near(i, {0.0, 1.0}));
  const ComplexApprox w = cyclo_eval(root_of_unity(make_rational(1, 3)));
  CHECK(near(w, {-0.5, std::sqrt(3.0) / 2.0}, kEps));
  const ComplexApprox z = cyclo_eval(Cyclotomic());
  CHECK(z.re == 0.0);
  CHECK(z.im == 0.0);
  CHECK(z.err == 0.0);
}

TEST_CASE("cyclo_eval radius stays within terms * eps * sum |coeff|") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Cyclotomic c = random_cyclotomic(rng, 1 + trial % 6, 12);
    if (c.is_zero()) continue;
    const ComplexApprox v = cyclo_eval(c);
    double coeffs = 0.0;
    for (const auto& t : c.terms()) coeffs += std::fabs(t.coeff.get_d());
    CHECK(v.err <= static_cast<double>(c.size()) * kEps * coeffs * (1.0 + 1e-9));
  }
}

TEST_CASE("cyclo_eval matches closed forms within its radius") {
  const double s2 = std::sqrt(2.0) / 2.0, s3 = std::sqrt(3.0) / 2.0;
  const std::pair<Rational, std::complex<double>> cases[] = {
      {make_rational(1, 8), {s2, s2}},   {make_rational(3, 8), {-s2, s2}}, {make_rational(1, 12), {s3, 0.5}},
      {make_rational(5, 12), {-s3, 0.5}}, {make_rational(1, 6), {0.5, s3}}, {make_rational(7, 8), {s2, -s2}},
  };
  for (const auto& [angle, z] : cases) {
    const ComplexApprox v = cyclo_eval(root_of_unity(angle) * make_rational(7, 3));
    CHECK(std::abs(v.value() - z * (7.0 / 3.0)) <= v.err + 4 * kEps);
  }
}

TEST_CASE("products of roots of unity add angles") {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const Rational r = random_angle(rng, 30), s = random_angle(rng, 30);
    CHECK(root_of_unity(r) * root_of_unity(s) == root_of_unity(r + s));
  }
}

TEST_CASE("reduction is idempotent and preserves the value") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    CyclotomicSum raw;
    std::complex<long double> direct = 0;
    for (int k = 0; k < 5; ++k) {
      const Rational a = random_angle(rng, 20), c = make_rational(rng.integer(-9, 9), rng.integer(1, 5));
      raw.add(a, c);
      const long double th = 2 * std::numbers::pi_v<long double> * mod_one(a).get_d();
      direct += static_cast<long double>(c.get_d()) * std::complex<long double>(std::cos(th), std::sin(th));
    }
    const Cyclotomic c = cyclo_reduce(raw);
    CHECK(cyclo_reduce(c) == c);
    CyclotomicSum again;
    again.add(c);
    CHECK(cyclo_reduce(again) == c);
    const ComplexApprox v = cyclo_eval(c);
    CHECK(std::abs(v.value() - std::complex<double>(direct)) <= v.err + 1e-14);
  }
}

TEST_CASE("sum of p-th roots of unity vanishes") {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    CyclotomicSum s;
    for (std::uint64_t k = 0; k < p; ++k) s.add(make_rational(static_cast<long>(k), static_cast<long>(p)), 1);
    CHECK(cyclo_reduce(s).is_zero());
  }
}

TEST_CASE("conjugation") {
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const Rational r = random_angle(rng, 40);
    CHECK(root_of_unity(r).conj() == root_of_unity(1 - r));
    const Cyclotomic c = random_cyclotomic(rng, 4, 12);
    const Cyclotomic n = c * c.conj();
    CHECK(n == n.conj());
    const ComplexApprox v = cyclo_eval(n);
    CHECK(std::fabs(v.im) <= v.err);
  }
}

TEST_CASE("arithmetic identities") {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const Cyclotomic a = random_cyclotomic(rng, 3, 12), b = random_cyclotomic(rng, 3, 12),
                     c = random_cyclotomic(rng, 3, 12);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a - a == Cyclotomic());
    CHECK(a * b == b * a);
  }
}

TEST_CASE("conductor cap") {
  const auto saved = conductor_limit();
  set_conductor_limit(100);
  CHECK_THROWS_AS(root_of_unity(make_rational(1, 101)), ConductorOverflow);
  CHECK_NOTHROW(root_of_unity(make_rational(1, 97)));
  CHECK_THROWS_AS(root_of_unity(make_rational(1, 11)) * root_of_unity(make_rational(1, 13)), ConductorOverflow);
  set_conductor_limit(saved);
  CHECK_NOTHROW(root_of_unity(make_rational(1, 11)) * root_of_unity(make_rational(1, 13)));
}

TEST_CASE("ComplexApprox propagation covers the true value") {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const Cyclotomic a = random_cyclotomic(rng, 3, 10), b = random_cyclotomic(rng, 3, 10);
    const ComplexApprox va = cyclo_eval(a), vb = cyclo_eval(b);
    const ComplexApprox prod = va * vb, sum = va + vb;
    const ComplexApprox exact_prod = cyclo_eval(a * b), exact_sum = cyclo_eval(a + b);
    CHECK(std::abs(prod.value() - exact_prod.value()) <= prod.err + exact_prod.err);
    CHECK(std::abs(sum.value() - exact_sum.value()) <= sum.err + exact_sum.err);
  }
}
