#include "adele/geometric.hpp"

#include <set>
#include <stdexcept>

#include "adele/spectral.hpp"

namespace adele {

BoundedValue term_identity(const HeckeElement& h) {
  h.validate();
  BoundedValue total;
  for (const auto& a : h.atoms) {
    if (a.q != 1) continue;
    Cyclotomic finite(1);
    for (const auto& [p, f] : a.locals) finite = finite * f.unit.eval(1) * sb_eval(f.additive, 0);
    if (finite.is_zero()) continue;
    ComplexApprox v = exact_complex(a.coeff);
    v *= cyclo_eval(finite);
    v *= arch_eval_approx(a.arch, 0.0);
    total += to_bounded(v);
  }
  return total;
}

BoundedValue term_additive(const HeckeElement& h, const OrbitSumOptions& opts) {
  if (!(opts.lattice.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  h.validate();
  std::size_t n = 0;
  for (const auto& a : h.atoms) n += a.q == 1 ? 1 : 0;
  if (n == 0) return {};
  OrbitSumOptions per = opts;
  per.lattice.tol = opts.lattice.tol / static_cast<double>(n);
  BoundedValue total;
  for (const auto& a : h.atoms) {
    if (a.q == 1) total += idele_orbit_integral(a, 1, per);
  }
  return total;
}

BoundedValue term_hyperbolic(const HeckeElement& h, const Rational& q) {
  if (q == 0 || q == 1) throw std::invalid_argument("hyperbolic classes have q outside {0, 1}");
  h.validate();
  BoundedValue total;
  for (const auto& a : h.atoms) {
    if (a.q != q) continue;
    const Cyclotomic finite = atom_finite_trace(a);
    if (finite.is_zero()) continue;
    ComplexApprox v = exact_complex(a.coeff);
    v *= cyclo_eval(finite);
    v *= arch_integral_approx(a.arch);
    total += to_bounded(v);
  }
  return total;
}

std::vector<HyperbolicTerm> term_hyperbolic(const HeckeElement& h) {
  std::set<Rational> qs;
  for (const auto& a : h.atoms) {
    if (a.q != 1) qs.insert(a.q);
  }
  std::vector<HyperbolicTerm> out;
  for (const auto& q : qs) out.push_back({q, term_hyperbolic(h, q), 1.0});
  return out;
}

GeometricReport geometric_total(const HeckeElement& h, const OrbitSumOptions& opts) {
  GeometricReport r;
  r.identity = term_identity(h);
  r.additive = term_additive(h, opts);
  r.hyperbolic = term_hyperbolic(h);
  for (const auto& t : r.hyperbolic) r.hyperbolic_total += t.value;
  r.total = r.identity + r.additive + r.hyperbolic_total;
  return r;
}

}  // namespace adele
