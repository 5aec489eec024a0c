#pragma once

// Geometric side: orbital integrals over the conjugacy classes of G(Q).
//
//   identity    h(1, 0)
//   additive    the classes (1, x), x != 0, all conjugate to (1, 1)
//   hyperbolic  one class per q != 1; conjugating the x-coordinate by
//               (q, x) -> (q, x + (1 - q) y) has Jacobian |1 - q|_A = 1.

#include <vector>

#include "adele/hecke.hpp"

namespace adele {

struct HyperbolicTerm {
  Rational q;
  BoundedValue value;
  double jacobian = 1.0;  // |1 - q|_A by the product formula
};

struct GeometricReport {
  BoundedValue identity;
  BoundedValue additive;
  std::vector<HyperbolicTerm> hyperbolic;  // ascending q
  BoundedValue hyperbolic_total;
  BoundedValue total;
};

BoundedValue term_identity(const HeckeElement& h);
BoundedValue term_additive(const HeckeElement& h, const OrbitSumOptions& opts);
/// The orbital integral at the class of q (zero if no atom has this q).
BoundedValue term_hyperbolic(const HeckeElement& h, const Rational& q);
/// One term per q != 1 in the q-support, ascending.
std::vector<HyperbolicTerm> term_hyperbolic(const HeckeElement& h);

GeometricReport geometric_total(const HeckeElement& h, const OrbitSumOptions& opts);

}  // namespace adele
