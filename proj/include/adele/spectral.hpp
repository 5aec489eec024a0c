#pragma once

// Spectral side: traces of R(h) on L^2(G(Q)\G(A)) and on its pieces.
//
//   R_K    : the part of the spectrum trivial on the additive variable,
//            split further by Dirichlet characters of the unit group;
//   pi_1   : the representation induced from the standard additive character.
//
// All finite-place quantities are exact cyclotomic numbers; the real place
// contributes Gaussian integrals or certified lattice sums.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adele/hecke.hpp"

namespace adele {

/// Image of one standard generator of (Z/NZ)^x: chi(gen) = e(angle).
struct GeneratorImage {
  std::uint64_t gen = 1;  // lifted to [1, N), congruent to 1 at the other prime powers
  Rational angle{0};
  std::uint64_t prime = 2;
  unsigned exponent = 1;      // p^exponent || N
  std::uint64_t local_gen = 1;  // generator mod p^exponent
  std::uint64_t order = 1;

  friend bool operator==(const GeneratorImage&, const GeneratorImage&) = default;
};

/// A Dirichlet character mod N, described by its values on the standard
/// generators: a primitive root for each odd p^k, and -1, 5 for 2^k (only -1
/// when k = 2, none when k = 1).
class DirichletCharacter {
 public:
  /// The trivial character mod N.
  explicit DirichletCharacter(std::uint64_t modulus = 1);

  /// Every character mod N, in lexicographic order of generator exponents.
  static std::vector<DirichletCharacter> all(std::uint64_t modulus);
  /// The generators for N with all angles 0.
  static std::vector<GeneratorImage> standard_generators(std::uint64_t modulus);
  /// Throws std::invalid_argument if the generators do not match the
  /// standard ones for N or an angle is not a root of the right order.
  static DirichletCharacter from_images(std::uint64_t modulus,
                                        const std::vector<std::pair<std::uint64_t, Rational>>& images);

  std::uint64_t modulus() const { return modulus_; }
  const std::vector<GeneratorImage>& generators() const { return gens_; }
  bool is_trivial() const;

  /// chi(n), zero when gcd(n, N) > 1.
  Cyclotomic operator()(std::int64_t n) const;
  /// The local component chi_p at a p-adic unit u; 1 when p does not divide N.
  Cyclotomic local_value(const Prime& p, const Rational& u) const;
  /// k with p^k || N.
  unsigned local_exponent(const Prime& p) const;

  friend bool operator==(const DirichletCharacter&, const DirichletCharacter&) = default;

 private:
  std::uint64_t modulus_;
  std::vector<GeneratorImage> gens_;
};

std::string to_string(const DirichletCharacter& chi);

/// Exact finite-place factor of one atom on R_K:
/// prod_p unit_p(1) \int additive_p.
Cyclotomic atom_finite_trace(const HeckeAtom& atom);
/// Exact finite-place factor of one atom on the chi-isotypic part:
/// prod_p \int_{Z_p^x} unit_p chi_p d^x u * \int additive_p.
Cyclotomic atom_finite_trace(const HeckeAtom& atom, const DirichletCharacter& chi);

BoundedValue trace_RK(const HeckeElement& h);
BoundedValue trace_char(const HeckeElement& h, const DirichletCharacter& chi);
BoundedValue trace_pi1(const HeckeElement& h, const OrbitSumOptions& opts);
BoundedValue trace_pi1(const HeckeElement& h, double tol);

/// Trace on the representation attached to x in Q and a unit character
/// alpha. For x != 0 alpha must be trivial (the orbit of x is free); x = 0
/// gives the alpha-isotypic part of R_K.
BoundedValue trace_pi_x(const HeckeElement& h, const Rational& x, const DirichletCharacter& alpha,
                        const OrbitSumOptions& opts);

/// Smallest N such that every unit factor of h factors through (Z/NZ)^x.
std::uint64_t required_conductor(const HeckeElement& h);

struct CharacterTrace {
  DirichletCharacter chi;
  BoundedValue trace;
};

struct CharDecomposition {
  std::uint64_t modulus = 1;
  std::vector<CharacterTrace> traces;
  BoundedValue sum;      // sum of the character traces
  BoundedValue trace_rk;
  /// Per atom: sum_chi of the exact finite factors equals the R_K factor.
  bool checksum_exact = false;
  double checksum_residual = 0.0;  // |sum - trace_rk|
  bool checksum_within_bounds = false;
};

/// Splits tr R_K(h) over the characters mod N. Throws std::invalid_argument
/// if N is not a multiple of required_conductor(h).
CharDecomposition char_decompose(const HeckeElement& h, std::uint64_t modulus);

struct SpectralReport {
  BoundedValue rk;
  BoundedValue pi1;
  BoundedValue total;
};

SpectralReport spectral_side(const HeckeElement& h, const OrbitSumOptions& opts);

}  // namespace adele
