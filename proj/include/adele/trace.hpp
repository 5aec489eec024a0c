#pragma once

// End-to-end checks: the trace formula for a Hecke element, Poisson
// summation for a factorizable function on A, seeded random inputs, and the
// JSON reports written by the command-line tool.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "adele/geometric.hpp"
#include "adele/io.hpp"
#include "adele/spectral.hpp"

namespace adele {

inline constexpr const char* kVersion = "0.1.0";

/// Tolerance handed to every truncated lattice sum; its tails are part of the
/// certified bound, so it only needs to sit well below the verdict slack.
inline constexpr double kDefaultLatticeTol = 1e-13;

struct ReportMetadata {
  std::string input_sha256;
  std::optional<std::uint64_t> seed;
  double tol = 0.0;
  double lattice_tol = kDefaultLatticeTol;
};

struct TraceReport {
  SpectralReport spectral;
  GeometricReport geometric;
  double residual = 0.0;
  double certified_bound = 0.0;
  bool pass = false;
  ReportMetadata metadata;
};

/// Throws std::invalid_argument unless tol > 0.
TraceReport verify_trace_formula(const HeckeElement& h, double tol, const OrbitSumOptions& opts = {});
Json trace_report_to_json(const TraceReport& r);

/// A factorizable function on A: additive factors at finitely many primes
/// (1_{Z_p} elsewhere) and a real factor.
struct PoissonInput {
  std::map<std::uint64_t, LocalSB> locals;
  ArchFunction arch = ArchFunction::gaussian();

  void set_local(LocalSB f);
};

Json poisson_to_json(const PoissonInput& phi);
PoissonInput poisson_from_json(const Json& j, const std::string& path = "$");

struct PoissonReport {
  BoundedValue lhs;  // sum over Q of phi
  BoundedValue rhs;  // sum over Q of the transform
  double residual = 0.0;
  double bound = 0.0;
  bool pass = false;
  ReportMetadata metadata;
};

/// \sum_{q in Q} phi(q): a lattice sum over (1/D)Z with exact finite weights.
BoundedValue adelic_lattice_sum(const PoissonInput& phi, const LatticeOptions& opts);
PoissonInput poisson_fourier(const PoissonInput& phi);
PoissonReport poisson_check(const PoissonInput& phi, double tol, const LatticeOptions& opts = {kDefaultLatticeTol, 1});
Json poisson_report_to_json(const PoissonReport& r);

// ---------------------------------------------------------------------------
// Random inputs.

/// mt19937_64 with fixed integer and real mappings, so draws are identical
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  /// Uniform in [lo, hi].
  long integer(long lo, long hi);
  /// Uniform in [lo, hi).
  double real(double lo, double hi);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 eng_;
};

/// Parameter box for random inputs. Balls have |level| <= max_level; centers
/// and twists reach at most `depth` digits beyond the ball's own scale, which
/// keeps the class closed under the Fourier transform without blowing up the
/// canonical forms.
struct RandomBox {
  std::vector<std::uint64_t> primes{2, 3, 5};
  long atoms = 2;
  long max_level = 2;
  long depth = 1;
  long max_q_support = 3;
  long max_q_den = 6;
  long max_q_num = 6;
  double min_width = 0.5;
  double max_width = 2.0;
  double max_shift = 1.0;
  double max_modulation = 1.0;
};

LocalSB random_localsb(Rng& rng, const Prime& p, const RandomBox& box);
UnitFunction random_unit_function(Rng& rng, const Prime& p, const RandomBox& box);
ArchFunction random_arch(Rng& rng, const RandomBox& box);
HeckeElement random_hecke(Rng& rng, const RandomBox& box);
PoissonInput random_poisson(Rng& rng, const RandomBox& box);

HeckeElement random_hecke(std::uint64_t seed, const RandomBox& box = {});
PoissonInput random_poisson(std::uint64_t seed, const RandomBox& box = {});

/// SHA-256 of the bytes, lowercase hex.
std::string sha256_hex(const std::string& bytes);

}  // namespace adele
