// adele-trace: command-line front end.
//
// Exit codes: 0 pass, 1 verification failure, 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "adele/trace.hpp"

namespace {

using namespace adele;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::optional<std::uint64_t> generator_seed(const Json& doc) {
  if (doc.is_object() && doc.contains("generator") && doc["generator"].is_object() &&
      doc["generator"].contains("seed") && doc["generator"]["seed"].is_number_unsigned()) {
    return doc["generator"]["seed"].get<std::uint64_t>();
  }
  return std::nullopt;
}

std::vector<std::uint64_t> parse_primes(const std::string& list) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      throw InputError("--primes: '" + item + "' is not an integer");
    }
    if (used != item.size() || !is_prime(v)) throw InputError("--primes: '" + item + "' is not a prime");
    out.push_back(v);
  }
  return out;
}

int run_verify(const std::string& input, double tol, const std::string& report) {
  const std::string text = read_file(input);
  const Json doc = parse_json_text(text);
  const HeckeElement h = hecke_from_json(doc);
  OrbitSumOptions opts;
  opts.lattice.tol = kDefaultLatticeTol;
  TraceReport r = verify_trace_formula(h, tol, opts);
  r.metadata.input_sha256 = sha256_hex(text);
  r.metadata.seed = generator_seed(doc);
  emit(trace_report_to_json(r), report);
  if (!r.pass) std::cerr << "verify: residual " << r.residual << " exceeds bound " << r.certified_bound << " + tol\n";
  return r.pass ? kPass : kFail;
}

int run_poisson(const std::string& input, double tol, const std::string& report) {
  const std::string text = read_file(input);
  const Json doc = parse_json_text(text);
  const PoissonInput phi = poisson_from_json(doc);
  PoissonReport r = poisson_check(phi, tol);
  r.metadata.input_sha256 = sha256_hex(text);
  r.metadata.seed = generator_seed(doc);
  emit(poisson_report_to_json(r), report);
  if (!r.pass) std::cerr << "poisson: residual " << r.residual << " exceeds bound " << r.bound << " + tol\n";
  return r.pass ? kPass : kFail;
}

int run_chars(const std::string& input, std::uint64_t modulus, const std::string& report) {
  const HeckeElement h = hecke_from_json(parse_json_text(read_file(input)));
  const CharDecomposition d = char_decompose(h, modulus);
  emit(char_decomposition_to_json(d), report);
  const bool ok = d.checksum_exact && d.checksum_within_bounds;
  if (!ok) std::cerr << "chars: checksum failed\n";
  return ok ? kPass : kFail;
}

int run_fourier(std::uint64_t p, const std::string& input, const std::string& report) {
  if (!is_prime(p)) throw InputError("--p: " + std::to_string(p) + " is not prime");
  const Json doc = parse_json_text(read_file(input));
  LocalSB f = doc.is_array() ? localsb_from_atoms_json(Prime(p), doc) : localsb_from_json(doc);
  if (f.p().value() != p) {
    throw ParseError("$.p", "input is a function at " + std::to_string(f.p().value()) + ", not at --p " +
                                std::to_string(p));
  }
  emit(localsb_to_json(sb_fourier(f)), report);
  return kPass;
}

int run_random(std::uint64_t seed, const std::string& primes, long atoms, long max_level, const std::string& kind,
               const std::string& output) {
  RandomBox box;
  box.primes = parse_primes(primes);
  if (atoms < 0) throw InputError("--atoms must be non-negative");
  if (max_level < 0) throw InputError("--max-level must be non-negative");
  box.atoms = atoms;
  box.max_level = max_level;
  Json doc;
  if (kind == "hecke") {
    doc = hecke_to_json(random_hecke(seed, box));
  } else if (kind == "poisson") {
    doc = poisson_to_json(random_poisson(seed, box));
  } else {
    throw InputError("--kind must be hecke or poisson");
  }
  doc["generator"] = {{"seed", seed}, {"primes", box.primes}, {"atoms", atoms}, {"max_level", max_level}, {"kind", kind}};
  emit(doc, output);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Both sides of the trace formula for A^1 x| A over Q, with certified bounds"};
  app.set_version_flag("--version", std::string(adele::kVersion));
  app.require_subcommand(1);

  std::string input, report, primes = "2,3,5", kind = "hecke";
  double tol = 1e-8;
  std::uint64_t modulus = 1, p = 2, seed = 1;
  long atoms = 2, max_level = 2;

  auto* verify = app.add_subcommand("verify", "Evaluate both sides of the trace formula for a Hecke element");
  verify->add_option("--input", input, "Hecke element JSON")->required();
  verify->add_option("--tol", tol, "Verdict tolerance on top of the certified bound");
  verify->add_option("--report", report, "Write the report here instead of standard output");

  auto* poisson = app.add_subcommand("poisson", "Check Poisson summation for a factorizable function on A");
  poisson->add_option("--input", input, "Function JSON")->required();
  poisson->add_option("--tol", tol, "Verdict tolerance on top of the certified bound");
  poisson->add_option("--report", report, "Write the report here instead of standard output");

  auto* chars = app.add_subcommand("chars", "Split tr R_K over the Dirichlet characters mod N");
  chars->add_option("--input", input, "Hecke element JSON")->required();
  chars->add_option("--modulus", modulus, "Modulus N")->required();
  chars->add_option("--report", report, "Write the report here instead of standard output");

  auto* fourier = app.add_subcommand("fourier", "Local Fourier transform of a LocalSB");
  fourier->add_option("--p", p, "Prime")->required();
  fourier->add_option("--input", input, "LocalSB JSON ({p, atoms} or an atom list)")->required();
  fourier->add_option("--report", report, "Write the result here instead of standard output");

  auto* random = app.add_subcommand("random", "Generate a seeded random input");
  random->add_option("--seed", seed, "Seed")->required();
  random->add_option("--primes", primes, "Comma-separated primes");
  random->add_option("--atoms", atoms, "Number of atoms");
  random->add_option("--max-level", max_level, "Largest |level|");
  random->add_option("--kind", kind, "hecke or poisson");
  random->add_option("--output", report, "Write the document here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*verify) return run_verify(input, tol, report);
    if (*poisson) return run_poisson(input, tol, report);
    if (*chars) return run_chars(input, modulus, report);
    if (*fourier) return run_fourier(p, input, report);
    if (*random) return run_random(seed, primes, atoms, max_level, kind, report);
  } catch (const adele::ParseError& e) {
    std::cerr << "input error at " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const adele::ConductorOverflow& e) {
    std::cerr << "input out of range: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
