#pragma once

// JSON forms of every value type. Rationals are strings "p/q" or "n",
// cyclotomic numbers lists of {angle, coeff}, floats plain decimals.
// Parsers throw ParseError carrying a JSON path such as
// "$.atoms[0].locals[1].additive[2].level".

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "adele/geometric.hpp"
#include "adele/hecke.hpp"
#include "adele/spectral.hpp"

namespace adele {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "adele-trace/1";

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Parses text as JSON; syntax errors become ParseError at "$".
Json parse_json_text(const std::string& text);

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& path = "$");

Json cyclotomic_to_json(const Cyclotomic& c);
/// Also accepts a bare rational string.
Cyclotomic cyclotomic_from_json(const Json& j, const std::string& path = "$");

Json ball_to_json(const PadicBall& b);
PadicBall ball_from_json(const Json& j, const std::string& path = "$");

/// Atom list only (the prime is supplied by the caller).
Json localsb_atoms_to_json(const LocalSB& f);
LocalSB localsb_from_atoms_json(const Prime& p, const Json& j, const std::string& path = "$");
/// {p, atoms}.
Json localsb_to_json(const LocalSB& f);
LocalSB localsb_from_json(const Json& j, const std::string& path = "$");

Json unit_atoms_to_json(const UnitFunction& g);
UnitFunction unit_from_atoms_json(const Prime& p, const Json& j, const std::string& path = "$");

Json arch_to_json(const ArchFunction& f);
ArchFunction arch_from_json(const Json& j, const std::string& path = "$");

/// Canonical document with the schema field.
Json hecke_to_json(const HeckeElement& h);
HeckeElement hecke_from_json(const Json& j, const std::string& path = "$");

Json character_to_json(const DirichletCharacter& chi);
DirichletCharacter character_from_json(const Json& j, const std::string& path = "$");

Json bounded_to_json(const BoundedValue& v);
Json spectral_to_json(const SpectralReport& r);
Json geometric_to_json(const GeometricReport& r);
Json char_decomposition_to_json(const CharDecomposition& d);

}  // namespace adele
