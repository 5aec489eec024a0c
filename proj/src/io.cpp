#include "adele/io.hpp"

#include <cmath>
#include <set>

namespace adele {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(at(path, key), "missing field");
  return *it;
}

const Json* optional(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

void expect_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
}

long get_long(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<long>();
}

std::uint64_t get_positive(const Json& j, const std::string& path) {
  const long v = get_long(j, path);
  if (v < 1) throw ParseError(path, "expected a positive integer");
  return static_cast<std::uint64_t>(v);
}

double get_double(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path, "expected a finite number");
  return v;
}

Prime get_prime(const Json& j, const std::string& path) {
  const std::uint64_t v = get_positive(j, path);
  if (!is_prime(v)) throw ParseError(path, std::to_string(v) + " is not prime");
  return Prime(v);
}

// Runs f, turning library validation errors into ParseError at path.
template <class F>
auto guarded(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  } catch (const std::overflow_error& e) {
    throw ParseError(path, e.what());
  }
}

Json complex_to_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("$", std::string("malformed JSON: ") + e.what());
  }
}

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ParseError(path, "expected a rational string \"p/q\"");
  return guarded(path, [&] { return parse_rational(j.get<std::string>()); });
}

Json cyclotomic_to_json(const Cyclotomic& c) {
  Json out = Json::array();
  for (const auto& t : c.terms()) out.push_back({{"angle", to_string(t.angle)}, {"coeff", to_string(t.coeff)}});
  return out;
}

Cyclotomic cyclotomic_from_json(const Json& j, const std::string& path) {
  if (j.is_string() || j.is_number_integer()) return Cyclotomic(rational_from_json(j, path));
  expect_array(j, path);
  CyclotomicSum sum;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = at(path, i);
    sum.add(rational_from_json(require(j[i], "angle", p), at(p, "angle")),
            rational_from_json(require(j[i], "coeff", p), at(p, "coeff")));
  }
  return guarded(path, [&] { return cyclo_reduce(sum); });
}

Json ball_to_json(const PadicBall& b) {
  return {{"p", b.p().value()}, {"center", to_string(b.center())}, {"level", b.level()}};
}

PadicBall ball_from_json(const Json& j, const std::string& path) {
  const Prime p = get_prime(require(j, "p", path), at(path, "p"));
  const Rational c = rational_from_json(require(j, "center", path), at(path, "center"));
  const long level = get_long(require(j, "level", path), at(path, "level"));
  return guarded(path, [&] { return PadicBall(p, c, level); });
}

Json localsb_atoms_to_json(const LocalSB& f) {
  Json out = Json::array();
  for (const auto& a : f.atoms()) {
    out.push_back({{"coeff", cyclotomic_to_json(a.coeff)},
                   {"twist", to_string(a.twist)},
                   {"center", to_string(a.ball.center())},
                   {"level", a.ball.level()}});
  }
  return out;
}

LocalSB localsb_from_atoms_json(const Prime& p, const Json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<TwistedBall> atoms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ap = at(path, i);
    const Cyclotomic coeff = cyclotomic_from_json(require(j[i], "coeff", ap), at(ap, "coeff"));
    Rational twist = 0;
    if (const Json* t = optional(j[i], "twist", ap)) twist = rational_from_json(*t, at(ap, "twist"));
    const Rational center = rational_from_json(require(j[i], "center", ap), at(ap, "center"));
    const long level = get_long(require(j[i], "level", ap), at(ap, "level"));
    atoms.push_back(guarded(ap, [&] { return TwistedBall::make(coeff, twist, PadicBall(p, center, level)); }));
  }
  return guarded(path, [&] { return LocalSB(p, std::move(atoms)); });
}

Json localsb_to_json(const LocalSB& f) { return {{"p", f.p().value()}, {"atoms", localsb_atoms_to_json(f)}}; }

LocalSB localsb_from_json(const Json& j, const std::string& path) {
  const Prime p = get_prime(require(j, "p", path), at(path, "p"));
  return localsb_from_atoms_json(p, require(j, "atoms", path), at(path, "atoms"));
}

Json unit_atoms_to_json(const UnitFunction& g) {
  Json out = Json::array();
  for (const auto& a : g.atoms()) {
    out.push_back({{"coeff", cyclotomic_to_json(a.coeff)},
                   {"center", to_string(a.coset.center())},
                   {"level", a.coset.level()}});
  }
  return out;
}

UnitFunction unit_from_atoms_json(const Prime& p, const Json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<UnitAtom> atoms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ap = at(path, i);
    const Cyclotomic coeff = cyclotomic_from_json(require(j[i], "coeff", ap), at(ap, "coeff"));
    const Rational center = rational_from_json(require(j[i], "center", ap), at(ap, "center"));
    const long level = get_long(require(j[i], "level", ap), at(ap, "level"));
    if (level < 1) throw ParseError(at(ap, "level"), "unit cosets need level >= 1");
    atoms.push_back(guarded(ap, [&] { return UnitAtom{coeff, PadicBall(p, center, level)}; }));
  }
  return guarded(path, [&] { return UnitFunction(p, std::move(atoms)); });
}

Json arch_to_json(const ArchFunction& f) {
  Json out = Json::array();
  for (const auto& a : f.atoms) {
    out.push_back({{"amp_re", a.amp.real()},
                   {"amp_im", a.amp.imag()},
                   {"width", a.width},
                   {"shift", a.shift},
                   {"modulation", a.modulation}});
  }
  return out;
}

ArchFunction arch_from_json(const Json& j, const std::string& path) {
  expect_array(j, path);
  ArchFunction f;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ap = at(path, i);
    ArchAtom a;
    a.amp = {get_double(require(j[i], "amp_re", ap), at(ap, "amp_re")),
             j[i].contains("amp_im") ? get_double(j[i]["amp_im"], at(ap, "amp_im")) : 0.0};
    a.width = get_double(require(j[i], "width", ap), at(ap, "width"));
    if (const Json* s = optional(j[i], "shift", ap)) a.shift = get_double(*s, at(ap, "shift"));
    if (const Json* m = optional(j[i], "modulation", ap)) a.modulation = get_double(*m, at(ap, "modulation"));
    guarded(ap, [&] {
      a.validate();
      return 0;
    });
    f.atoms.push_back(a);
  }
  return f;
}

Json hecke_to_json(const HeckeElement& h) {
  Json atoms = Json::array();
  for (const auto& a : h.atoms) {
    Json locals = Json::array();
    for (const auto& [p, f] : a.locals) {
      Json entry{{"p", p}};
      if (!f.unit.is_units_indicator()) entry["unit"] = unit_atoms_to_json(f.unit);
      if (!f.additive.is_integers_indicator()) entry["additive"] = localsb_atoms_to_json(f.additive);
      locals.push_back(std::move(entry));
    }
    atoms.push_back({{"coeff", complex_to_json(a.coeff)},
                     {"q", to_string(a.q)},
                     {"locals", std::move(locals)},
                     {"arch", arch_to_json(a.arch)}});
  }
  return {{"schema", kSchema}, {"atoms", std::move(atoms)}};
}

HeckeElement hecke_from_json(const Json& j, const std::string& path) {
  if (const Json* s = optional(j, "schema", path)) {
    if (!s->is_string() || s->get<std::string>() != kSchema) {
      throw ParseError(at(path, "schema"), std::string("unsupported schema, expected \"") + kSchema + "\"");
    }
  }
  const Json& atoms = require(j, "atoms", path);
  const std::string ap = at(path, "atoms");
  expect_array(atoms, ap);
  HeckeElement h;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string p = at(ap, i);
    const Json& aj = atoms[i];
    HeckeAtom atom;
    if (const Json* c = optional(aj, "coeff", p)) {
      const std::string cp = at(p, "coeff");
      atom.coeff = {get_double(require(*c, "re", cp), at(cp, "re")),
                    c->contains("im") ? get_double((*c)["im"], at(cp, "im")) : 0.0};
    }
    if (const Json* q = optional(aj, "q", p)) atom.q = rational_from_json(*q, at(p, "q"));
    if (atom.q == 0) throw ParseError(at(p, "q"), "q must be a nonzero rational");
    if (const Json* locals = optional(aj, "locals", p)) {
      const std::string lp = at(p, "locals");
      expect_array(*locals, lp);
      std::set<std::uint64_t> seen;
      for (std::size_t k = 0; k < locals->size(); ++k) {
        const std::string ep = at(lp, k);
        const Json& ej = (*locals)[k];
        const Prime prime = get_prime(require(ej, "p", ep), at(ep, "p"));
        if (!seen.insert(prime.value()).second) {
          throw ParseError(at(ep, "p"), "prime " + std::to_string(prime.value()) + " listed twice");
        }
        LocalFactor f = LocalFactor::defaults(prime);
        if (const Json* u = optional(ej, "unit", ep)) f.unit = unit_from_atoms_json(prime, *u, at(ep, "unit"));
        if (const Json* a = optional(ej, "additive", ep)) {
          f.additive = localsb_from_atoms_json(prime, *a, at(ep, "additive"));
        }
        atom.set_local(std::move(f));
      }
    }
    if (const Json* arch = optional(aj, "arch", p)) atom.arch = arch_from_json(*arch, at(p, "arch"));
    h.atoms.push_back(std::move(atom));
  }
  return h;
}

Json character_to_json(const DirichletCharacter& chi) {
  Json images = Json::array();
  for (const auto& g : chi.generators()) images.push_back({{"gen", g.gen}, {"angle", to_string(g.angle)}});
  return {{"modulus", chi.modulus()}, {"generator_images", std::move(images)}};
}

DirichletCharacter character_from_json(const Json& j, const std::string& path) {
  const std::uint64_t n = get_positive(require(j, "modulus", path), at(path, "modulus"));
  std::vector<std::pair<std::uint64_t, Rational>> images;
  if (const Json* imgs = optional(j, "generator_images", path)) {
    const std::string ip = at(path, "generator_images");
    expect_array(*imgs, ip);
    for (std::size_t i = 0; i < imgs->size(); ++i) {
      const std::string p = at(ip, i);
      images.emplace_back(get_positive(require((*imgs)[i], "gen", p), at(p, "gen")),
                          rational_from_json(require((*imgs)[i], "angle", p), at(p, "angle")));
    }
  }
  return guarded(path, [&] {
    return images.empty() ? DirichletCharacter(n) : DirichletCharacter::from_images(n, images);
  });
}

Json bounded_to_json(const BoundedValue& v) {
  return {{"re", v.value.real()}, {"im", v.value.imag()}, {"bound", v.bound}};
}

Json spectral_to_json(const SpectralReport& r) {
  return {{"tr_RK", bounded_to_json(r.rk)}, {"tr_pi1", bounded_to_json(r.pi1)}, {"total", bounded_to_json(r.total)}};
}

Json geometric_to_json(const GeometricReport& r) {
  Json hyp = Json::array();
  for (const auto& t : r.hyperbolic) {
    hyp.push_back({{"alpha", to_string(t.q)}, {"value", bounded_to_json(t.value)}, {"jacobian", t.jacobian}});
  }
  return {{"identity_term", bounded_to_json(r.identity)},
          {"additive_term", bounded_to_json(r.additive)},
          {"hyperbolic_terms", std::move(hyp)},
          {"hyperbolic_total", bounded_to_json(r.hyperbolic_total)},
          {"total", bounded_to_json(r.total)}};
}

Json char_decomposition_to_json(const CharDecomposition& d) {
  Json traces = Json::array();
  for (const auto& t : d.traces) {
    traces.push_back({{"character", character_to_json(t.chi)}, {"trace", bounded_to_json(t.trace)}});
  }
  return {{"modulus", d.modulus},
          {"traces", std::move(traces)},
          {"sum", bounded_to_json(d.sum)},
          {"tr_RK", bounded_to_json(d.trace_rk)},
          {"checksum",
           {{"exact_finite_places", d.checksum_exact},
            {"residual", d.checksum_residual},
            {"within_bounds", d.checksum_within_bounds}}}};
}

}  // namespace adele
