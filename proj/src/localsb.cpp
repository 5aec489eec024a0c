#include "adele/localsb.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace adele {

namespace {

// Walks the tree of balls below a root. A ball is "pure" when the function
// restricted to it is a single twisted exponential (or identically zero);
// the canonical form lists the maximal pure balls carrying a nonzero value.
class Canonicalizer {
 public:
  Canonicalizer(Prime p, bool allow_twist) : p_(p), allow_twist_(allow_twist) {}

  enum class Kind { Zero, Pure, Mixed };
  struct Node {
    Kind kind = Kind::Zero;
    Cyclotomic coeff;
    Rational twist;
    std::vector<TwistedBall> pieces;
  };

  Node process(const Rational& center, long level, const std::vector<const TwistedBall*>& atoms) const {
    std::vector<const TwistedBall*> containing, inside;
    for (const auto* a : atoms) (a->ball.level() <= level ? containing : inside).push_back(a);

    if (inside.empty()) {
      std::map<Rational, Cyclotomic> classes;
      for (const auto* a : containing) {
        const Rational tw = reduce_mod_ball(a->twist, p_, -level);
        Cyclotomic c = a->coeff;
        if (tw != a->twist) c *= psi_p((a->twist - tw) * center, p_);
        classes[tw] += c;
      }
      std::erase_if(classes, [](const auto& kv) { return kv.second.is_zero(); });
      if (classes.empty()) return {};
      if (classes.size() == 1) {
        Node n;
        n.kind = Kind::Pure;
        n.twist = classes.begin()->first;
        n.coeff = classes.begin()->second;
        return n;
      }
    }

    const Rational step = prime_power(p_, level);
    std::vector<Node> kids;
    std::vector<Rational> centers;
    kids.reserve(p_.value());
    for (std::uint64_t d = 0; d < p_.value(); ++d) {
      Rational cc = center + Rational(static_cast<unsigned long>(d)) * step;
      cc.canonicalize();
      std::vector<const TwistedBall*> sub = containing;
      for (const auto* a : inside) {
        if (vp(a->ball.center() - cc, p_) >= level + 1) sub.push_back(a);
      }
      kids.push_back(sub.empty() ? Node{} : process(cc, level + 1, sub));
      centers.push_back(std::move(cc));
    }
    return merge(level, centers, kids);
  }

 private:
  Node merge(long level, const std::vector<Rational>& centers, std::vector<Node>& kids) const {
    const bool all_zero = std::all_of(kids.begin(), kids.end(), [](const Node& n) { return n.kind == Kind::Zero; });
    if (all_zero) return {};
    const bool all_pure = std::all_of(kids.begin(), kids.end(), [&](const Node& n) {
      return n.kind == Kind::Pure && n.twist == kids.front().twist;
    });
    if (all_pure) {
      const Rational& b0 = kids.front().twist;
      const Rational fine = prime_power(p_, -(level + 1));
      const std::uint64_t candidates = allow_twist_ ? p_.value() : 1;
      for (std::uint64_t t = 0; t < candidates; ++t) {
        Rational b = b0 + Rational(static_cast<unsigned long>(t)) * fine;
        b.canonicalize();
        const Rational shift = b0 - b;
        const Cyclotomic want = kids[0].coeff * psi_p(shift * centers[0], p_);
        bool ok = true;
        for (std::size_t d = 1; d < kids.size() && ok; ++d) {
          ok = kids[d].coeff * psi_p(shift * centers[d], p_) == want;
        }
        if (ok) {
          Node n;
          n.kind = Kind::Pure;
          n.coeff = want;
          n.twist = reduce_mod_ball(b, p_, -level);
          return n;
        }
      }
    }
    Node n;
    n.kind = Kind::Mixed;
    for (std::size_t d = 0; d < kids.size(); ++d) {
      auto& k = kids[d];
      if (k.kind == Kind::Pure) {
        n.pieces.push_back(TwistedBall{std::move(k.coeff), std::move(k.twist), PadicBall(p_, centers[d], level + 1)});
      } else if (k.kind == Kind::Mixed) {
        std::move(k.pieces.begin(), k.pieces.end(), std::back_inserter(n.pieces));
      }
    }
    return n;
  }

  Prime p_;
  bool allow_twist_;
};

std::vector<TwistedBall> collect(Canonicalizer::Node&& node, const Prime& p, const Rational& center, long level) {
  using Kind = Canonicalizer::Kind;
  std::vector<TwistedBall> out;
  if (node.kind == Kind::Pure) {
    out.push_back(TwistedBall{std::move(node.coeff), std::move(node.twist), PadicBall(p, center, level)});
  } else if (node.kind == Kind::Mixed) {
    out = std::move(node.pieces);
  }
  return out;
}

void sort_atoms(std::vector<TwistedBall>& atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const TwistedBall& a, const TwistedBall& b) {
    if (a.ball.level() != b.ball.level()) return a.ball.level() < b.ball.level();
    return a.ball.center() < b.ball.center();
  });
}

}  // namespace

// ---------------------------------------------------------------------------

TwistedBall TwistedBall::make(Cyclotomic coeff, const Rational& twist, const PadicBall& ball) {
  const Rational tw = reduce_mod_ball(twist, ball.p(), -ball.level());
  if (tw != twist) coeff *= psi_p((twist - tw) * ball.center(), ball.p());
  return TwistedBall{std::move(coeff), tw, ball};
}

Cyclotomic TwistedBall::value_at(const Rational& x) const {
  if (!ball.contains(x)) return {};
  return coeff * psi_p(twist * x, ball.p());
}

LocalSB::LocalSB(Prime p, std::vector<TwistedBall> atoms) : p_(p) {
  std::vector<TwistedBall> clean;
  clean.reserve(atoms.size());
  long root = kValuationInfinity;
  for (auto& a : atoms) {
    if (a.ball.p() != p) throw std::invalid_argument("twisted ball at the wrong prime");
    if (a.coeff.is_zero()) continue;
    clean.push_back(TwistedBall::make(std::move(a.coeff), a.twist, a.ball));
    root = std::min({root, clean.back().ball.level(), vp(clean.back().ball.center(), p)});
  }
  if (clean.empty()) return;
  std::vector<const TwistedBall*> ptrs;
  for (const auto& a : clean) ptrs.push_back(&a);
  Canonicalizer canon(p, true);
  atoms_ = collect(canon.process(0, root, ptrs), p, 0, root);
  sort_atoms(atoms_);
}

LocalSB LocalSB::indicator(Prime p, const Rational& center, long level) {
  return LocalSB(p, {TwistedBall{Cyclotomic(1), 0, PadicBall(p, center, level)}});
}

bool LocalSB::is_integers_indicator() const {
  return atoms_.size() == 1 && atoms_[0].ball.level() == 0 && atoms_[0].ball.center() == 0 &&
         atoms_[0].twist == 0 && atoms_[0].coeff == Cyclotomic(1);
}

long LocalSB::constancy_level() const {
  long m = atoms_.empty() ? 0 : atoms_.front().ball.level();
  for (const auto& a : atoms_) {
    m = std::max(m, a.ball.level());
    if (a.twist != 0) m = std::max(m, -vp(a.twist, p_));
  }
  return m;
}

long LocalSB::support_level() const {
  if (atoms_.empty()) return 0;
  long s = kValuationInfinity;
  for (const auto& a : atoms_) s = std::min({s, a.ball.level(), vp(a.ball.center(), p_)});
  return s;
}

double LocalSB::sup_bound() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.coeff.abs_bound();
  return s;
}

LocalSB& LocalSB::operator+=(const LocalSB& o) {
  if (o.p_ != p_) throw std::invalid_argument("adding local functions at different primes");
  std::vector<TwistedBall> all = atoms_;
  all.insert(all.end(), o.atoms_.begin(), o.atoms_.end());
  return *this = LocalSB(p_, std::move(all));
}

LocalSB& LocalSB::operator*=(const Cyclotomic& c) {
  if (c.is_zero()) {
    atoms_.clear();
    return *this;
  }
  for (auto& a : atoms_) a.coeff *= c;
  return *this;
}

LocalSB operator-(LocalSB a, const LocalSB& b) { return a += b * Cyclotomic(-1); }

Cyclotomic sb_eval(const LocalSB& f, const Rational& x) {
  Cyclotomic out;
  for (const auto& a : f.atoms()) {
    if (a.ball.contains(x)) out += a.coeff * psi_p(a.twist * x, f.p());
  }
  return out;
}

LocalSB sb_fourier(const LocalSB& f) {
  const Prime& p = f.p();
  std::vector<TwistedBall> out;
  out.reserve(f.atoms().size());
  for (const auto& a : f.atoms()) {
    const Rational& b = a.twist;
    const Rational& c = a.ball.center();
    const long n = a.ball.level();
    Cyclotomic coeff = a.coeff * psi_p(b * c, p) * prime_power(p, -n);
    out.push_back(TwistedBall{std::move(coeff), c, PadicBall(p, -b, -n)});
  }
  return LocalSB(p, std::move(out));
}

Cyclotomic sb_integral(const LocalSB& f) {
  Cyclotomic out;
  for (const auto& a : f.atoms()) {
    const long n = a.ball.level();
    if (vp(a.twist, f.p()) < -n) continue;
    out += a.coeff * psi_p(a.twist * a.ball.center(), f.p()) * prime_power(f.p(), -n);
  }
  return out;
}

LocalSB sb_reflect(const LocalSB& f) {
  std::vector<TwistedBall> out;
  for (const auto& a : f.atoms()) {
    out.push_back(TwistedBall{a.coeff, -a.twist, PadicBall(f.p(), -a.ball.center(), a.ball.level())});
  }
  return LocalSB(f.p(), std::move(out));
}

LocalSB sb_conj(const LocalSB& f) {
  std::vector<TwistedBall> out;
  for (const auto& a : f.atoms()) out.push_back(TwistedBall{a.coeff.conj(), -a.twist, a.ball});
  return LocalSB(f.p(), std::move(out));
}

LocalSB sb_mul(const LocalSB& f, const LocalSB& g) {
  if (f.p() != g.p()) throw std::invalid_argument("multiplying local functions at different primes");
  std::vector<TwistedBall> out;
  for (const auto& a : f.atoms()) {
    for (const auto& b : g.atoms()) {
      const PadicBall* small = nullptr;
      if (a.ball.inside(b.ball)) small = &a.ball;
      else if (b.ball.inside(a.ball)) small = &b.ball;
      if (small == nullptr) continue;
      out.push_back(TwistedBall{a.coeff * b.coeff, a.twist + b.twist, *small});
    }
  }
  return LocalSB(f.p(), std::move(out));
}

// ---------------------------------------------------------------------------

UnitFunction::UnitFunction(Prime p, std::vector<UnitAtom> atoms) : p_(p) {
  std::vector<TwistedBall> as_balls;
  for (auto& a : atoms) {
    if (a.coset.p() != p) throw std::invalid_argument("unit coset at the wrong prime");
    if (a.coset.level() < 1) throw std::invalid_argument("unit coset level must be >= 1");
    if (vp(a.coset.center(), p) != 0) {
      throw std::invalid_argument("unit coset center " + to_string(a.coset.center()) + " is not a unit");
    }
    if (a.coeff.is_zero()) continue;
    as_balls.push_back(TwistedBall{std::move(a.coeff), 0, a.coset});
  }
  Canonicalizer canon(p, false);
  std::vector<TwistedBall> pieces;
  for (std::uint64_t d = 1; d < p.value(); ++d) {
    const Rational root(static_cast<unsigned long>(d));
    std::vector<const TwistedBall*> sub;
    for (const auto& a : as_balls) {
      if (vp(a.ball.center() - root, p) >= 1) sub.push_back(&a);
    }
    if (sub.empty()) continue;
    auto got = collect(canon.process(root, 1, sub), p, root, 1);
    std::move(got.begin(), got.end(), std::back_inserter(pieces));
  }
  sort_atoms(pieces);
  for (auto& piece : pieces) atoms_.push_back(UnitAtom{std::move(piece.coeff), piece.ball});
}

UnitFunction UnitFunction::units(Prime p) {
  std::vector<UnitAtom> atoms;
  for (std::uint64_t d = 1; d < p.value(); ++d) {
    atoms.push_back(UnitAtom{Cyclotomic(1), PadicBall(p, Rational(static_cast<unsigned long>(d)), 1)});
  }
  return UnitFunction(p, std::move(atoms));
}

bool UnitFunction::is_units_indicator() const { return *this == units(p_); }

Cyclotomic UnitFunction::eval(const Rational& u) const {
  for (const auto& a : atoms_) {
    if (a.coset.contains(u)) return a.coeff;
  }
  return {};
}

long UnitFunction::level() const {
  long k = 1;
  for (const auto& a : atoms_) k = std::max(k, a.coset.level());
  return k;
}

long UnitFunction::conductor_exponent() const {
  const long top = level();
  const auto reps = unit_coset_reps(p_, top);
  std::vector<Cyclotomic> values;
  values.reserve(reps.size());
  for (const auto& r : reps) values.push_back(eval(r));
  for (long k = 0; k < top; ++k) {
    const std::uint64_t mod = ipow(p_.value(), static_cast<unsigned>(k));
    std::map<std::uint64_t, const Cyclotomic*> seen;
    bool ok = true;
    for (std::size_t i = 0; i < reps.size() && ok; ++i) {
      const std::uint64_t key = reps[i].get_num().get_ui() % mod;
      auto [it, fresh] = seen.emplace(key, &values[i]);
      if (!fresh) ok = *it->second == values[i];
    }
    if (ok) return k;
  }
  return top;
}

Cyclotomic unit_mult_integral(const UnitFunction& g, const Rational& q, const LocalSB& f) {
  if (q == 0) throw std::invalid_argument("unit_mult_integral: scale q must be nonzero");
  const Prime& p = g.p();
  if (f.p() != p) throw std::invalid_argument("unit_mult_integral: mismatched primes");
  const long vq = vp(q, p);
  Cyclotomic total;
  for (const auto& ga : g.atoms()) {
    const Rational& u = ga.coset.center();
    const long ku = ga.coset.level();
    for (const auto& fa : f.atoms()) {
      // {u : q u in c + p^n Z_p} = c/q + p^{n - v(q)} Z_p
      const Rational scaled_center = fa.ball.center() / q;
      const long ls = fa.ball.level() - vq;
      Rational r;
      long l = 0;
      if (ku >= ls) {
        if (vp(u - scaled_center, p) < ls) continue;
        r = u;
        l = ku;
      } else {
        if (vp(scaled_center - u, p) < ku) continue;
        r = scaled_center;
        l = ls;
      }
      const Rational beta = fa.twist * q;
      if (vp(beta, p) < -l) continue;
      total += ga.coeff * fa.coeff * psi_p(beta * r, p) * prime_power(p, -l);
    }
  }
  // d^x u = p/(p-1) du on Z_p^x
  const unsigned long pv = p.value();
  return total * Rational(pv, pv - 1);
}

}  // namespace adele
