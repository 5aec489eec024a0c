#include "adele/arch.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace adele {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;
}  // namespace

void ArchAtom::validate() const {
  if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()) || !std::isfinite(width) ||
      !std::isfinite(shift) || !std::isfinite(modulation)) {
    throw std::invalid_argument("archimedean atom has a non-finite field");
  }
  if (!(width > 0.0)) throw std::invalid_argument("archimedean atom width must be positive");
}

BoundedValue& BoundedValue::operator+=(const BoundedValue& o) {
  value += o.value;
  bound += o.bound + kEps * (std::fabs(value.real()) + std::fabs(value.imag()));
  return *this;
}

BoundedValue to_bounded(const ComplexApprox& c) { return {c.value(), c.err}; }

ComplexApprox arch_eval_approx(const ArchFunction& f, double x) {
  ComplexApprox acc;
  for (const auto& a : f.atoms) {
    const double d = x - a.shift;
    const double t = kPi * a.width * d * d;
    const double theta = 2.0 * kPi * a.modulation * x;
    const std::complex<double> v = a.amp * std::exp(-t) * std::polar(1.0, theta);
    const double rel = kEps * (16.0 + 8.0 * t + 8.0 * std::fabs(theta) +
                               8.0 * kPi * a.width * std::fabs(d * x) + 8.0 * kPi * std::fabs(a.modulation * x));
    acc += ComplexApprox(v, std::abs(a.amp) * std::exp(-t) * rel);
  }
  return acc;
}

std::complex<double> arch_eval(const ArchFunction& f, double x) { return arch_eval_approx(f, x).value(); }

ArchFunction arch_fourier(const ArchFunction& f) {
  ArchFunction out;
  out.atoms.reserve(f.atoms.size());
  for (const auto& a : f.atoms) {
    ArchAtom b;
    b.amp = a.amp / std::sqrt(a.width) * std::polar(1.0, 2.0 * kPi * a.shift * a.modulation);
    b.width = 1.0 / a.width;
    b.shift = -a.modulation;
    b.modulation = a.shift;
    out.atoms.push_back(b);
  }
  return out;
}

ArchFunction arch_reflect(const ArchFunction& f) {
  ArchFunction out = f;
  for (auto& a : out.atoms) {
    a.shift = -a.shift;
    a.modulation = -a.modulation;
  }
  return out;
}

ArchFunction arch_fourier_global(const ArchFunction& f) { return arch_reflect(arch_fourier(f)); }

ComplexApprox arch_integral_approx(const ArchFunction& f) {
  ComplexApprox acc;
  for (const auto& a : f.atoms) {
    const double t = kPi * a.modulation * a.modulation / a.width;
    const double theta = 2.0 * kPi * a.shift * a.modulation;
    const std::complex<double> v = a.amp / std::sqrt(a.width) * std::exp(-t) * std::polar(1.0, theta);
    const double rel = kEps * (16.0 + 8.0 * t + 8.0 * std::fabs(theta));
    acc += ComplexApprox(v, std::abs(v) * rel);
  }
  return acc;
}

std::complex<double> arch_integral(const ArchFunction& f) { return arch_integral_approx(f).value(); }

ArchFunction arch_dilate(const ArchFunction& f, double s) {
  if (s == 0.0 || !std::isfinite(s)) throw std::invalid_argument("arch_dilate: scale must be finite and nonzero");
  ArchFunction out;
  for (const auto& a : f.atoms) {
    out.atoms.push_back(ArchAtom{a.amp, a.width * s * s, a.shift / s, a.modulation * s});
  }
  return out;
}

double lattice_tail_bound(const ArchFunction& f, long denominator, long index) {
  const double m = static_cast<double>(index) / static_cast<double>(denominator);
  double total = 0.0;
  for (const auto& a : f.atoms) {
    const double gap = m - std::fabs(a.shift);
    if (!(gap > 0.0)) return std::numeric_limits<double>::infinity();
    total += std::abs(a.amp) * std::exp(-kPi * a.width * gap * gap) / (kPi * a.width * gap);
  }
  return static_cast<double>(denominator) * total * (1.0 + 1e-12);
}

BoundedValue weighted_lattice_sum(const ArchFunction& f, long denominator, const LatticeOptions& opts,
                                  const LatticeWeight& weight, double weight_sup, bool skip_zero) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("lattice sum tolerance must be positive");
  if (denominator < 1) throw std::invalid_argument("lattice denominator must be positive");
  if (opts.cutoff_multiplier < 1) throw std::invalid_argument("cutoff multiplier must be >= 1");
  if (f.is_zero() || weight_sup == 0.0) return {};

  double max_shift = 0.0;
  for (const auto& a : f.atoms) max_shift = std::max(max_shift, std::fabs(a.shift));
  const double dd = static_cast<double>(denominator);
  long index = static_cast<long>(std::floor(max_shift * dd)) + 1;
  while (weight_sup * lattice_tail_bound(f, denominator, index) > opts.tol) {
    index += std::max(1L, index / 16);
  }
  index *= opts.cutoff_multiplier;
  const double tail = weight_sup * lattice_tail_bound(f, denominator, index);

  ComplexApprox acc;
  for (long k = -index; k <= index; ++k) {
    if (skip_zero && k == 0) continue;
    Rational q(k, static_cast<unsigned long>(denominator));
    q.canonicalize();
    const ComplexApprox w = weight(q);
    if (w.re == 0.0 && w.im == 0.0 && w.err == 0.0) continue;
    acc += w * arch_eval_approx(f, static_cast<double>(k) / dd);
  }
  return {acc.value(), tail + acc.err};
}

BoundedValue lattice_sum(const ArchFunction& f, long denominator, const LatticeOptions& opts) {
  return weighted_lattice_sum(
      f, denominator, opts, [](const Rational&) { return ComplexApprox(1.0, 0.0); }, 1.0, false);
}

BoundedValue lattice_sum(const ArchFunction& f, long denominator, double tol) {
  return lattice_sum(f, denominator, LatticeOptions{tol, 1});
}

}  // namespace adele
