#include "thetalab/cauchy.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "thetalab/errors.hpp"

namespace thetalab::freeconv {

namespace {
constexpr double kPi = std::numbers::pi;
using Kind = esd::SpectralLaw::Kind;

bool tree_has_quartercircle(const esd::SpectralLaw& law) {
  switch (law.kind()) {
    case Kind::quartercircle_pair:
    case Kind::shifted_pair:
      return true;
    case Kind::shifted:
    case Kind::scaled:
      return tree_has_quartercircle(law.base_law());
    default:
      return false;
  }
}

Complex semicircle_cauchy(Complex z, double a) {
  // Branch sqrt(z-2a)*sqrt(z+2a) is ~z at infinity, so G ~ 1/z.
  const Complex s = std::sqrt(z - 2.0 * a) * std::sqrt(z + 2.0 * a);
  return (z - s) / (2.0 * a * a);
}

Complex semicircle_cauchy_derivative(Complex z, double a) {
  // From a^2 G^2 - z G + 1 = 0: G' = G / (2 a^2 G - z). Unlike the direct
  // (1 - z/s) form this has no cancellation at large |z|.
  const Complex g = semicircle_cauchy(z, a);
  return g / (2.0 * a * a * g - z);
}

Complex eval(const esd::SpectralLaw& law, Complex z, bool derivative);

Complex eval_closed(const esd::SpectralLaw& law, Complex z, bool derivative) {
  switch (law.kind()) {
    case Kind::semicircle:
      return derivative ? semicircle_cauchy_derivative(z, law.param_a())
                        : semicircle_cauchy(z, law.param_a());
    case Kind::quartercircle_pair: {
      // Half mass on a reflected quartercircle, half on a positive one:
      // G(z) = -G_qc(-z; a)/2 + G_qc(z; b)/2, and reflection flips the
      // derivative sign back.
      const double a = law.param_a(), b = law.param_b();
      if (derivative)
        return 0.5 * detail::quartercircle_cauchy_derivative(-z, a) +
               0.5 * detail::quartercircle_cauchy_derivative(z, b);
      return -0.5 * detail::quartercircle_cauchy(-z, a) +
             0.5 * detail::quartercircle_cauchy(z, b);
    }
    case Kind::shifted_pair: {
      const double a = law.param_a(), b = law.param_b(), g = law.param_c();
      if (derivative)
        return 0.5 * detail::quartercircle_cauchy_derivative(-(z + g), a) +
               0.5 * detail::quartercircle_cauchy_derivative(z - g, b);
      return -0.5 * detail::quartercircle_cauchy(-(z + g), a) +
             0.5 * detail::quartercircle_cauchy(z - g, b);
    }
    case Kind::shifted:
      return eval(law.base_law(), z - law.param_c(), derivative);
    case Kind::scaled: {
      const double c = law.param_c();
      const Complex v = eval(law.base_law(), z / c, derivative);
      return derivative ? v / (c * c) : v / c;
    }
    case Kind::empirical: {
      const auto& s = law.samples();
      Complex acc(0.0, 0.0);
      for (double x : s) {
        const Complex d = z - x;
        acc += derivative ? -1.0 / (d * d) : 1.0 / d;
      }
      return acc / static_cast<double>(s.size());
    }
  }
  throw InvalidInput("cauchy: unknown law kind");
}

Complex eval(const esd::SpectralLaw& law, Complex z, bool derivative) {
  return eval_closed(law, z, derivative);
}

void require_outside_support(const esd::SpectralLaw& law, double x) {
  for (const auto& [lo, hi] : law.support_pieces())
    if (x > lo && x < hi)
      throw DomainError("cauchy: real z inside the support");
}

double edge_delta(const esd::SpectralLaw& law) {
  const double scale =
      std::max({1.0, std::abs(law.support_lo()), std::abs(law.support_hi())});
  return 1e-12 * scale;
}
}  // namespace

namespace detail {

Complex quartercircle_cauchy(Complex z, double b) {
  const Complex r = Complex(0.0, 1.0) * std::sqrt(z - 2.0 * b) * std::sqrt(z + 2.0 * b);
  return -(r / (b * b * kPi)) * std::log(-(r + 2.0 * b) / z) + 2.0 / (b * kPi) +
         z / (2.0 * b * b);
}

Complex quartercircle_cauchy_derivative(Complex z, double b) {
  const Complex r = Complex(0.0, 1.0) * std::sqrt(z - 2.0 * b) * std::sqrt(z + 2.0 * b);
  const Complex rp = -z / r;  // from r^2 = 4b^2 - z^2
  const Complex logterm = std::log(-(r + 2.0 * b) / z);
  return -(rp * logterm + r * (rp / (r + 2.0 * b) - 1.0 / z)) / (b * b * kPi) +
         1.0 / (2.0 * b * b);
}

Complex cauchy_quadrature(const esd::SpectralLaw& law, Complex z) {
  using boost::math::quadrature::gauss_kronrod;
  Complex total(0.0, 0.0);
  for (const auto& [lo, hi] : law.support_pieces()) {
    if (hi <= lo) continue;
    const auto re = [&](double x) {
      const double dx = z.real() - x, dy = z.imag();
      return law.density(x) * dx / (dx * dx + dy * dy);
    };
    const auto im = [&](double x) {
      const double dx = z.real() - x, dy = z.imag();
      return law.density(x) * (-dy) / (dx * dx + dy * dy);
    };
    total += Complex(gauss_kronrod<double, 61>::integrate(re, lo, hi, 15, 1e-12),
                     gauss_kronrod<double, 61>::integrate(im, lo, hi, 15, 1e-12));
  }
  return total;
}

}  // namespace detail

TransformableMeasure TransformableMeasure::make(esd::SpectralLaw law) {
  CauchyMode mode = CauchyMode::closed_form_semicircle;
  if (tree_has_quartercircle(law))
    mode = CauchyMode::closed_form_quartercircle;
  else if (law.kind() == Kind::empirical)
    mode = CauchyMode::quadrature;
  return TransformableMeasure{std::move(law), mode};
}

Complex cauchy(const TransformableMeasure& m, Complex z) {
  if (m.mode == CauchyMode::quadrature && m.law.kind() != Kind::empirical)
    return detail::cauchy_quadrature(m.law, z);
  return eval(m.law, z, false);
}

Complex cauchy_derivative(const TransformableMeasure& m, Complex z) {
  return eval(m.law, z, true);
}

double cauchy_real(const TransformableMeasure& m, double x) {
  require_outside_support(m.law, x);
  return cauchy(m, Complex(x, 0.0)).real();
}

double cauchy_derivative_real(const TransformableMeasure& m, double x) {
  require_outside_support(m.law, x);
  return cauchy_derivative(m, Complex(x, 0.0)).real();
}

double cauchy_at_upper_edge(const TransformableMeasure& m) {
  return cauchy_real(m, m.law.support_hi() + edge_delta(m.law));
}

double cauchy_at_lower_edge(const TransformableMeasure& m) {
  return cauchy_real(m, m.law.support_lo() - edge_delta(m.law));
}

double cauchy_inverse(const TransformableMeasure& m, double w) {
  if (w == 0.0 || !std::isfinite(w))
    throw DomainError("cauchy_inverse: w must be nonzero and finite");
  const double lo_s = m.law.support_lo(), hi_s = m.law.support_hi();
  const double delta = edge_delta(m.law);

  double zlo, zhi;  // bracket with G(zlo) >= w >= G(zhi) (G decreasing)
  if (w > 0.0) {
    const double gmax = cauchy_real(m, hi_s + delta);
    if (w >= gmax) {
      std::ostringstream os;
      os << "cauchy_inverse: w=" << w << " outside (0, " << gmax << ")";
      throw DomainError(os.str());
    }
    zlo = hi_s + delta;
    double step = std::max(1.0, std::abs(hi_s));
    zhi = hi_s + step;
    while (cauchy_real(m, zhi) > w) {
      step *= 2.0;
      zhi = hi_s + step;
      if (step > 1e18) throw SolverFailure("cauchy_inverse: bracket blew up");
    }
  } else {
    const double gmin = cauchy_real(m, lo_s - delta);
    if (w <= gmin) {
      std::ostringstream os;
      os << "cauchy_inverse: w=" << w << " outside (" << gmin << ", 0)";
      throw DomainError(os.str());
    }
    zhi = lo_s - delta;
    double step = std::max(1.0, std::abs(lo_s));
    zlo = lo_s - step;
    while (cauchy_real(m, zlo) < w) {
      step *= 2.0;
      zlo = lo_s - step;
      if (step > 1e18) throw SolverFailure("cauchy_inverse: bracket blew up");
    }
    std::swap(zlo, zhi);  // keep zlo the side with G >= w
  }

  // Safeguarded Newton: bisection fallback keeps the bracket.
  double a = std::min(zlo, zhi), b = std::max(zlo, zhi);
  double z = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    const double g = cauchy_real(m, z) - w;
    if (std::abs(g) <= 1e-12 * std::max(1.0, std::abs(w))) return z;
    if (g > 0.0) a = z; else b = z;  // G decreasing, so g > 0 puts z left of the root
    const double gp = cauchy_derivative_real(m, z);
    double znew = (gp != 0.0) ? z - g / gp : 0.5 * (a + b);
    if (!(znew > a && znew < b)) znew = 0.5 * (a + b);
    z = znew;
    if (b - a < 1e-15 * std::max(1.0, std::abs(z))) return z;
  }
  return z;
}

double r_transform(const TransformableMeasure& m, double w) {
  return cauchy_inverse(m, w) - 1.0 / w;
}

}  // namespace thetalab::freeconv
