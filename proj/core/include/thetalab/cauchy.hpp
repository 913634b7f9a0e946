#pragma once

#include <complex>

#include "thetalab/spectral_law.hpp"

namespace thetalab::freeconv {

using Complex = std::complex<double>;

enum class CauchyMode {
  closed_form_semicircle,
  closed_form_quartercircle,
  quadrature,
};

// A spectral law together with the strategy for evaluating its Cauchy
// transform G(z) = integral of 1/(z-x) d mu(x).
struct TransformableMeasure {
  esd::SpectralLaw law;
  CauchyMode mode;

  // Picks the closed form matching the law tree.
  static TransformableMeasure make(esd::SpectralLaw law);
};

// G at complex z (Im z != 0, or real z outside the support).
Complex cauchy(const TransformableMeasure& m, Complex z);
Complex cauchy_derivative(const TransformableMeasure& m, Complex z);

// Real-axis evaluation; throws DomainError for x strictly inside a support
// interval.
double cauchy_real(const TransformableMeasure& m, double x);
double cauchy_derivative_real(const TransformableMeasure& m, double x);

// One-sided limits of G at the outer support edges (finite for sqrt edges).
double cauchy_at_upper_edge(const TransformableMeasure& m);
double cauchy_at_lower_edge(const TransformableMeasure& m);

// Solves G(z) = w for real z outside the support, residual <= 1e-10.
// Valid w: (G(lo-), 0) for w < 0, (0, G(hi+)) for w > 0.
double cauchy_inverse(const TransformableMeasure& m, double w);

// R(w) = G^{-1}(w) - 1/w.
double r_transform(const TransformableMeasure& m, double w);

namespace detail {
// Scaled quartercircle on [0, 2b] with full mass: the closed-form transform
// and its derivative. Branch: R(z) = i sqrt(z-2b) sqrt(z+2b) with principal
// square roots, which keeps G analytic on the cut plane and Herglotz on C+.
Complex quartercircle_cauchy(Complex z, double b);
Complex quartercircle_cauchy_derivative(Complex z, double b);
// Adaptive-quadrature reference for any analytic law (slow; used when
// mode == quadrature and as a cross-check in tests).
Complex cauchy_quadrature(const esd::SpectralLaw& law, Complex z);
}  // namespace detail

}  // namespace thetalab::freeconv
