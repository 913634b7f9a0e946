#pragma once

#include <span>
#include <vector>

#include "thetalab/cauchy.hpp"

namespace thetalab::freeconv {

// Support [s, t] of mu_a boxplus mu_b located through the zeros of
// g'(w), where g(w) = Ga^{-1}(w) + Gb^{-1}(w) - 1/w. g_s/g_t are the root
// locations in w, residual the larger |g'| at them.
struct SupportInterval {
  double s = 0.0, t = 0.0;
  double g_s = 0.0, g_t = 0.0;
  double residual = 0.0;
};

SupportInterval free_conv_support(const TransformableMeasure& a,
                                  const TransformableMeasure& b);

// G_{a boxplus b}(z) for Im z > 0 via the subordination fixed point
// omega = z + h_b(z + h_a(omega)), h(u) = 1/G(u) - u. ok=false on
// non-convergence.
struct ConvCauchyResult {
  Complex value;
  bool ok;
};
ConvCauchyResult conv_cauchy(const TransformableMeasure& a,
                             const TransformableMeasure& b, Complex z);

struct DensityPoint {
  double x = 0.0;
  double density = 0.0;
  bool ok = true;
};
// Stieltjes inversion rho(x) = -Im G(x + i eps)/pi on the given grid.
std::vector<DensityPoint> free_conv_density(const TransformableMeasure& a,
                                            const TransformableMeasure& b,
                                            std::span<const double> grid,
                                            double epsilon = 1e-4);

// Headline constants, in units of sqrt(n).
double predict_theta_constant();   // ~1.544
double predict_radius_constant();  // ~1.75

namespace consts {
double alpha_w();          // sqrt(1 - 64/(9 pi^2)), theta-variant W scale
double tau_w();            // sqrt(9 pi^2/64 - 1), radius-variant W scale
double diag_shift();       // 4/(3 pi), spectrum lift from -D_Z/2
double eta_coefficient();  // 3 pi/8, radius-variant shift per sqrt(n)
}  // namespace consts

}  // namespace thetalab::freeconv
