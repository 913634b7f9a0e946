#include "thetalab/theta_opt.hpp"

#include <cmath>
#include <limits>

#include "thetalab/eigh.hpp"
#include "thetalab/errors.hpp"

namespace thetalab::opt {

namespace {
using rmt::Matrix;
using rmt::Vector;

constexpr double kDegenerateGap = 1e-8;

// Average of u u^T over the eigenvector cluster within kDegenerateGap of the
// extreme eigenvalue; `top` selects lambda1's side, otherwise lambda_n's.
Matrix extreme_cluster(const rmt::SpectralDecomposition& d, bool top) {
  const int n = d.n();
  int count = 1;
  if (top) {
    while (count < n && d.eigenvalues[0] - d.eigenvalues[count] < kDegenerateGap)
      ++count;
    const auto u = d.eigenvectors.leftCols(count);
    return (u * u.transpose()) / static_cast<double>(count);
  }
  while (count < n &&
         d.eigenvalues[n - 1 - count] - d.eigenvalues[n - 1] < kDegenerateGap)
    ++count;
  const auto u = d.eigenvectors.rightCols(count);
  return (u * u.transpose()) / static_cast<double>(count);
}
}  // namespace

MinimizeResult minimize(const rmt::GraphSample& g, const OptConfig& cfg) {
  const int n = g.n;
  if (n > 1000) throw InvalidInput("minimize: oracle scale is n <= 1000");
  if (cfg.max_iters < 1) throw InvalidInput("minimize: max_iters must be >= 1");
  const bool radius = cfg.objective == OptConfig::Objective::spectral_radius;

  const Matrix& a = g.adjacency.mat();
  Matrix free_mask(n, n);
  int free_count = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const bool is_free = (i != j) && a(i, j) < 0.0;
      free_mask(i, j) = is_free ? 1.0 : 0.0;
      free_count += is_free ? 1 : 0;
    }

  Matrix m(n, n);
  if (cfg.initial == OptConfig::Init::adjacency) {
    m = a;
  } else {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        m(i, j) = (i != j && a(i, j) > 0.0) ? 1.0 : 0.0;
  }

  MinimizeResult out;
  out.history.reserve(cfg.max_iters);
  double best = std::numeric_limits<double>::infinity();
  Matrix best_m = m;

  for (int k = 1; k <= cfg.max_iters; ++k) {
    const auto d = rmt::eigh(rmt::SymmetricMatrix::symmetrized(m));
    const double l1 = d.eigenvalues[0];
    const double ln = d.eigenvalues[n - 1];
    const double obj = radius ? std::max(l1, -ln) : l1;
    if (obj < best) {
      best = obj;
      best_m = m;
    }
    out.history.push_back(best + 1.0);
    out.iterations = k;

    if (cfg.stall_window > 0 && k > cfg.stall_window) {
      const double prev = out.history[k - 1 - cfg.stall_window];
      if (prev - out.history.back() < cfg.tol_stall) break;
    }
    if (free_count == 0) break;  // complete graph: nothing to optimize

    Matrix grad;
    if (!radius) {
      grad = extreme_cluster(d, true);
    } else if (l1 > -ln + kDegenerateGap) {
      grad = extreme_cluster(d, true);
    } else if (-ln > l1 + kDegenerateGap) {
      grad = -extreme_cluster(d, false);
    } else {
      grad = 0.5 * (extreme_cluster(d, true) - extreme_cluster(d, false));
    }
    grad = 0.5 * (grad + grad.transpose()).eval();  // keep iterates symmetric
    grad.array() *= free_mask.array();

    double step = 0.0;
    const double gnorm2 = grad.squaredNorm();
    switch (cfg.step_rule) {
      case OptConfig::StepRule::polyak: {
        const double margin = cfg.step_c.value_or(1.0);
        step = (gnorm2 > 1e-14) ? std::max(0.0, obj - (best - margin)) / gnorm2
                                : 0.0;
        break;
      }
      case OptConfig::StepRule::inverse_sqrt_k:
        step = cfg.step_c.value_or(std::sqrt(double(n)) / 10.0) / std::sqrt(double(k));
        break;
      case OptConfig::StepRule::inverse_k:
        step = cfg.step_c.value_or(std::sqrt(double(n)) / 10.0) / double(k);
        break;
      case OptConfig::StepRule::fixed:
        step = cfg.step_c.value_or(std::sqrt(double(n)) / 10.0);
        break;
    }
    m -= step * grad;
  }

  out.value = best + 1.0;
  out.m = rmt::SymmetricMatrix::symmetrized(best_m);
  return out;
}

}  // namespace thetalab::opt
