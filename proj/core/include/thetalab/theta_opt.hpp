#pragma once

#include <optional>
#include <vector>

#include "thetalab/graph.hpp"
#include "thetalab/symmetric_matrix.hpp"

namespace thetalab::opt {

// Projected subgradient descent over the free entries: fixed entries
// (diagonal 0, edges +1) are never touched, so every iterate is feasible.
struct OptConfig {
  int max_iters = 5000;

  enum class StepRule { polyak, inverse_sqrt_k, inverse_k, fixed };
  // Default polyak: step = (f_k - (best - margin)) / |g|^2 with margin
  // step_c. The classical c/k rule is kept selectable but converges far too
  // slowly for the oracle targets.
  StepRule step_rule = StepRule::polyak;
  // polyak: margin (default 1.0); other rules: c (default sqrt(n)/10).
  std::optional<double> step_c;

  enum class Init { adjacency, zeros_on_free };
  Init initial = Init::adjacency;

  double tol_stall = 1e-5;  // stop when best improves less than this ...
  int stall_window = 200;   // ... over this many iterations

  enum class Objective { lambda1, spectral_radius };
  Objective objective = Objective::lambda1;
};

struct MinimizeResult {
  double value = 0.0;          // best objective + 1 (diagonal-1 convention)
  rmt::SymmetricMatrix m;      // feasible iterate attaining `value`
  std::vector<double> history; // best-so-far value per iteration, non-increasing
  int iterations = 0;
};

// Oracle-scale minimization of lambda1 (or the spectral radius) over the
// feasible set; n <= 1000.
MinimizeResult minimize(const rmt::GraphSample& g, const OptConfig& cfg);

}  // namespace thetalab::opt
