#include "thetalab/graph.hpp"

#include <algorithm>
#include <cmath>

#include "thetalab/errors.hpp"

namespace thetalab::rmt {

GraphSample sample_gnp_half(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("sample_gnp_half: n must be >= 1");
  Rng rng = Rng(seed).derive(streams::kEdges);
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = rng.next_sign();
      a(i, j) = v;
      a(j, i) = v;
    }
  GraphSample g;
  g.adjacency = SymmetricMatrix::checked(std::move(a));
  g.n = n;
  g.seed = seed;
  g.model = GraphModel::gnp_half;
  return g;
}

GraphSample plant_clique(const GraphSample& g, int k, std::uint64_t seed) {
  if (k < 1 || k > g.n) throw InvalidInput("plant_clique: need 1 <= k <= n");
  Rng rng = Rng(seed).derive(streams::kClique);
  // Partial Fisher-Yates over vertex ids.
  std::vector<int> ids(g.n);
  for (int i = 0; i < g.n; ++i) ids[i] = i;
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.n - i)));
    std::swap(ids[i], ids[j]);
  }
  std::vector<int> clique(ids.begin(), ids.begin() + k);
  std::sort(clique.begin(), clique.end());

  Matrix a = g.adjacency.mat();
  for (int x = 0; x < k; ++x)
    for (int y = x + 1; y < k; ++y) {
      a(clique[x], clique[y]) = 1.0;
      a(clique[y], clique[x]) = 1.0;
    }
  GraphSample out;
  out.adjacency = SymmetricMatrix::checked(std::move(a));
  out.n = g.n;
  out.seed = g.seed;
  out.model = GraphModel::planted;
  out.planted_k = k;
  out.planted_set = std::move(clique);
  return out;
}

SymmetricMatrix sample_goe(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("sample_goe: n must be >= 1");
  Rng rng = Rng(seed).derive(streams::kGoe);
  Matrix a(n, n);
  const double sqrt2 = std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    a(i, i) = sqrt2 * rng.next_normal();
    for (int j = i + 1; j < n; ++j) {
      const double v = rng.next_normal();
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return SymmetricMatrix::checked(std::move(a));
}

}  // namespace thetalab::rmt
