#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "thetalab/rng.hpp"
#include "thetalab/symmetric_matrix.hpp"

namespace thetalab::rmt {

enum class GraphModel { gnp_half, planted };

// A graph as its +-1 adjacency matrix (0 diagonal) plus provenance.
struct GraphSample {
  SymmetricMatrix adjacency;
  int n = 0;
  std::uint64_t seed = 0;
  GraphModel model = GraphModel::gnp_half;
  int planted_k = 0;                          // 0 unless model == planted
  std::optional<std::vector<int>> planted_set;

  bool is_edge(int i, int j) const { return adjacency(i, j) > 0.0; }
};

// G(n,1/2): each unordered pair independently +1 or -1 with probability 1/2.
GraphSample sample_gnp_half(int n, std::uint64_t seed);

// Rewires a uniformly random k-subset (chosen with `seed`) into a clique.
GraphSample plant_clique(const GraphSample& g, int k, std::uint64_t seed);

// GOE(n): off-diagonal N(0,1), diagonal N(0,2).
SymmetricMatrix sample_goe(int n, std::uint64_t seed);

}  // namespace thetalab::rmt
