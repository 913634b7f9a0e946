#pragma once

#include <cstdint>
#include <optional>

#include "thetalab/eigh.hpp"
#include "thetalab/graph.hpp"

namespace thetalab::cert {

struct CertificateSpec {
  enum class Variant { theta, radius };
  Variant variant = Variant::theta;
  double tau = 1.0;
  std::optional<double> eta;   // radius shift; default (3 pi/8) sqrt(n)
  int recursion_depth = 0;     // capped at 2
  std::optional<int> cut;      // default floor(n/2)
};

// Z sharing the eigenbasis the decomposition came from, with prescribed
// eigenvalues alphas; `dense` is the materialized sum alpha_i u_i u_i^T.
struct CorrectorZ {
  rmt::Vector alphas;
  rmt::SymmetricMatrix dense;
};

// Edge/non-edge averages are nullopt when the index set is empty
// (empty or complete graph).
struct Diagnostics {
  std::optional<double> avg_free_xplus, avg_nonfree_xplus;
  std::optional<double> avg_free_xminus, avg_nonfree_xminus;
  std::optional<double> avg_free_z, avg_nonfree_z;
  double diag_z_mean = 0.0, diag_z_std = 0.0, diag_z_max_dev = 0.0;
  // max_k |f(k) - g(k) - lambda_k| with f,g summed over off-diagonal pairs.
  double fg_identity_max_err = 0.0;
  // max_k |f(k) + g(k) - (<1,u_k>^2 - 1)|; the -1 is the diagonal term
  // Sum_i u_ki^2 that off-diagonal sums exclude.
  double fg_plus_g_max = 0.0;
  double row_norm_min = 0.0, row_norm_max = 0.0;  // rows of Z - D_Z
  double max_abs_entry_z = 0.0;
};

struct CertificateResult {
  rmt::SymmetricMatrix m;
  double lambda1 = 0.0, lambdan = 0.0, sigma1 = 0.0;
  double lambda1_norm = 0.0, sigma1_norm = 0.0;
  double theta_upper = 0.0;  // lambda1 + 1, diagonal-1 convention
  // lambda1 of A + Z/2 - D_Z/2, the pre-Hadamard checkpoint (theta variant).
  std::optional<double> lambda1_intermediate;
  Diagnostics diagnostics;
  CertificateSpec spec;
  std::uint64_t seed = 0;
  int n = 0;
};

// alpha_i = -lambda_i for the top `cut` eigenvalues, +lambda_i for the rest.
CorrectorZ build_z_theta(const rmt::SpectralDecomposition& d, int cut);

// alpha_k = eta - lambda_k for k < cut, -eta - lambda_k for k >= cut.
CorrectorZ build_z_radius(const rmt::SpectralDecomposition& d, double eta, int cut);

// Masked assembly: diagonal 0, edge entries exactly 1, non-edges
// -1 + tau * Z_ij. Feasibility is bit-exact by construction.
rmt::SymmetricMatrix assemble_m(const rmt::GraphSample& g, const CorrectorZ& z,
                                double tau);
rmt::SymmetricMatrix assemble_m(const rmt::GraphSample& g,
                                const rmt::Matrix& z_dense, double tau);

CertificateResult certify(const rmt::GraphSample& g, const CertificateSpec& spec);

Diagnostics run_diagnostics(const rmt::GraphSample& g,
                            const rmt::SpectralDecomposition& d,
                            const CorrectorZ& z);

// W with |W_ij| = |Z_ij| and independent fair signs; zero diagonal.
rmt::SymmetricMatrix resample_w(const CorrectorZ& z, std::uint64_t seed);

// max_{i,j} |<u_i, w_j>| over the two eigenbases.
double eigvec_cross_corr(const rmt::SpectralDecomposition& d1,
                         const rmt::SpectralDecomposition& d2);

enum class BaselineDist { constant, gaussian, uniform };

// Proposition-1 baseline: free entries iid with mean phi, variance psi^2.
// Returns lambda1 of the assembled matrix.
double iid_baseline(int n, double phi, double psi, BaselineDist dist,
                    std::uint64_t seed);

struct LowerBoundReport {
  double lhs = 0.0;            // sigma1(M) * sum |lambda_k(A_G)|
  double rhs = 0.0;            // n^2 - n - C n^{3/2}
  bool lower_bound_ok = false;
  double hw_slack = 0.0;       // sum lam(Q)^2 - sum (lam(M)-lam(A))^2
  bool hw_ok = false;
  bool typical_sum_ok = false;
  bool typical_sigma_ok = false;
  bool typical_halves_ok = false;
  bool typical_ok = false;
};

LowerBoundReport lower_bound_check(const rmt::GraphSample& g,
                                   const rmt::SymmetricMatrix& m,
                                   double c = 10.0);

}  // namespace thetalab::cert
