#include "thetalab/certificate.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "thetalab/errors.hpp"
#include "thetalab/free_convolution.hpp"
#include "thetalab/rng.hpp"

namespace thetalab::cert {

namespace {
using rmt::Matrix;
using rmt::Vector;

Matrix materialize(const rmt::SpectralDecomposition& d, const Vector& alphas) {
  Matrix m = d.eigenvectors * alphas.asDiagonal() * d.eigenvectors.transpose();
  return 0.5 * (m + m.transpose());
}
}  // namespace

CorrectorZ build_z_theta(const rmt::SpectralDecomposition& d, int cut) {
  const int n = d.n();
  if (cut < 0 || cut > n) throw InvalidInput("build_z_theta: cut out of range");
  Vector alphas(n);
  for (int i = 0; i < n; ++i)
    alphas[i] = (i < cut) ? -d.eigenvalues[i] : d.eigenvalues[i];
  CorrectorZ z;
  z.dense = rmt::SymmetricMatrix::symmetrized(materialize(d, alphas));
  z.alphas = std::move(alphas);
  return z;
}

CorrectorZ build_z_radius(const rmt::SpectralDecomposition& d, double eta, int cut) {
  const int n = d.n();
  if (cut < 0 || cut > n) throw InvalidInput("build_z_radius: cut out of range");
  if (eta <= 0.0) throw InvalidInput("build_z_radius: eta must be positive");
  Vector alphas(n);
  for (int i = 0; i < n; ++i)
    alphas[i] = ((i < cut) ? eta : -eta) - d.eigenvalues[i];
  CorrectorZ z;
  z.dense = rmt::SymmetricMatrix::symmetrized(materialize(d, alphas));
  z.alphas = std::move(alphas);
  return z;
}

rmt::SymmetricMatrix assemble_m(const rmt::GraphSample& g,
                                const rmt::Matrix& z_dense, double tau) {
  const int n = g.n;
  if (z_dense.rows() != n || z_dense.cols() != n)
    throw InvalidInput("assemble_m: dimension mismatch");
  Matrix m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j)
        m(i, j) = 0.0;
      else if (g.adjacency(i, j) > 0.0)
        m(i, j) = 1.0;
      else
        m(i, j) = -1.0 + tau * z_dense(i, j);
    }
  }
  return rmt::SymmetricMatrix::checked(std::move(m));
}

rmt::SymmetricMatrix assemble_m(const rmt::GraphSample& g, const CorrectorZ& z,
                                double tau) {
  return assemble_m(g, z.dense.mat(), tau);
}

Diagnostics run_diagnostics(const rmt::GraphSample& g,
                            const rmt::SpectralDecomposition& d,
                            const CorrectorZ& z) {
  const int n = g.n;
  const Matrix& a = g.adjacency.mat();
  const Matrix& zm = z.dense.mat();
  Diagnostics out;

  const auto [xplus, xminus] = rmt::spectral_split(d, rmt::default_cut(n));

  // Averages over off-diagonal edge (non-free) and non-edge (free) positions.
  std::int64_t edges = 0, nonedges = 0;
  double se_p = 0, sf_p = 0, se_m = 0, sf_m = 0, se_z = 0, sf_z = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      if (a(i, j) > 0.0) {
        ++edges;
        se_p += xplus(i, j);
        se_m += xminus(i, j);
        se_z += zm(i, j);
      } else {
        ++nonedges;
        sf_p += xplus(i, j);
        sf_m += xminus(i, j);
        sf_z += zm(i, j);
      }
    }
  if (edges > 0) {
    out.avg_nonfree_xplus = se_p / edges;
    out.avg_nonfree_xminus = se_m / edges;
    out.avg_nonfree_z = se_z / edges;
  }
  if (nonedges > 0) {
    out.avg_free_xplus = sf_p / nonedges;
    out.avg_free_xminus = sf_m / nonedges;
    out.avg_free_z = sf_z / nonedges;
  }

  // f(k) = sum over ordered edge pairs of u_ki u_kj, via the edge indicator
  // masks; independent of the eigenvalue route the identities are checked
  // against.
  Matrix edge_mask(n, n), nonedge_mask(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const bool off = (i != j);
      edge_mask(i, j) = (off && a(i, j) > 0.0) ? 1.0 : 0.0;
      nonedge_mask(i, j) = (off && a(i, j) < 0.0) ? 1.0 : 0.0;
    }
  const Matrix pe = edge_mask * d.eigenvectors;
  const Matrix pn = nonedge_mask * d.eigenvectors;
  const Vector ones = Vector::Ones(n);
  double fg_err = 0.0, fg_plus = 0.0;
  for (int k = 0; k < n; ++k) {
    const double f = d.eigenvectors.col(k).dot(pe.col(k));
    const double gk = d.eigenvectors.col(k).dot(pn.col(k));
    const double onesproj = ones.dot(d.eigenvectors.col(k));
    fg_err = std::max(fg_err, std::abs(f - gk - d.eigenvalues[k]));
    fg_plus = std::max(fg_plus, std::abs(f + gk - (onesproj * onesproj - 1.0)));
  }
  out.fg_identity_max_err = fg_err;
  out.fg_plus_g_max = fg_plus;

  const Vector diag = zm.diagonal();
  out.diag_z_mean = diag.mean();
  out.diag_z_std = std::sqrt((diag.array() - out.diag_z_mean).square().mean());
  out.diag_z_max_dev = (diag.array() - out.diag_z_mean).abs().maxCoeff();

  double rn_min = std::numeric_limits<double>::infinity(), rn_max = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = zm.row(i).squaredNorm() - zm(i, i) * zm(i, i);
    s = std::sqrt(std::max(0.0, s));
    rn_min = std::min(rn_min, s);
    rn_max = std::max(rn_max, s);
  }
  out.row_norm_min = rn_min;
  out.row_norm_max = rn_max;
  out.max_abs_entry_z = zm.array().abs().maxCoeff();
  return out;
}

CertificateResult certify(const rmt::GraphSample& g, const CertificateSpec& spec) {
  if (spec.tau < 0.0) throw InvalidInput("certify: tau must be >= 0");
  if (spec.recursion_depth < 0 || spec.recursion_depth > 2)
    throw InvalidInput("certify: recursion_depth must be in [0, 2]");
  const int n = g.n;
  const int cut = spec.cut.value_or(rmt::default_cut(n));
  const double sqn = std::sqrt(static_cast<double>(n));

  const auto d = rmt::eigh(g.adjacency);
  CorrectorZ z;
  if (spec.variant == CertificateSpec::Variant::theta) {
    z = build_z_theta(d, cut);
  } else {
    const double eta = spec.eta.value_or(freeconv::consts::eta_coefficient() * sqn);
    z = build_z_radius(d, eta, cut);
  }

  rmt::SymmetricMatrix m = assemble_m(g, z, spec.tau);

  // Recursion: replace Z by twice the negative spectral part of M, with the
  // free-entry mean removed so the small-average property survives.
  for (int depth = 0; depth < spec.recursion_depth; ++depth) {
    const auto dm = rmt::eigh(m);
    int nneg = 0;
    while (nneg < n && dm.eigenvalues[n - 1 - nneg] < 0.0) ++nneg;
    const auto neg_part = rmt::spectral_split(dm, n - nneg).second;
    Matrix zp = 2.0 * neg_part.mat();
    double fsum = 0.0;
    std::int64_t fcount = 0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (i != j && g.adjacency(i, j) < 0.0) {
          fsum += zp(i, j);
          ++fcount;
        }
    if (fcount > 0) zp.array() -= fsum / static_cast<double>(fcount);
    m = assemble_m(g, zp, spec.tau);
  }

  const auto dm = rmt::eigh(m);
  CertificateResult res;
  res.lambda1 = dm.eigenvalues[0];
  res.lambdan = dm.eigenvalues[n - 1];
  res.sigma1 = std::max(res.lambda1, -res.lambdan);
  res.lambda1_norm = res.lambda1 / sqn;
  res.sigma1_norm = res.sigma1 / sqn;
  res.theta_upper = res.lambda1 + 1.0;
  res.diagnostics = run_diagnostics(g, d, z);
  res.spec = spec;
  res.seed = g.seed;
  res.n = n;

  if (spec.variant == CertificateSpec::Variant::theta) {
    Matrix inter = g.adjacency.mat() + 0.5 * z.dense.mat();
    inter.diagonal() -= 0.5 * z.dense.mat().diagonal();
    const auto di = rmt::eigh(rmt::SymmetricMatrix::symmetrized(inter));
    res.lambda1_intermediate = di.eigenvalues[0];
  }
  res.m = std::move(m);
  return res;
}

rmt::SymmetricMatrix resample_w(const CorrectorZ& z, std::uint64_t seed) {
  const int n = z.dense.n();
  rmt::Rng rng = rmt::Rng(seed).derive(rmt::streams::kResample);
  Matrix w = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = rng.next_sign() * z.dense(i, j);
      w(i, j) = v;
      w(j, i) = v;
    }
  return rmt::SymmetricMatrix::checked(std::move(w));
}

double eigvec_cross_corr(const rmt::SpectralDecomposition& d1,
                         const rmt::SpectralDecomposition& d2) {
  if (d1.n() != d2.n())
    throw InvalidInput("eigvec_cross_corr: dimension mismatch");
  const Matrix gram = d1.eigenvectors.transpose() * d2.eigenvectors;
  return gram.array().abs().maxCoeff();
}

double iid_baseline(int n, double phi, double psi, BaselineDist dist,
                    std::uint64_t seed) {
  if (psi < 0.0) throw InvalidInput("iid_baseline: psi must be >= 0");
  if (dist == BaselineDist::constant && psi != 0.0)
    throw InvalidInput("iid_baseline: constant law requires psi = 0");
  auto g = rmt::sample_gnp_half(n, seed);
  rmt::Rng rng = rmt::Rng(seed).derive(rmt::streams::kBaseline);
  Matrix m = g.adjacency.mat();
  const double half_width = std::sqrt(3.0) * psi;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (m(i, j) > 0.0) continue;  // edges stay +1
      double v = phi;
      if (dist == BaselineDist::gaussian)
        v += psi * rng.next_normal();
      else if (dist == BaselineDist::uniform)
        v += half_width * (2.0 * rng.next_double() - 1.0);
      m(i, j) = v;
      m(j, i) = v;
    }
  const auto d = rmt::eigh(rmt::SymmetricMatrix::checked(std::move(m)));
  return d.eigenvalues[0];
}

LowerBoundReport lower_bound_check(const rmt::GraphSample& g,
                                   const rmt::SymmetricMatrix& m, double c) {
  const int n = g.n;
  if (m.n() != n) throw InvalidInput("lower_bound_check: dimension mismatch");
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (i == j && m(i, i) != 0.0)
        throw ConstraintViolation("lower_bound_check: nonzero diagonal");
      if (i != j && g.adjacency(i, j) > 0.0 && m(i, j) != 1.0)
        throw ConstraintViolation("lower_bound_check: edge entry != 1");
    }

  const auto da = rmt::eigh(g.adjacency);
  const auto dm = rmt::eigh(m);
  const double nn = static_cast<double>(n);
  const double n32 = std::pow(nn, 1.5);

  LowerBoundReport rep;
  const double sigma1 = std::max(dm.eigenvalues[0], -dm.eigenvalues[n - 1]);
  rep.lhs = sigma1 * da.eigenvalues.array().abs().sum();
  rep.rhs = nn * nn - nn - c * n32;
  rep.lower_bound_ok = rep.lhs >= rep.rhs;

  const auto dq = rmt::eigh(
      rmt::SymmetricMatrix::symmetrized(m.mat() - g.adjacency.mat()));
  rep.hw_slack = dq.eigenvalues.squaredNorm() -
                 (dm.eigenvalues - da.eigenvalues).squaredNorm();
  rep.hw_ok = rep.hw_slack >= -1e-6 * nn * nn;

  rep.typical_sum_ok = std::abs(g.adjacency.mat().sum()) <= c * n32;
  rep.typical_sigma_ok =
      std::max(da.eigenvalues[0], -da.eigenvalues[n - 1]) <= 2.1 * std::sqrt(nn);
  const double half = 4.0 / (3.0 * std::numbers::pi) * n32;
  double pos = 0.0, neg = 0.0;
  for (int i = 0; i < n; ++i) {
    if (da.eigenvalues[i] >= 0.0) pos += da.eigenvalues[i];
    else neg += da.eigenvalues[i];
  }
  rep.typical_halves_ok =
      std::abs(pos - half) <= 0.05 * half && std::abs(-neg - half) <= 0.05 * half;
  rep.typical_ok =
      rep.typical_sum_ok && rep.typical_sigma_ok && rep.typical_halves_ok;
  return rep;
}

}  // namespace thetalab::cert
