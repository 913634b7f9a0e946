#include <doctest.h>

#include <cmath>
#include <numbers>

#include "thetalab/certificate.hpp"
#include "thetalab/errors.hpp"
#include "thetalab/free_convolution.hpp"

using namespace thetalab;
using namespace thetalab::cert;
using rmt::Matrix;
constexpr double kPi = std::numbers::pi;

TEST_CASE("build_z_theta sign rule on a 2x2 example") {
  Matrix a(2, 2);
  a << 0, 2, 2, 0;  // eigenvalues +-2
  const auto d = rmt::eigh(rmt::SymmetricMatrix::checked(a));
  const auto z = build_z_theta(d, 1);
  CHECK(z.alphas[0] == doctest::Approx(-2.0));
  CHECK(z.alphas[1] == doctest::Approx(-2.0));
  // Z = -2I in that eigenbasis means dense Z is -2I here.
  CHECK(z.dense(0, 0) == doctest::Approx(-2.0));
  CHECK(z.dense(1, 1) == doctest::Approx(-2.0));
  CHECK(z.dense(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("theta alphas are nonpositive when the split matches signs") {
  const auto g = rmt::sample_gnp_half(120, 3);
  const auto d = rmt::eigh(g.adjacency);
  int cut = 0;
  while (cut < 120 && d.eigenvalues[cut] > 0) ++cut;
  const auto z = build_z_theta(d, cut);
  for (int i = 0; i < 120; ++i) CHECK(z.alphas[i] <= 1e-12);
}

TEST_CASE("corrector shares the source eigenbasis and traces match") {
  const auto g = rmt::sample_gnp_half(150, 9);
  const auto d = rmt::eigh(g.adjacency);
  const auto z = build_z_theta(d, 75);
  CHECK(z.dense.trace() == doctest::Approx(z.alphas.sum()).epsilon(1e-8));
  for (int k = 0; k < 150; k += 37) {
    const rmt::Vector zu = z.dense.mat() * d.eigenvectors.col(k);
    const rmt::Vector au = z.alphas[k] * d.eigenvectors.col(k);
    CHECK((zu - au).norm() <= 1e-6);
  }
}

TEST_CASE("build_z_radius: alpha = +-eta - lambda") {
  Matrix a(2, 2);
  a << 0, 2, 2, 0;
  const auto d = rmt::eigh(rmt::SymmetricMatrix::checked(a));
  const auto z = build_z_radius(d, 2.0, 1);
  CHECK(z.alphas[0] == doctest::Approx(0.0));  // eta - lambda1 = 2 - 2
  CHECK(z.alphas[1] == doctest::Approx(0.0));  // -eta - lambda2 = -2 + 2
  CHECK(z.dense.mat().norm() <= 1e-12);
}

TEST_CASE("assemble_m with Z = 0 reproduces the adjacency") {
  const auto g = rmt::sample_gnp_half(40, 21);
  CorrectorZ z;
  z.alphas = rmt::Vector::Zero(40);
  z.dense = rmt::SymmetricMatrix::symmetrized(Matrix::Zero(40, 40));
  const auto m = assemble_m(g, z, 1.0);
  CHECK(m.mat() == g.adjacency.mat());
}

TEST_CASE("assembled M is feasible bit-exactly") {
  const auto g = rmt::sample_gnp_half(90, 13);
  const auto d = rmt::eigh(g.adjacency);
  const auto z = build_z_theta(d, 45);
  const auto m = assemble_m(g, z, 1.0);
  for (int i = 0; i < 90; ++i) {
    CHECK(m(i, i) == 0.0);
    for (int j = 0; j < 90; ++j)
      if (i != j && g.adjacency(i, j) > 0.0) CHECK(m(i, j) == 1.0);
  }
  CHECK_THROWS_AS(assemble_m(g, Matrix::Zero(4, 4), 1.0), InvalidInput);
}

TEST_CASE("tau = 0 degenerates to the adjacency matrix") {
  const auto g = rmt::sample_gnp_half(60, 5);
  const auto d = rmt::eigh(g.adjacency);
  const auto z = build_z_theta(d, 30);
  const auto m = assemble_m(g, z, 0.0);
  CHECK(m.mat() == g.adjacency.mat());
}

TEST_CASE("fg identities hold to 1e-8 at moderate n") {
  const auto g = rmt::sample_gnp_half(300, 17);
  const auto d = rmt::eigh(g.adjacency);
  const auto z = build_z_theta(d, 150);
  const auto diag = run_diagnostics(g, d, z);
  CHECK(diag.fg_identity_max_err <= 1e-8);
  CHECK(diag.fg_plus_g_max <= 1e-8);
}

TEST_CASE("diagnostics on a planted-complete graph flag undefined averages") {
  const auto base = rmt::sample_gnp_half(24, 2);
  const auto g = rmt::plant_clique(base, 24, 3);  // complete: no free entries
  const auto d = rmt::eigh(g.adjacency);
  const auto z = build_z_theta(d, 12);
  const auto diag = run_diagnostics(g, d, z);
  CHECK_FALSE(diag.avg_free_z.has_value());
  CHECK(diag.avg_nonfree_z.has_value());
}

TEST_CASE("resample_w flips signs only") {
  const auto g = rmt::sample_gnp_half(80, 4);
  const auto d = rmt::eigh(g.adjacency);
  const auto z = build_z_theta(d, 40);
  const auto w = resample_w(z, 999);
  for (int i = 0; i < 80; ++i) {
    CHECK(w(i, i) == 0.0);
    for (int j = i + 1; j < 80; ++j)
      CHECK(std::abs(w(i, j)) == std::abs(z.dense(i, j)));
  }
  CorrectorZ zero;
  zero.alphas = rmt::Vector::Zero(10);
  zero.dense = rmt::SymmetricMatrix::symmetrized(Matrix::Zero(10, 10));
  CHECK(resample_w(zero, 1).mat().norm() == 0.0);
}

TEST_CASE("eigvec_cross_corr is 1 against itself and guards dimensions") {
  const auto g = rmt::sample_gnp_half(50, 6);
  const auto d = rmt::eigh(g.adjacency);
  CHECK(eigvec_cross_corr(d, d) == doctest::Approx(1.0).epsilon(1e-10));
  const auto d2 = rmt::eigh(rmt::sample_gnp_half(49, 6).adjacency);
  CHECK_THROWS_AS(eigvec_cross_corr(d, d2), InvalidInput);
}

TEST_CASE("iid baseline: constant -1 reproduces the adjacency exactly") {
  const int n = 180;
  const double l1 = iid_baseline(n, -1.0, 0.0, BaselineDist::constant, 42);
  const auto g = rmt::sample_gnp_half(n, 42);
  const auto d = rmt::eigh(g.adjacency);
  CHECK(l1 == d.eigenvalues[0]);
}

TEST_CASE("iid baseline: phi = 0 keeps lambda1 of order n") {
  const int n = 300;
  const double l1 = iid_baseline(n, 0.0, 0.0, BaselineDist::constant, 7);
  CHECK(l1 >= 0.45 * n);
}

TEST_CASE("iid baseline rejects invalid parameters") {
  CHECK_THROWS_AS(iid_baseline(30, -1.0, 0.5, BaselineDist::constant, 1),
                  InvalidInput);
  CHECK_THROWS_AS(iid_baseline(30, -1.0, -1.0, BaselineDist::gaussian, 1),
                  InvalidInput);
}

TEST_CASE("certify at small n: feasibility, sigma1 and recursion run") {
  const auto g = rmt::sample_gnp_half(150, 30);
  CertificateSpec spec;
  spec.variant = CertificateSpec::Variant::theta;
  const auto res = certify(g, spec);
  CHECK(res.sigma1 == std::max(res.lambda1, -res.lambdan));
  CHECK(res.theta_upper == res.lambda1 + 1.0);
  CHECK(res.lambda1_intermediate.has_value());
  CHECK(res.lambda1 < rmt::eigh(g.adjacency).eigenvalues[0]);
  for (int i = 0; i < 150; ++i) CHECK(res.m(i, i) == 0.0);

  CertificateSpec rec = spec;
  rec.recursion_depth = 1;
  const auto res2 = certify(g, rec);
  for (int i = 0; i < 150; ++i)
    for (int j = 0; j < 150; ++j)
      if (i != j && g.adjacency(i, j) > 0.0) CHECK(res2.m(i, j) == 1.0);

  CertificateSpec bad = spec;
  bad.recursion_depth = 3;
  CHECK_THROWS_AS(certify(g, bad), InvalidInput);
}

TEST_CASE("radius certify: spectrum of Z is symmetric-ish and sigma sane") {
  const auto g = rmt::sample_gnp_half(200, 8);
  CertificateSpec spec;
  spec.variant = CertificateSpec::Variant::radius;
  const auto res = certify(g, spec);
  CHECK(res.sigma1_norm > 1.0);
  CHECK(res.sigma1_norm < 2.1);
  // Z spectrum symmetric: trace nearly cancels.
  const auto d = rmt::eigh(g.adjacency);
  const auto z = build_z_radius(
      d, freeconv::consts::eta_coefficient() * std::sqrt(200.0), 100);
  CHECK(std::abs(z.alphas.sum()) <= 0.02 * std::pow(200.0, 1.5));
}

TEST_CASE("lemma specradqc: radius corrector halves and shifts the spectrum") {
  const int n = 400;
  const auto g = rmt::sample_gnp_half(n, 23);
  const auto d = rmt::eigh(g.adjacency);
  const double eta = freeconv::consts::eta_coefficient() * std::sqrt(double(n));
  const auto z = build_z_radius(d, eta, n / 2);
  // A + Z/2 shares the eigenbasis: eigenvalues lambda/2 +- eta/2.
  for (int i = 0; i < n; i += 57) {
    const double expect =
        0.5 * d.eigenvalues[i] + ((i < n / 2) ? 0.5 : -0.5) * eta;
    const double actual = d.eigenvalues[i] + 0.5 * z.alphas[i];
    CHECK(actual == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("hoffman-wielandt trivial case and lower-bound plumbing") {
  const auto g = rmt::sample_gnp_half(120, 14);
  // M = A_G: Q = 0, HW slack exactly the negated distance term >= 0.
  const auto rep = lower_bound_check(g, g.adjacency, 10.0);
  CHECK(rep.hw_ok);
  CHECK(rep.hw_slack >= -1e-6 * 120.0 * 120.0);
  CHECK(rep.lower_bound_ok);  // lhs ~ (16/3pi) n^2 > rhs

  Matrix bad = g.adjacency.mat();
  bad(0, 0) = 1.0;
  CHECK_THROWS_AS(
      lower_bound_check(g, rmt::SymmetricMatrix::checked(bad), 10.0),
      ConstraintViolation);
}
