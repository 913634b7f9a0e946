#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace thetalab::esd {

// Analytic limiting spectral laws (semicircle, quartercircle pairs, their
// shifted/scaled compositions) and empirical sample laws. Analytic kinds
// have closed-form density and CDF; quadrature appears only in moment().
class SpectralLaw {
 public:
  enum class Kind {
    semicircle,         // P_alpha on [-2a, 2a]
    quartercircle_pair, // P_{a,b}: half-mass quartercircles on [-2a,0] and [0,2b]
    shifted_pair,       // P_{a,b,g}: quartercircles pushed away from 0 by g
    shifted,
    scaled,
    empirical,
  };

  static SpectralLaw semicircle(double alpha);
  static SpectralLaw quartercircle_pair(double alpha_neg, double beta_pos);
  static SpectralLaw shifted_pair(double alpha, double beta, double gamma);
  static SpectralLaw shifted(SpectralLaw base, double offset);
  static SpectralLaw scaled(SpectralLaw base, double factor);  // factor > 0
  static SpectralLaw empirical(std::vector<double> samples);   // sorted internally

  Kind kind() const;
  bool is_analytic() const;

  double density(double x) const;
  double cdf(double x) const;
  // k-th raw moment; Catalan closed form for semicircles, quadrature otherwise.
  double moment(int k) const;

  double support_lo() const;
  double support_hi() const;
  // One or two closed intervals.
  std::vector<std::pair<double, double>> support_pieces() const;

  // Parameter access for transform code.
  double param_a() const;
  double param_b() const;
  double param_c() const;  // gamma / offset / factor
  SpectralLaw base_law() const;  // only for shifted/scaled kinds
  const std::vector<double>& samples() const;

 private:
  struct Node;
  explicit SpectralLaw(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Deterministic quantiles gamma_1 >= ... >= gamma_n with the midpoint
// convention cdf(gamma_i) = (n - i + 1/2)/n.
std::vector<double> classical_locations(const SpectralLaw& law, int n);

// Sup distance between the empirical CDF of sorted samples and the law CDF.
double ks_distance(std::span<const double> sorted_samples, const SpectralLaw& law);

struct HistogramBin {
  double left, right;
  std::int64_t count;
  double density;
};
std::vector<HistogramBin> histogram(std::span<const double> samples, int bins);

}  // namespace thetalab::esd
