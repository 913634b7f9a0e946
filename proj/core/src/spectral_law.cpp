#include "thetalab/spectral_law.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thetalab/errors.hpp"

namespace thetalab::esd {

namespace {
constexpr double kPi = std::numbers::pi;

// Mass-1 quartercircle on [0, 2b]: rho(x) = sqrt(4b^2 - x^2) / (pi b^2).
double qc_density(double x, double b) {
  if (x < 0.0 || x > 2.0 * b) return 0.0;
  return std::sqrt(std::max(0.0, 4.0 * b * b - x * x)) / (kPi * b * b);
}

double qc_cdf(double x, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 2.0 * b) return 1.0;
  const double r = std::sqrt(4.0 * b * b - x * x);
  return (0.5 * x * r + 2.0 * b * b * std::asin(x / (2.0 * b))) / (kPi * b * b);
}

double catalan(int m) {
  double c = 1.0;
  for (int i = 0; i < m; ++i) c = c * 2.0 * (2.0 * i + 1.0) / (i + 2.0);
  return c;
}
}  // namespace

struct SpectralLaw::Node {
  Kind kind;
  double a = 0.0, b = 0.0, c = 0.0;
  std::shared_ptr<const Node> base;
  std::vector<double> samples;
};

SpectralLaw SpectralLaw::semicircle(double alpha) {
  if (alpha <= 0.0) throw InvalidInput("semicircle: alpha must be positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::semicircle;
  n->a = alpha;
  return SpectralLaw(std::move(n));
}

SpectralLaw SpectralLaw::quartercircle_pair(double alpha_neg, double beta_pos) {
  if (alpha_neg <= 0.0 || beta_pos <= 0.0)
    throw InvalidInput("quartercircle_pair: scales must be positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::quartercircle_pair;
  n->a = alpha_neg;
  n->b = beta_pos;
  return SpectralLaw(std::move(n));
}

SpectralLaw SpectralLaw::shifted_pair(double alpha, double beta, double gamma) {
  if (alpha <= 0.0 || beta <= 0.0 || gamma < 0.0)
    throw InvalidInput("shifted_pair: bad parameters");
  auto n = std::make_shared<Node>();
  n->kind = Kind::shifted_pair;
  n->a = alpha;
  n->b = beta;
  n->c = gamma;
  return SpectralLaw(std::move(n));
}

SpectralLaw SpectralLaw::shifted(SpectralLaw base, double offset) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::shifted;
  n->c = offset;
  n->base = base.node_;
  return SpectralLaw(std::move(n));
}

SpectralLaw SpectralLaw::scaled(SpectralLaw base, double factor) {
  if (factor <= 0.0) throw InvalidInput("scaled: factor must be positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::scaled;
  n->c = factor;
  n->base = base.node_;
  return SpectralLaw(std::move(n));
}

SpectralLaw SpectralLaw::empirical(std::vector<double> samples) {
  if (samples.empty()) throw InvalidInput("empirical: no samples");
  std::sort(samples.begin(), samples.end());
  auto n = std::make_shared<Node>();
  n->kind = Kind::empirical;
  n->samples = std::move(samples);
  return SpectralLaw(std::move(n));
}

SpectralLaw::Kind SpectralLaw::kind() const { return node_->kind; }
bool SpectralLaw::is_analytic() const { return node_->kind != Kind::empirical; }
double SpectralLaw::param_a() const { return node_->a; }
double SpectralLaw::param_b() const { return node_->b; }
double SpectralLaw::param_c() const { return node_->c; }
const std::vector<double>& SpectralLaw::samples() const { return node_->samples; }

SpectralLaw SpectralLaw::base_law() const {
  if (!node_->base) throw InvalidInput("base_law: law has no base");
  return SpectralLaw(node_->base);
}

double SpectralLaw::density(double x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::semicircle: {
      const double a = n.a;
      if (std::abs(x) >= 2.0 * a) return 0.0;
      return std::sqrt(4.0 * a * a - x * x) / (2.0 * kPi * a * a);
    }
    case Kind::quartercircle_pair:
      return 0.5 * qc_density(-x, n.a) + 0.5 * qc_density(x, n.b);
    case Kind::shifted_pair:
      return 0.5 * qc_density(-(x + n.c), n.a) + 0.5 * qc_density(x - n.c, n.b);
    case Kind::shifted:
      return SpectralLaw(n.base).density(x - n.c);
    case Kind::scaled:
      return SpectralLaw(n.base).density(x / n.c) / n.c;
    case Kind::empirical: {
      // Histogram density on sqrt(m) bins.
      const auto& s = n.samples;
      const int bins = std::max<int>(1, static_cast<int>(std::sqrt(double(s.size()))));
      const auto h = histogram(std::span<const double>(s), bins);
      for (const auto& b : h)
        if (x >= b.left && x <= b.right) return b.density;
      return 0.0;
    }
  }
  return 0.0;
}

double SpectralLaw::cdf(double x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::semicircle: {
      const double a = n.a;
      if (x <= -2.0 * a) return 0.0;
      if (x >= 2.0 * a) return 1.0;
      const double r = std::sqrt(4.0 * a * a - x * x);
      return 0.5 + x * r / (4.0 * kPi * a * a) + std::asin(x / (2.0 * a)) / kPi;
    }
    case Kind::quartercircle_pair:
      if (x < 0.0) return 0.5 * (1.0 - qc_cdf(-x, n.a));
      return 0.5 + 0.5 * qc_cdf(x, n.b);
    case Kind::shifted_pair:
      if (x < 0.0) return 0.5 * (1.0 - qc_cdf(-(x + n.c), n.a));
      return 0.5 + 0.5 * qc_cdf(x - n.c, n.b);
    case Kind::shifted:
      return SpectralLaw(n.base).cdf(x - n.c);
    case Kind::scaled:
      return SpectralLaw(n.base).cdf(x / n.c);
    case Kind::empirical: {
      const auto& s = n.samples;
      const auto it = std::upper_bound(s.begin(), s.end(), x);
      return static_cast<double>(it - s.begin()) / static_cast<double>(s.size());
    }
  }
  return 0.0;
}

std::vector<std::pair<double, double>> SpectralLaw::support_pieces() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::semicircle:
      return {{-2.0 * n.a, 2.0 * n.a}};
    case Kind::quartercircle_pair:
      return {{-2.0 * n.a, 0.0}, {0.0, 2.0 * n.b}};
    case Kind::shifted_pair:
      return {{-2.0 * n.a - n.c, -n.c}, {n.c, 2.0 * n.b + n.c}};
    case Kind::shifted: {
      auto p = SpectralLaw(n.base).support_pieces();
      for (auto& [lo, hi] : p) { lo += n.c; hi += n.c; }
      return p;
    }
    case Kind::scaled: {
      auto p = SpectralLaw(n.base).support_pieces();
      for (auto& [lo, hi] : p) { lo *= n.c; hi *= n.c; }
      return p;
    }
    case Kind::empirical:
      return {{n.samples.front(), n.samples.back()}};
  }
  return {};
}

double SpectralLaw::support_lo() const { return support_pieces().front().first; }
double SpectralLaw::support_hi() const { return support_pieces().back().second; }

double SpectralLaw::moment(int k) const {
  if (k < 0) throw InvalidInput("moment: k must be >= 0");
  if (k == 0) {
    // Normalization, by quadrature for analytic kinds (exercised in tests).
    if (!is_analytic()) return 1.0;
  }
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::semicircle: {
      if (k == 0) break;
      if (k % 2 == 1) return 0.0;
      return std::pow(n.a, k) * catalan(k / 2);
    }
    case Kind::shifted: {
      // Binomial expansion around the base moments.
      if (k == 0) break;
      double out = 0.0, binom = 1.0;
      const SpectralLaw b(n.base);
      for (int j = 0; j <= k; ++j) {
        out += binom * std::pow(n.c, k - j) * b.moment(j);
        binom = binom * (k - j) / (j + 1.0);
      }
      return out;
    }
    case Kind::scaled:
      if (k == 0) break;
      return std::pow(n.c, k) * SpectralLaw(n.base).moment(k);
    case Kind::empirical: {
      double s = 0.0;
      for (double x : n.samples) s += std::pow(x, k);
      return s / static_cast<double>(n.samples.size());
    }
    default:
      break;
  }
  // Quadrature over each support piece; edges are sqrt-type, which
  // tanh-sinh handles.
  boost::math::quadrature::tanh_sinh<double> integrator;
  double total = 0.0;
  for (const auto& [lo, hi] : support_pieces()) {
    if (hi <= lo) continue;
    total += integrator.integrate(
        [&](double x) { return std::pow(x, k) * density(x); }, lo, hi,
        1e-12);
  }
  return total;
}

std::vector<double> classical_locations(const SpectralLaw& law, int n) {
  if (n < 1) throw InvalidInput("classical_locations: n must be >= 1");
  std::vector<double> gamma(n);
  const double lo0 = law.support_lo(), hi0 = law.support_hi();
  for (int i = 1; i <= n; ++i) {
    const double q = (n - i + 0.5) / n;
    double lo = lo0, hi = hi0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-14 * (1.0 + std::abs(hi)); ++iter) {
      const double mid = 0.5 * (lo + hi);
      (law.cdf(mid) < q ? lo : hi) = mid;
    }
    gamma[i - 1] = 0.5 * (lo + hi);
  }
  return gamma;
}

double ks_distance(std::span<const double> sorted_samples, const SpectralLaw& law) {
  const std::size_t m = sorted_samples.size();
  if (m == 0) throw InvalidInput("ks_distance: empty sample");
  double d = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double f = law.cdf(sorted_samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / m));
    d = std::max(d, std::abs(f - static_cast<double>(i) / m));
  }
  return d;
}

std::vector<HistogramBin> histogram(std::span<const double> samples, int bins) {
  if (bins < 1) throw InvalidInput("histogram: bins must be >= 1");
  if (samples.empty()) throw InvalidInput("histogram: empty sample");
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  double lo = *mn, hi = *mx;
  if (lo == hi) { lo -= 0.5; hi += 0.5; }
  const double width = (hi - lo) / bins;
  std::vector<HistogramBin> out(bins);
  for (int b = 0; b < bins; ++b)
    out[b] = {lo + b * width, lo + (b + 1) * width, 0, 0.0};
  for (double x : samples) {
    int b = static_cast<int>((x - lo) / width);
    b = std::clamp(b, 0, bins - 1);
    ++out[b].count;
  }
  const double m = static_cast<double>(samples.size());
  for (auto& b : out) b.density = static_cast<double>(b.count) / (m * width);
  return out;
}

}  // namespace thetalab::esd
