// xbench: experiment runner for the spectral-certificate laboratory.
//
// Subcommands: certify, radius, esd, freeconv-predict, theta-min,
// iid-baseline, diagnostics, crosscorr, lower-bound, report.
// Each run writes <out>/trials.csv (fixed header, one row per seed) and
// <out>/summary.json. Reruns of the same config reproduce every numeric
// column except runtime_seconds bit-exactly, at any thread count.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "thetalab/certificate.hpp"
#include "thetalab/eigh.hpp"
#include "thetalab/free_convolution.hpp"
#include "thetalab/graph.hpp"
#include "thetalab/spectral_law.hpp"
#include "thetalab/theta_opt.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace thetalab;

namespace {

constexpr const char* kCsvHeader =
    "experiment,n,seed,variant,tau,eta,recursion_depth,lambda1,lambdan,"
    "sigma1,lambda1_norm,sigma1_norm,theta_upper,ks_fit,diag_mean,"
    "avg_free_entry,runtime_seconds";

const std::vector<std::string> kNumericColumns = {
    "lambda1",      "lambdan",   "sigma1",         "lambda1_norm",
    "sigma1_norm",  "theta_upper", "ks_fit",       "diag_mean",
    "avg_free_entry"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct TrialRecord {
  std::string experiment;
  int n = 0;
  std::uint64_t seed = 0;
  std::string variant = "theta";
  double tau = 1.0;
  std::optional<double> eta;
  int recursion_depth = 0;
  std::optional<double> lambda1, lambdan, sigma1;
  std::optional<double> lambda1_norm, sigma1_norm, theta_upper;
  std::optional<double> ks_fit, diag_mean, avg_free_entry;
  double runtime_seconds = 0.0;
  bool failed = false;
  std::string error;

  std::optional<double> column(const std::string& name) const {
    if (name == "lambda1") return lambda1;
    if (name == "lambdan") return lambdan;
    if (name == "sigma1") return sigma1;
    if (name == "lambda1_norm") return lambda1_norm;
    if (name == "sigma1_norm") return sigma1_norm;
    if (name == "theta_upper") return theta_upper;
    if (name == "ks_fit") return ks_fit;
    if (name == "diag_mean") return diag_mean;
    if (name == "avg_free_entry") return avg_free_entry;
    return std::nullopt;
  }

  std::string csv_row() const {
    const auto opt = [](const std::optional<double>& v) {
      return v ? fmt(*v) : std::string("undefined");
    };
    std::ostringstream os;
    os << experiment << ',' << n << ',' << seed << ',' << variant << ','
       << fmt(tau) << ',' << opt(eta) << ',' << recursion_depth << ','
       << opt(lambda1) << ',' << opt(lambdan) << ',' << opt(sigma1) << ','
       << opt(lambda1_norm) << ',' << opt(sigma1_norm) << ','
       << opt(theta_upper) << ',' << opt(ks_fit) << ',' << opt(diag_mean)
       << ',' << opt(avg_free_entry) << ',' << fmt(runtime_seconds);
    return os.str();
  }
};

struct RunContext {
  int n = 200;
  std::vector<std::uint64_t> seeds;
  fs::path out = "xbench-out";
  int threads = 0;

  int resolved_threads() const {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("THETALAB_THREADS")) {
      const int t = std::atoi(env);
      if (t > 0) return t;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
  }
};

std::vector<std::uint64_t> parse_seeds(const std::string& spec,
                                       std::uint64_t base) {
  std::vector<std::uint64_t> out;
  if (spec.find(',') == std::string::npos) {
    const long long count = std::stoll(spec);
    if (count < 1) throw CLI::ValidationError("--seeds", "count must be >= 1");
    for (long long i = 0; i < count; ++i) out.push_back(base + i);
    return out;
  }
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoull(tok));
  if (out.empty()) throw CLI::ValidationError("--seeds", "empty seed list");
  return out;
}

// Runs one job per seed on a small pool; records land in seed order.
template <typename Fn>
std::vector<TrialRecord> run_parallel(const RunContext& ctx, Fn per_seed) {
  std::vector<TrialRecord> records(ctx.seeds.size());
  std::atomic<std::size_t> next{0};
  const int nthreads =
      std::max(1, std::min<int>(ctx.resolved_threads(),
                                static_cast<int>(ctx.seeds.size())));
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= ctx.seeds.size()) return;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        records[i] = per_seed(ctx.seeds[i]);
      } catch (const std::exception& e) {
        records[i].seed = ctx.seeds[i];
        records[i].n = ctx.n;
        records[i].failed = true;
        records[i].error = e.what();
      }
      records[i].runtime_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::stable_sort(records.begin(), records.end(),
                   [](const TrialRecord& a, const TrialRecord& b) {
                     return a.seed < b.seed;
                   });
  return records;
}

json column_stats(const std::vector<TrialRecord>& records) {
  json cols = json::object();
  for (const auto& name : kNumericColumns) {
    std::vector<double> vals;
    for (const auto& r : records) {
      const auto v = r.column(name);
      if (!r.failed && v) vals.push_back(*v);
    }
    if (vals.empty()) continue;
    double sum = 0.0;
    for (double v : vals) sum += v;
    const double mean = sum / vals.size();
    double ss = 0.0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    const double stddev = std::sqrt(ss / vals.size());
    cols[name] = {{"mean", mean}, {"std", stddev},
                  {"count", vals.size()},
                  {"min", *std::min_element(vals.begin(), vals.end())},
                  {"max", *std::max_element(vals.begin(), vals.end())}};
  }
  return cols;
}

int write_outputs(const RunContext& ctx, const std::string& experiment,
                  const std::vector<TrialRecord>& records, json extras) {
  fs::create_directories(ctx.out);
  {
    std::ofstream csv(ctx.out / "trials.csv");
    csv << kCsvHeader << '\n';
    for (const auto& r : records) csv << r.csv_row() << '\n';
  }
  int failed = 0;
  for (const auto& r : records)
    if (r.failed) {
      ++failed;
      std::cerr << "trial seed=" << r.seed << " failed: " << r.error << '\n';
    }
  json summary = {{"experiment", experiment},
                  {"n", ctx.n},
                  {"trials", records.size()},
                  {"failed", failed},
                  {"columns", column_stats(records)}};
  if (!extras.is_null()) summary["extras"] = std::move(extras);
  std::ofstream(ctx.out / "summary.json") << summary.dump(2) << '\n';
  std::cout << summary.dump(2) << std::endl;
  return failed > 0 ? 1 : 0;
}

void write_histogram_csv(const fs::path& path,
                         const std::vector<esd::HistogramBin>& bins) {
  std::ofstream f(path);
  f << "bin_left,bin_right,count,density\n";
  for (const auto& b : bins)
    f << fmt(b.left) << ',' << fmt(b.right) << ',' << b.count << ','
      << fmt(b.density) << '\n';
}

json support_json(const freeconv::SupportInterval& s) {
  return {{"s", s.s}, {"t", s.t}, {"g_s", s.g_s}, {"g_t", s.g_t},
          {"residual", s.residual}};
}

// ---------------------------------------------------------------- certify

int cmd_certify(const RunContext& ctx, const cert::CertificateSpec& spec) {
  const bool theta = spec.variant == cert::CertificateSpec::Variant::theta;
  auto records = run_parallel(ctx, [&](std::uint64_t seed) {
    const auto g = rmt::sample_gnp_half(ctx.n, seed);
    const auto res = cert::certify(g, spec);
    TrialRecord r;
    r.experiment = "certify";
    r.n = ctx.n;
    r.seed = seed;
    r.variant = theta ? "theta" : "radius";
    r.tau = spec.tau;
    r.eta = spec.eta;
    r.recursion_depth = spec.recursion_depth;
    r.lambda1 = res.lambda1;
    r.lambdan = res.lambdan;
    r.sigma1 = res.sigma1;
    r.lambda1_norm = res.lambda1_norm;
    r.sigma1_norm = res.sigma1_norm;
    r.theta_upper = res.theta_upper;
    r.diag_mean = res.diagnostics.diag_z_mean;
    r.avg_free_entry = res.diagnostics.avg_free_z;
    return r;
  });

  json extras;
  try {
    if (theta) {
      const auto sup = freeconv::free_conv_support(
          freeconv::TransformableMeasure::make(
              esd::SpectralLaw::quartercircle_pair(1.5, 0.5)),
          freeconv::TransformableMeasure::make(esd::SpectralLaw::semicircle(
              freeconv::consts::alpha_w() / 2.0)));
      extras["prediction"] = {
          {"target", "theta"},
          {"value", sup.t + freeconv::consts::diag_shift()},
          {"support", support_json(sup)}};
    } else {
      const auto sup = freeconv::free_conv_support(
          freeconv::TransformableMeasure::make(esd::SpectralLaw::shifted_pair(
              0.5, 0.5, freeconv::consts::eta_coefficient() / 2.0)),
          freeconv::TransformableMeasure::make(esd::SpectralLaw::semicircle(
              freeconv::consts::tau_w() / 2.0)));
      extras["prediction"] = {{"target", "radius"},
                              {"value", std::max(std::abs(sup.s), sup.t)},
                              {"support", support_json(sup)}};
    }
  } catch (const std::exception& e) {
    extras["prediction_error"] = e.what();
  }
  return write_outputs(ctx, "certify", records, extras);
}

// -------------------------------------------------------------------- esd

int cmd_esd(const RunContext& ctx, int bins) {
  std::mutex hist_mutex;
  bool hist_written = false;
  json per_seed = json::object();
  std::mutex per_seed_mutex;

  // Shifted theta-convolution CDF, shared across seeds.
  const auto pair_m = freeconv::TransformableMeasure::make(
      esd::SpectralLaw::quartercircle_pair(1.5, 0.5));
  const auto sc_m = freeconv::TransformableMeasure::make(
      esd::SpectralLaw::semicircle(freeconv::consts::alpha_w() / 2.0));
  const auto sup = freeconv::free_conv_support(pair_m, sc_m);
  std::vector<double> grid;
  const int npts = 500;
  for (int i = 0; i <= npts; ++i)
    grid.push_back(sup.s - 0.1 + (sup.t - sup.s + 0.2) * i / npts);
  const auto dens = freeconv::free_conv_density(pair_m, sc_m, grid);
  std::vector<double> cdf(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i)
    cdf[i] = cdf[i - 1] + 0.5 * (dens[i].density + dens[i - 1].density) *
                              (grid[i] - grid[i - 1]);
  const double mass = cdf.back();
  for (auto& c : cdf) c /= mass;
  const double shift = freeconv::consts::diag_shift();
  const auto pred_cdf = [&](double x) {
    const double u = x - shift;
    if (u <= grid.front()) return 0.0;
    if (u >= grid.back()) return 1.0;
    const auto it = std::upper_bound(grid.begin(), grid.end(), u);
    const std::size_t i = it - grid.begin();
    const double t = (u - grid[i - 1]) / (grid[i] - grid[i - 1]);
    return cdf[i - 1] + t * (cdf[i] - cdf[i - 1]);
  };

  auto records = run_parallel(ctx, [&](std::uint64_t seed) {
    const int n = ctx.n;
    const double sqn = std::sqrt(double(n));
    const auto g = rmt::sample_gnp_half(n, seed);
    const auto d = rmt::eigh(g.adjacency);

    std::vector<double> adj(n);
    for (int i = 0; i < n; ++i) adj[i] = d.eigenvalues[n - 1 - i] / sqn;
    const double ks_adj =
        esd::ks_distance(adj, esd::SpectralLaw::semicircle(1.0));

    // (3/2)X- + (1/2)X+ shares the eigenbasis: eigenvalues are known.
    std::vector<double> half(n);
    for (int i = 0; i < n; ++i) {
      const double l = d.eigenvalues[i];
      half[i] = ((i < n / 2) ? 0.5 * l : 1.5 * l) / sqn;
    }
    std::sort(half.begin(), half.end());
    const double ks_half =
        esd::ks_distance(half, esd::SpectralLaw::quartercircle_pair(1.5, 0.5));

    const auto z = cert::build_z_theta(d, n / 2);
    const auto w = cert::resample_w(z, seed);
    const auto dw = rmt::eigh(w);
    std::vector<double> ws(n);
    for (int i = 0; i < n; ++i) ws[i] = dw.eigenvalues[n - 1 - i] / sqn;
    const double ks_w = esd::ks_distance(
        ws, esd::SpectralLaw::semicircle(freeconv::consts::alpha_w()));

    const auto zr = cert::build_z_radius(
        d, freeconv::consts::eta_coefficient() * sqn, n / 2);
    const auto wr = cert::resample_w(zr, seed + 1);
    const auto dwr = rmt::eigh(wr);
    std::vector<double> wrs(n);
    for (int i = 0; i < n; ++i) wrs[i] = dwr.eigenvalues[n - 1 - i] / sqn;
    const double ks_wr = esd::ks_distance(
        wrs, esd::SpectralLaw::semicircle(freeconv::consts::tau_w()));

    // Full sum S = A + Z/2 - D_Z/2 + W/2 against the shifted convolution.
    rmt::Matrix s =
        g.adjacency.mat() + 0.5 * z.dense.mat() + 0.5 * w.mat();
    s.diagonal() -= 0.5 * z.dense.mat().diagonal();
    const auto ds = rmt::eigh(rmt::SymmetricMatrix::symmetrized(s));
    double cdf_dist = 0.0;
    for (int i = 0; i < n; ++i) {
      const double f = pred_cdf(ds.eigenvalues[n - 1 - i] / sqn);
      cdf_dist = std::max(cdf_dist, std::abs(f - double(i + 1) / n));
      cdf_dist = std::max(cdf_dist, std::abs(f - double(i) / n));
    }

    {
      std::lock_guard lock(per_seed_mutex);
      per_seed[std::to_string(seed)] = {{"ks_adjacency", ks_adj},
                                        {"ks_halfsum", ks_half},
                                        {"ks_w", ks_w},
                                        {"ks_w_radius", ks_wr},
                                        {"sum_cdf_distance", cdf_dist}};
    }
    {
      std::lock_guard lock(hist_mutex);
      if (!hist_written) {
        hist_written = true;
        fs::create_directories(ctx.out);
        write_histogram_csv(ctx.out / "hist_adjacency.csv",
                            esd::histogram(adj, bins));
        write_histogram_csv(ctx.out / "hist_halfsum.csv",
                            esd::histogram(half, bins));
        write_histogram_csv(ctx.out / "hist_w.csv", esd::histogram(ws, bins));
        write_histogram_csv(ctx.out / "hist_w_radius.csv",
                            esd::histogram(wrs, bins));
        std::vector<double> sums(n);
        for (int i = 0; i < n; ++i) sums[i] = ds.eigenvalues[i] / sqn;
        write_histogram_csv(ctx.out / "hist_sum.csv",
                            esd::histogram(sums, bins));
        std::ofstream f(ctx.out / "freeconv_density.csv");
        f << "x,density\n";
        for (const auto& p : dens)
          f << fmt(p.x + shift) << ',' << fmt(p.density) << '\n';
      }
    }

    TrialRecord r;
    r.experiment = "esd";
    r.n = n;
    r.seed = seed;
    r.lambda1 = d.eigenvalues[0];
    r.lambdan = d.eigenvalues[n - 1];
    r.sigma1 = std::max(d.eigenvalues[0], -d.eigenvalues[n - 1]);
    r.lambda1_norm = *r.lambda1 / sqn;
    r.sigma1_norm = *r.sigma1 / sqn;
    r.theta_upper = *r.lambda1 + 1.0;
    r.ks_fit = ks_adj;
    return r;
  });

  json extras = {{"per_seed", per_seed},
                 {"prediction_support", support_json(sup)},
                 {"density_mass", mass}};
  return write_outputs(ctx, "esd", records, extras);
}

// ---------------------------------------------------------- other commands

int cmd_freeconv_predict(const RunContext& ctx, const std::string& target) {
  json out;
  if (target == "theta") {
    const auto a = freeconv::TransformableMeasure::make(
        esd::SpectralLaw::quartercircle_pair(1.5, 0.5));
    const auto b = freeconv::TransformableMeasure::make(
        esd::SpectralLaw::semicircle(freeconv::consts::alpha_w() / 2.0));
    const auto sup = freeconv::free_conv_support(a, b);
    out = {{"target", "theta"},
           {"value", sup.t + freeconv::consts::diag_shift()},
           {"diag_shift", freeconv::consts::diag_shift()},
           {"support", support_json(sup)}};
  } else if (target == "radius") {
    const auto a = freeconv::TransformableMeasure::make(
        esd::SpectralLaw::shifted_pair(
            0.5, 0.5, freeconv::consts::eta_coefficient() / 2.0));
    const auto b = freeconv::TransformableMeasure::make(
        esd::SpectralLaw::semicircle(freeconv::consts::tau_w() / 2.0));
    const auto sup = freeconv::free_conv_support(a, b);
    out = {{"target", "radius"},
           {"value", std::max(std::abs(sup.s), sup.t)},
           {"support", support_json(sup)}};
  } else {
    std::cerr << "unknown target: " << target << '\n';
    return 2;
  }
  fs::create_directories(ctx.out);
  std::ofstream(ctx.out / "summary.json") << out.dump(2) << '\n';
  std::cout << out.dump(2) << std::endl;
  return 0;
}

int cmd_theta_min(const RunContext& ctx, const opt::OptConfig& cfg) {
  std::mutex hist_mutex;
  auto records = run_parallel(ctx, [&](std::uint64_t seed) {
    const auto g = rmt::sample_gnp_half(ctx.n, seed);
    const auto res = opt::minimize(g, cfg);
    {
      std::lock_guard lock(hist_mutex);
      fs::create_directories(ctx.out);
      std::ofstream f(ctx.out / ("history_" + std::to_string(seed) + ".csv"));
      f << "iteration,best_value\n";
      for (std::size_t i = 0; i < res.history.size(); ++i)
        f << (i + 1) << ',' << fmt(res.history[i]) << '\n';
    }
    TrialRecord r;
    r.experiment = "theta_min";
    r.n = ctx.n;
    r.seed = seed;
    r.variant = cfg.objective == opt::OptConfig::Objective::lambda1
                    ? "lambda1" : "spectral_radius";
    r.lambda1 = res.value - 1.0;
    r.lambda1_norm = (res.value - 1.0) / std::sqrt(double(ctx.n));
    r.theta_upper = res.value;
    if (cfg.objective == opt::OptConfig::Objective::spectral_radius) {
      r.sigma1 = res.value - 1.0;
      r.sigma1_norm = *r.sigma1 / std::sqrt(double(ctx.n));
    }
    return r;
  });
  return write_outputs(ctx, "theta_min", records, nullptr);
}

int cmd_iid_baseline(const RunContext& ctx, double phi, double psi,
                     const std::string& dist) {
  cert::BaselineDist bd;
  if (dist == "constant") bd = cert::BaselineDist::constant;
  else if (dist == "gaussian") bd = cert::BaselineDist::gaussian;
  else if (dist == "uniform") bd = cert::BaselineDist::uniform;
  else {
    std::cerr << "unknown dist: " << dist << '\n';
    return 2;
  }
  auto records = run_parallel(ctx, [&](std::uint64_t seed) {
    const double l1 = cert::iid_baseline(ctx.n, phi, psi, bd, seed);
    TrialRecord r;
    r.experiment = "iid_baseline";
    r.n = ctx.n;
    r.seed = seed;
    r.variant = dist;
    r.lambda1 = l1;
    r.lambda1_norm = l1 / std::sqrt(double(ctx.n));
    r.theta_upper = l1 + 1.0;
    return r;
  });
  json extras = {{"phi", phi}, {"psi", psi}, {"dist", dist}};
  return write_outputs(ctx, "iid_baseline", records, extras);
}

int cmd_diagnostics(const RunContext& ctx) {
  std::mutex file_mutex;
  std::map<std::uint64_t, std::string> rows;
  auto records = run_parallel(ctx, [&](std::uint64_t seed) {
    const auto g = rmt::sample_gnp_half(ctx.n, seed);
    const auto d = rmt::eigh(g.adjacency);
    const auto z = cert::build_z_theta(d, ctx.n / 2);
    const auto diag = cert::run_diagnostics(g, d, z);
    const auto opt = [](const std::optional<double>& v) {
      return v ? fmt(*v) : std::string("undefined");
    };
    std::ostringstream os;
    os << seed << ',' << opt(diag.avg_free_xplus) << ','
       << opt(diag.avg_nonfree_xplus) << ',' << opt(diag.avg_free_xminus)
       << ',' << opt(diag.avg_nonfree_xminus) << ',' << opt(diag.avg_free_z)
       << ',' << opt(diag.avg_nonfree_z) << ',' << fmt(diag.diag_z_mean) << ','
       << fmt(diag.diag_z_std) << ',' << fmt(diag.diag_z_max_dev) << ','
       << fmt(diag.fg_identity_max_err) << ',' << fmt(diag.fg_plus_g_max)
       << ',' << fmt(diag.row_norm_min) << ',' << fmt(diag.row_norm_max) << ','
       << fmt(diag.max_abs_entry_z);
    {
      std::lock_guard lock(file_mutex);
      rows[seed] = os.str();
    }
    TrialRecord r;
    r.experiment = "diagnostics";
    r.n = ctx.n;
    r.seed = seed;
    r.lambda1 = d.eigenvalues[0];
    r.lambdan = d.eigenvalues[ctx.n - 1];
    r.sigma1 = std::max(*r.lambda1, -*r.lambdan);
    r.lambda1_norm = *r.lambda1 / std::sqrt(double(ctx.n));
    r.sigma1_norm = *r.sigma1 / std::sqrt(double(ctx.n));
    r.theta_upper = *r.lambda1 + 1.0;
    r.diag_mean = diag.diag_z_mean;
    r.avg_free_entry = diag.avg_free_z;
    return r;
  });
  fs::create_directories(ctx.out);
  std::ofstream f(ctx.out / "diagnostics.csv");
  f << "seed,avg_free_xplus,avg_nonfree_xplus,avg_free_xminus,"
       "avg_nonfree_xminus,avg_free_z,avg_nonfree_z,diag_z_mean,diag_z_std,"
       "diag_z_max_dev,fg_identity_max_err,fg_plus_g_max,row_norm_min,"
       "row_norm_max,max_abs_entry_z\n";
  for (const auto& [seed, row] : rows) f << row << '\n';
  return write_outputs(ctx, "diagnostics", records, nullptr);
}

int cmd_crosscorr(const RunContext& ctx) {
  std::mutex mu;
  json per_seed = json::object();
  auto records = run_parallel(ctx, [&](std::uint64_t seed) {
    const int n = ctx.n;
    const auto g = rmt::sample_gnp_half(n, seed);
    const auto d = rmt::eigh(g.adjacency);
    const auto z = cert::build_z_theta(d, n / 2);
    rmt::Matrix za = z.dense.mat().cwiseProduct(g.adjacency.mat());
    za.diagonal().setZero();
    const auto dza = rmt::eigh(rmt::SymmetricMatrix::symmetrized(za));
    const double corr = cert::eigvec_cross_corr(d, dza);
    {
      std::lock_guard lock(mu);
      per_seed[std::to_string(seed)] = corr;
    }
    TrialRecord r;
    r.experiment = "crosscorr";
    r.n = n;
    r.seed = seed;
    r.lambda1 = d.eigenvalues[0];
    r.lambdan = d.eigenvalues[n - 1];
    r.sigma1 = std::max(*r.lambda1, -*r.lambdan);
    r.lambda1_norm = *r.lambda1 / std::sqrt(double(n));
    r.sigma1_norm = *r.sigma1 / std::sqrt(double(n));
    r.theta_upper = *r.lambda1 + 1.0;
    r.ks_fit = corr;  // the gram maximum for this experiment
    return r;
  });
  const double ref = std::sqrt(2.0 * std::log(double(ctx.n)) / double(ctx.n));
  json extras = {{"per_seed", per_seed},
                 {"reference_sqrt_2logn_over_n", ref},
                 {"band", {0.5 * ref, 2.5 * ref}}};
  return write_outputs(ctx, "crosscorr", records, extras);
}

int cmd_lower_bound(const RunContext& ctx, const cert::CertificateSpec& spec,
                    double c) {
  std::mutex mu;
  json per_seed = json::object();
  auto records = run_parallel(ctx, [&](std::uint64_t seed) {
    const auto g = rmt::sample_gnp_half(ctx.n, seed);
    const auto res = cert::certify(g, spec);
    const auto rep = cert::lower_bound_check(g, res.m, c);
    {
      std::lock_guard lock(mu);
      per_seed[std::to_string(seed)] = {
          {"lhs", rep.lhs},
          {"rhs", rep.rhs},
          {"lower_bound_ok", rep.lower_bound_ok},
          {"hw_slack", rep.hw_slack},
          {"hw_ok", rep.hw_ok},
          {"typical_ok", rep.typical_ok}};
    }
    TrialRecord r;
    r.experiment = "lower_bound";
    r.n = ctx.n;
    r.seed = seed;
    r.variant = spec.variant == cert::CertificateSpec::Variant::theta
                    ? "theta" : "radius";
    r.lambda1 = res.lambda1;
    r.lambdan = res.lambdan;
    r.sigma1 = res.sigma1;
    r.lambda1_norm = res.lambda1_norm;
    r.sigma1_norm = res.sigma1_norm;
    r.theta_upper = res.theta_upper;
    return r;
  });
  json extras = {{"per_seed", per_seed}, {"slack_constant", c}};
  return write_outputs(ctx, "lower_bound", records, extras);
}

// ------------------------------------------------------------------ report

int cmd_report(const fs::path& out) {
  std::ifstream csv(out / "trials.csv");
  if (!csv) {
    std::cerr << "report: no trials.csv under " << out << '\n';
    return 2;
  }
  std::string header;
  std::getline(csv, header);
  if (header != kCsvHeader) {
    std::cerr << "report: unexpected trials.csv header\n";
    return 1;
  }
  std::vector<TrialRecord> records;
  std::string line;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) f.push_back(tok);
    if (f.size() != 17) continue;
    TrialRecord r;
    r.experiment = f[0];
    r.n = std::stoi(f[1]);
    r.seed = std::stoull(f[2]);
    const auto opt = [](const std::string& s) -> std::optional<double> {
      if (s == "undefined") return std::nullopt;
      return std::stod(s);
    };
    r.lambda1 = opt(f[7]);
    r.lambdan = opt(f[8]);
    r.sigma1 = opt(f[9]);
    r.lambda1_norm = opt(f[10]);
    r.sigma1_norm = opt(f[11]);
    r.theta_upper = opt(f[12]);
    r.ks_fit = opt(f[13]);
    r.diag_mean = opt(f[14]);
    r.avg_free_entry = opt(f[15]);
    records.push_back(r);
  }
  const json recomputed = column_stats(records);
  std::ofstream(out / "report.json") << recomputed.dump(2) << '\n';
  std::cout << recomputed.dump(2) << std::endl;

  std::ifstream sf(out / "summary.json");
  if (sf) {
    json summary;
    sf >> summary;
    if (summary.contains("columns") && summary["columns"] != recomputed) {
      std::cerr << "report: summary.json disagrees with recomputation\n";
      return 1;
    }
    std::cout << "summary aggregates match the per-trial CSV" << std::endl;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral certificates for the Lovasz theta function on "
               "G(n,1/2): experiment runner"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name
  app.set_config("--config", "", "key = value config file; flags win");
  app.allow_config_extras(true);

  RunContext ctx;
  std::string seeds_spec = "5";
  std::uint64_t seed_base = 1;
  app.add_option("--n", ctx.n, "matrix dimension")->capture_default_str();
  app.add_option("--seeds", seeds_spec,
                 "seed count (with --seed-base) or comma list")
      ->capture_default_str();
  app.add_option("--seed-base", seed_base, "first seed when --seeds is a count")
      ->capture_default_str();
  app.add_option("--out", ctx.out, "output directory")->capture_default_str();
  app.add_option("--threads", ctx.threads,
                 "worker threads (0 = THETALAB_THREADS or hardware)")
      ->capture_default_str();

  // certify / radius
  cert::CertificateSpec spec;
  std::string variant = "theta";
  double tau = 1.0, eta = 0.0;
  int recursion_depth = 0;
  auto add_cert_flags = [&](CLI::App* sub) {
    sub->add_option("--variant", variant, "theta | radius");
    sub->add_option("--tau", tau, "corrector scaling");
    sub->add_option("--eta", eta, "radius shift (0 = (3pi/8) sqrt(n))");
    sub->add_option("--recursion-depth", recursion_depth, "0..2");
  };
  auto* certify = app.add_subcommand("certify", "build spectral certificates");
  add_cert_flags(certify);
  auto* radius =
      app.add_subcommand("radius", "certify with the spectral-radius corrector");
  add_cert_flags(radius);

  auto* esd_cmd = app.add_subcommand("esd", "empirical spectral law fits");
  int bins = 60;
  esd_cmd->add_option("--bins", bins, "histogram bins");

  auto* fc = app.add_subcommand("freeconv-predict",
                                "free-convolution constant prediction");
  std::string target = "theta";
  fc->add_option("--target", target, "theta | radius");

  auto* tm = app.add_subcommand("theta-min", "subgradient theta minimization");
  opt::OptConfig ocfg;
  std::string objective = "lambda1", step_rule = "polyak", init = "adjacency";
  double step_c = 0.0;
  tm->add_option("--max-iters", ocfg.max_iters, "iteration budget");
  tm->add_option("--objective", objective, "lambda1 | spectral_radius");
  tm->add_option("--step-rule", step_rule,
                 "polyak | inverse_sqrt_k | inverse_k | fixed");
  tm->add_option("--step-c", step_c, "step constant / polyak margin");
  tm->add_option("--init", init, "adjacency | zeros_on_free");

  auto* iid = app.add_subcommand("iid-baseline",
                                 "iid free-entry baseline (Proposition 1)");
  double phi = -1.0, psi = 0.0;
  std::string dist = "constant";
  iid->add_option("--phi", phi, "free-entry mean");
  iid->add_option("--psi", psi, "free-entry standard deviation");
  iid->add_option("--dist", dist, "constant | gaussian | uniform");

  app.add_subcommand("diagnostics", "corrector identity/concentration dump");
  app.add_subcommand("crosscorr", "eigenbasis cross-correlation");

  auto* lb = app.add_subcommand("lower-bound", "Hoffman-Wielandt lower bound");
  double slack_c = 10.0;
  std::string lb_variant = "radius";
  lb->add_option("--variant", lb_variant, "theta | radius");
  lb->add_option("--slack-c", slack_c, "C in rhs = n^2 - n - C n^{3/2}");

  app.add_subcommand("report", "recompute summary from trials.csv");

  // Global flags are accepted after the subcommand name as well.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ctx.seeds = parse_seeds(seeds_spec, seed_base);

    const auto build_spec = [&](cert::CertificateSpec::Variant v) {
      spec.variant = v;
      spec.tau = tau;
      if (eta > 0.0) spec.eta = eta;
      spec.recursion_depth = recursion_depth;
      return spec;
    };

    if (certify->parsed()) {
      const auto v = variant == "radius" ? cert::CertificateSpec::Variant::radius
                                         : cert::CertificateSpec::Variant::theta;
      if (variant != "theta" && variant != "radius") {
        std::cerr << "unknown variant: " << variant << '\n';
        return 2;
      }
      return cmd_certify(ctx, build_spec(v));
    }
    if (radius->parsed())
      return cmd_certify(ctx, build_spec(cert::CertificateSpec::Variant::radius));
    if (esd_cmd->parsed()) return cmd_esd(ctx, bins);
    if (fc->parsed()) return cmd_freeconv_predict(ctx, target);
    if (tm->parsed()) {
      if (objective == "spectral_radius")
        ocfg.objective = opt::OptConfig::Objective::spectral_radius;
      else if (objective != "lambda1") {
        std::cerr << "unknown objective: " << objective << '\n';
        return 2;
      }
      if (step_rule == "polyak") ocfg.step_rule = opt::OptConfig::StepRule::polyak;
      else if (step_rule == "inverse_sqrt_k")
        ocfg.step_rule = opt::OptConfig::StepRule::inverse_sqrt_k;
      else if (step_rule == "inverse_k")
        ocfg.step_rule = opt::OptConfig::StepRule::inverse_k;
      else if (step_rule == "fixed")
        ocfg.step_rule = opt::OptConfig::StepRule::fixed;
      else {
        std::cerr << "unknown step rule: " << step_rule << '\n';
        return 2;
      }
      if (step_c > 0.0) ocfg.step_c = step_c;
      ocfg.initial = init == "zeros_on_free" ? opt::OptConfig::Init::zeros_on_free
                                             : opt::OptConfig::Init::adjacency;
      return cmd_theta_min(ctx, ocfg);
    }
    if (iid->parsed()) return cmd_iid_baseline(ctx, phi, psi, dist);
    if (app.get_subcommand("diagnostics")->parsed()) return cmd_diagnostics(ctx);
    if (app.get_subcommand("crosscorr")->parsed()) return cmd_crosscorr(ctx);
    if (lb->parsed()) {
      const auto v = lb_variant == "theta" ? cert::CertificateSpec::Variant::theta
                                           : cert::CertificateSpec::Variant::radius;
      cert::CertificateSpec s;
      s.variant = v;
      return cmd_lower_bound(ctx, s, slack_c);
    }
    if (app.get_subcommand("report")->parsed()) return cmd_report(ctx.out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
