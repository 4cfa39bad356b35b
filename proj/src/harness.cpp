#include "hyperbh/harness.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hyperbh/io.hpp"
#include "hyperbh/nonbacktracking.hpp"

namespace hyperbh {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::ofstream open_csv(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(10);
  return out;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw std::invalid_argument(std::string(where) + ": expected a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) throw std::invalid_argument(std::string(where) + ": unknown key '" + key + "'");
  }
}

template <class T>
void read_if(const json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

Partition single_cluster(std::size_t n) { return Partition(std::vector<int>(n, 0), 1); }

// AMI of spectral clustering; "no detectable structure" counts as one cluster.
struct BhOutcome {
  double ami = kNaN;
  int q_hat = 0;
};

BhOutcome run_bh(const Hypergraph& h, const Partition& truth, const SpectralOptions& opts) {
  BhOutcome o;
  try {
    const SpectralResult r = cluster(h, opts);
    o.q_hat = r.q_hat;
    o.ami = ami(r.labels, truth);
  } catch (const std::runtime_error& e) {
    if (std::string(e.what()) != "no detectable structure") throw;
    o.ami = ami(single_cluster(h.num_nodes()), truth);
  }
  return o;
}

}  // namespace

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& job) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t job_seed(std::uint64_t base, std::size_t point, std::size_t rep) {
  return mix64(mix64(base) ^ mix64((static_cast<std::uint64_t>(point) << 32) ^ rep));
}

MeanSe summarize(const std::vector<double>& values) {
  MeanSe s;
  double sum = 0.0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    sum += v;
    ++s.count;
  }
  if (s.count == 0) {
    s.mean = kNaN;
    s.se = kNaN;
    return s;
  }
  s.mean = sum / s.count;
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) {
      if (!std::isnan(v)) ss += (v - s.mean) * (v - s.mean);
    }
    s.se = std::sqrt(ss / (s.count - 1) / s.count);
  }
  return s;
}

std::optional<double> transition_point(const std::vector<double>& x, const std::vector<double>& mean, double threshold) {
  std::optional<double> t;
  for (std::size_t i = x.size(); i-- > 0;) {
    if (std::isnan(mean[i])) continue;  // skipped point
    if (mean[i] < threshold) {
      t = x[i];
    } else {
      break;
    }
  }
  return t;
}

std::optional<double> first_crossing(const std::vector<double>& x, const std::vector<double>& diff) {
  std::size_t prev = x.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isnan(diff[i])) continue;
    if (prev < x.size()) {
      if (diff[prev] == 0.0) return x[prev];
      if ((diff[prev] > 0) != (diff[i] > 0) || diff[i] == 0.0) {
        const double t = diff[prev] / (diff[prev] - diff[i]);
        return x[prev] + t * (x[i] - x[prev]);
      }
    }
    prev = i;
  }
  return std::nullopt;
}

Partition coarsen(const Partition& fine, const std::vector<int>& split) {
  std::vector<int> labels(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) labels[i] = split.at(static_cast<std::size_t>(fine.labels[i]));
  return Partition(std::move(labels), 2);
}

EpsSweepResult run_eps_sweep(const EpsSweepConfig& cfg) {
  if (cfg.grid.empty()) throw std::invalid_argument("eps sweep: empty grid");
  if (cfg.reps < 1) throw std::invalid_argument("eps sweep: reps must be >= 1");
  const std::size_t points = cfg.grid.size();
  const std::size_t reps = static_cast<std::size_t>(cfg.reps);
  std::vector<double> bh(points * reps, kNaN);
  std::vector<double> bp(points * reps, kNaN);
  std::vector<int> qhat(points * reps, 0);
  std::vector<int> failed(points * reps, 0);

  SpectralOptions sopts = cfg.spectral;
  if (cfg.bh_fixed_q) sopts.fixed_q = cfg.q;

  parallel_for(points * reps, cfg.threads, [&](std::size_t job) {
    const std::size_t p = job / reps;
    const std::size_t r = job % reps;
    SymmetricHsbmSpec spec;
    spec.n = cfg.n;
    spec.q = cfg.q;
    spec.orders = cfg.orders;
    spec.mode = SymmetricHsbmSpec::Mode::degree_eps;
    spec.d = cfg.d;
    spec.eps = cfg.grid[p];
    spec.seed = job_seed(cfg.seed, p, r);
    const HsbmSample s = sample_symmetric(spec);
    if (cfg.run_bh) {
      try {
        const BhOutcome o = run_bh(s.graph, s.planted, sopts);
        bh[job] = o.ami;
        qhat[job] = o.q_hat;
      } catch (const std::exception& e) {
        failed[job] = 1;
        std::cerr << "eps sweep: BH run eps=" << cfg.grid[p] << " rep=" << r << " failed: " << e.what() << '\n';
      }
    }
    if (cfg.run_bp) {
      BpConfig bcfg = cfg.bp;
      bcfg.seed = mix64(spec.seed ^ 0xb9ULL);
      const BpResult res = bp_run(s.graph, cfg.q, resolve_rates(spec), bcfg, &s.planted);
      bp[job] = ami(res.labels, s.planted);
    }
  });

  EpsSweepResult out;
  std::vector<double> mbh;
  std::vector<double> mbp;
  for (std::size_t p = 0; p < points; ++p) {
    EpsSweepRow row;
    row.eps = cfg.grid[p];
    const auto slice = [&](const std::vector<double>& v) {
      return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(p * reps), v.begin() + static_cast<std::ptrdiff_t>((p + 1) * reps));
    };
    row.bh = summarize(slice(bh));
    row.bp = summarize(slice(bp));
    double qsum = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      qsum += qhat[p * reps + r];
      row.bh_failures += failed[p * reps + r];
    }
    row.mean_q_hat = qsum / static_cast<double>(reps);
    out.rows.push_back(row);
    mbh.push_back(row.bh.mean);
    mbp.push_back(row.bp.mean);
  }
  std::vector<double> xs(cfg.grid.begin(), cfg.grid.end());
  if (cfg.run_bh) out.transition_bh = transition_point(xs, mbh);
  if (cfg.run_bp) out.transition_bp = transition_point(xs, mbp);
  out.snr = snr_report(cfg.q, cfg.orders, cfg.d, 0.0);
  return out;
}

SwitchSweepResult run_switch_sweep(const SwitchSweepConfig& cfg) {
  if (cfg.grid.empty()) throw std::invalid_argument("switch sweep: empty grid");
  if (cfg.reps < 1) throw std::invalid_argument("switch sweep: reps must be >= 1");
  const std::size_t points = cfg.grid.size();
  const std::size_t reps = static_cast<std::size_t>(cfg.reps);
  std::vector<double> a01(points * reps, kNaN);
  std::vector<double> a02(points * reps, kNaN);
  SpectralOptions sopts = cfg.spectral;
  sopts.fixed_q = 2;

  parallel_for(points * reps, cfg.threads, [&](std::size_t job) {
    const std::size_t p = job / reps;
    const std::size_t r = job % reps;
    const auto spec = cfg.experiment.preset(cfg.n, cfg.d, cfg.grid[p], job_seed(cfg.seed, p, r));
    const HsbmSample s = sample_planted(spec);
    try {
      const SpectralResult res = cluster(s.graph, sopts);
      a01[job] = ami(res.labels, coarsen(s.planted, kSplit01_23));
      a02[job] = ami(res.labels, coarsen(s.planted, kSplit02_13));
    } catch (const std::exception& e) {
      std::cerr << "switch sweep: rho=" << cfg.grid[p] << " rep=" << r << " failed: " << e.what() << '\n';
    }
  });

  SwitchSweepResult out;
  std::vector<double> diff;
  for (std::size_t p = 0; p < points; ++p) {
    SwitchSweepRow row;
    row.rho = cfg.grid[p];
    std::vector<double> v01(a01.begin() + static_cast<std::ptrdiff_t>(p * reps), a01.begin() + static_cast<std::ptrdiff_t>((p + 1) * reps));
    std::vector<double> v02(a02.begin() + static_cast<std::ptrdiff_t>(p * reps), a02.begin() + static_cast<std::ptrdiff_t>((p + 1) * reps));
    row.ami_01_23 = summarize(v01);
    row.ami_02_13 = summarize(v02);
    for (double v : v01) row.failures += std::isnan(v) ? 1 : 0;
    out.rows.push_back(row);
    diff.push_back(row.ami_01_23.mean - row.ami_02_13.mean);
  }
  out.crossing = first_crossing(cfg.grid, diff);
  out.rho_raw = switching_rho(cfg.experiment, false);
  out.rho_adjusted = switching_rho(cfg.experiment, true);
  return out;
}

SpectrumResult run_spectrum(const SpectrumConfig& cfg) {
  const HsbmSample s = sample_symmetric(cfg.model);
  SpectrumResult r;
  r.bulk_radius = select_eta(s.graph);
  if (cfg.with_nb) {
    if (cfg.model.n > 300) throw std::invalid_argument("spectrum: the non-backtracking part needs n <= 300");
    const auto nb = build_nonbacktracking(s.graph);
    const auto sp = nb_spectrum(nb);
    r.nb_eigenvalues.assign(sp.values.data(), sp.values.data() + sp.values.size());
    r.nb_real_outside = real_eigenvalues_outside(sp.values, r.bulk_radius);
    for (double v : r.nb_real_outside) r.nb_real_above += v > 0 ? 1 : 0;
  }
  const BetheHessian bh = build_bethe_hessian(s.graph, r.bulk_radius);
  const double tol = 1e-8 * bh.matrix.max_abs_diagonal();
  if (s.graph.num_nodes() <= 2000) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(bh.matrix.to_dense(), Eigen::EigenvaluesOnly);
    r.bh_eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    for (double v : r.bh_eigenvalues) r.bh_negative += v < -tol ? 1 : 0;
  } else {
    const auto neg = negative_spectrum(bh.matrix, tol);
    r.bh_eigenvalues = neg.pairs.values;
    r.bh_negative = neg.count;
  }
  for (double eta : cfg.eta_grid) {
    const BetheHessian b = build_bethe_hessian(s.graph, eta);
    r.negative_by_eta.emplace_back(eta, count_negative(b.matrix));
  }
  return r;
}

EmpiricalResult run_empirical(const EmpiricalConfig& cfg) {
  LoadedHypergraph lh = load_hyperedge_list(cfg.edges, {cfg.merge_duplicates});
  EmpiricalResult r;
  r.tokens = lh.tokens;
  r.dropped_lines = lh.dropped_lines;
  r.spectral = cluster(lh.graph, cfg.spectral);
  r.detected_composition = hyperedge_composition(lh.graph, r.spectral.labels);
  if (cfg.labels) {
    NamedLabels nl = load_named_labels(*cfg.labels, lh.tokens);
    if (nl.missing > 0) {
      // Unlabelled nodes get their own class so the contingency stays total.
      const int extra = static_cast<int>(nl.names.size());
      for (int& v : nl.labels) {
        if (v < 0) v = extra;
      }
      nl.names.emplace_back("<unlabelled>");
    }
    r.truth = Partition(nl.labels, static_cast<int>(nl.names.size()));
    r.truth_names = nl.names;
    r.ami_vs_truth = ami(r.spectral.labels, *r.truth);
    r.confusion = confusion(*r.truth, r.spectral.labels, true);
    r.truth_composition = hyperedge_composition(lh.graph, *r.truth);
  }
  return r;
}

void write_eps_sweep_csv(const std::filesystem::path& path, const EpsSweepResult& r) {
  auto out = open_csv(path);
  out << "eps,ami_bh_mean,ami_bh_se,ami_bp_mean,ami_bp_se,mean_q_hat,bh_runs,bp_runs\n";
  for (const auto& row : r.rows) {
    out << row.eps << ',' << row.bh.mean << ',' << row.bh.se << ',' << row.bp.mean << ',' << row.bp.se << ','
        << row.mean_q_hat << ',' << row.bh.count << ',' << row.bp.count << '\n';
  }
}

void write_switch_sweep_csv(const std::filesystem::path& path, const SwitchSweepResult& r) {
  auto out = open_csv(path);
  out << "rho,ami_01_23_mean,ami_01_23_se,ami_02_13_mean,ami_02_13_se,runs\n";
  for (const auto& row : r.rows) {
    out << row.rho << ',' << row.ami_01_23.mean << ',' << row.ami_01_23.se << ',' << row.ami_02_13.mean << ','
        << row.ami_02_13.se << ',' << row.ami_01_23.count << '\n';
  }
}

void write_confusion_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                         const std::vector<std::string>& row_names) {
  auto out = open_csv(path);
  out << "row";
  for (Eigen::Index c = 0; c < m.cols(); ++c) out << ",c" << c;
  out << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (static_cast<std::size_t>(r) < row_names.size()) {
      out << row_names[static_cast<std::size_t>(r)];
    } else {
      out << r;
    }
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << ',' << m(r, c);
    out << '\n';
  }
}

void write_composition_csv(const std::filesystem::path& path, const CompositionHistogram& h) {
  auto out = open_csv(path);
  out << "order,max_same_community,count\n";
  for (const auto& [k, hist] : h.by_order) {
    for (std::size_t m = 0; m < hist.size(); ++m) out << k << ',' << m << ',' << hist[m] << '\n';
  }
}

void write_marginals_csv(const std::filesystem::path& path, const std::vector<double>& marginals, std::size_t n, int q) {
  auto out = open_csv(path);
  out << "node";
  for (int p = 0; p < q; ++p) out << ",p" << p;
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out << i;
    for (int p = 0; p < q; ++p) out << ',' << marginals[i * static_cast<std::size_t>(q) + static_cast<std::size_t>(p)];
    out << '\n';
  }
}

namespace {
json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
}  // namespace

json to_json(const SnrReport& r) {
  json orders = json::array();
  for (const auto& od : r.orders) {
    orders.push_back({{"order", od.order}, {"d_in", od.d_in}, {"d_out", od.d_out}, {"d", od.d}});
  }
  return {{"q", r.q},
          {"c_in", r.rates.c_in},
          {"c_out", r.rates.c_out},
          {"orders", orders},
          {"d", r.d},
          {"kappa_hat", r.kappa_hat},
          {"snr_bh", r.snr_bh},
          {"snr_bp", r.snr_bp},
          {"snr_bp_zero_factor", r.bp_zero_factor},
          {"eps_star_bh", optional_json(r.eps_bh)},
          {"eps_star_bp", optional_json(r.eps_bp)}};
}

json to_json(const EpsSweepResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"eps", row.eps},
                    {"ami_bh", finite_or_null(row.bh.mean)},
                    {"ami_bh_se", finite_or_null(row.bh.se)},
                    {"ami_bp", finite_or_null(row.bp.mean)},
                    {"ami_bp_se", finite_or_null(row.bp.se)},
                    {"mean_q_hat", row.mean_q_hat},
                    {"bh_failures", row.bh_failures}});
  }
  return {{"rows", rows},
          {"snr", to_json(r.snr)},
          {"transition_bh", optional_json(r.transition_bh)},
          {"transition_bp", optional_json(r.transition_bp)}};
}

json to_json(const SwitchSweepResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"rho", row.rho},
                    {"ami_01_23", finite_or_null(row.ami_01_23.mean)},
                    {"ami_02_13", finite_or_null(row.ami_02_13.mean)},
                    {"failures", row.failures}});
  }
  return {{"rows", rows}, {"rho_raw", r.rho_raw}, {"rho_adjusted", r.rho_adjusted}, {"crossing", optional_json(r.crossing)}};
}

json to_json(const SpectrumResult& r) {
  json nb = json::array();
  for (const auto& z : r.nb_eigenvalues) nb.push_back({z.real(), z.imag()});
  json by_eta = json::array();
  for (const auto& [eta, count] : r.negative_by_eta) by_eta.push_back({{"eta", eta}, {"negative", count}});
  return {{"bulk_radius", r.bulk_radius},
          {"nb_eigenvalues", nb},
          {"nb_real_outside_bulk", r.nb_real_outside},
          {"nb_real_above_bulk", r.nb_real_above},
          {"bh_eigenvalues", r.bh_eigenvalues},
          {"bh_negative", r.bh_negative},
          {"negative_by_eta", by_eta}};
}

json to_json(const SpectralResult& r) {
  return {{"eta", r.eta}, {"eigenvalues", r.eigenvalues}, {"q_hat", r.q_hat}, {"q", r.labels.q}, {"labels", r.labels.labels}};
}

SymmetricHsbmSpec symmetric_spec_from_json(const json& j) {
  check_keys(j, {"n", "q", "orders", "mode", "values", "seed"}, "model");
  SymmetricHsbmSpec s;
  s.n = j.at("n").get<std::size_t>();
  s.q = j.at("q").get<int>();
  s.orders = j.at("orders").get<std::vector<int>>();
  read_if(j, "seed", s.seed);
  const std::string mode = j.value("mode", "degree-eps");
  const json& v = j.at("values");
  if (mode == "rates") {
    check_keys(v, {"c_in", "c_out"}, "model.values");
    s.mode = SymmetricHsbmSpec::Mode::rates;
    s.rates = {v.at("c_in").get<double>(), v.at("c_out").get<double>()};
  } else if (mode == "degree-eps") {
    check_keys(v, {"d", "eps"}, "model.values");
    s.mode = SymmetricHsbmSpec::Mode::degree_eps;
    s.d = v.at("d").get<double>();
    s.eps = v.at("eps").get<double>();
  } else {
    throw std::invalid_argument("model: mode must be 'rates' or 'degree-eps' here, got '" + mode + "'");
  }
  return s;
}

SpectralOptions spectral_options_from_json(const json& j) {
  check_keys(j, {"eta", "q", "tolerance", "negative_tol", "row_normalize", "kmeans_restarts", "kmeans_max_iter",
                 "kmeans_seed", "eigen_seed", "dense_cutoff", "max_restarts"},
             "spectral");
  SpectralOptions o;
  if (j.contains("eta")) o.eta = j.at("eta").get<double>();
  if (j.contains("q") && !j.at("q").is_string()) o.fixed_q = j.at("q").get<int>();
  read_if(j, "tolerance", o.eigen.tol);
  read_if(j, "negative_tol", o.negative_tol);
  read_if(j, "row_normalize", o.row_normalize);
  read_if(j, "kmeans_restarts", o.kmeans.restarts);
  read_if(j, "kmeans_max_iter", o.kmeans.max_iter);
  read_if(j, "kmeans_seed", o.kmeans.seed);
  read_if(j, "eigen_seed", o.eigen.seed);
  read_if(j, "dense_cutoff", o.eigen.dense_cutoff);
  read_if(j, "max_restarts", o.eigen.max_restarts);
  return o;
}

BpConfig bp_config_from_json(const json& j) {
  check_keys(j, {"max_sweeps", "tol", "damping", "init", "noise", "seed"}, "bp");
  BpConfig c;
  read_if(j, "max_sweeps", c.max_sweeps);
  read_if(j, "tol", c.tol);
  read_if(j, "damping", c.damping);
  read_if(j, "noise", c.noise);
  read_if(j, "seed", c.seed);
  if (j.contains("init")) {
    const std::string init = j.at("init").get<std::string>();
    if (init == "random") {
      c.init = BpConfig::Init::random;
    } else if (init == "uniform") {
      c.init = BpConfig::Init::uniform;
    } else if (init == "planted") {
      c.init = BpConfig::Init::planted;
    } else {
      throw std::invalid_argument("bp: unknown init '" + init + "'");
    }
  }
  c.validate();
  return c;
}

EpsSweepConfig eps_sweep_from_json(const json& j) {
  check_keys(j, {"experiment", "model", "grid", "reps", "seed", "methods", "bh_q", "spectral", "bp", "threads"},
             "eps-sweep");
  EpsSweepConfig c;
  const json& m = j.at("model");
  check_keys(m, {"n", "q", "orders", "d"}, "eps-sweep.model");
  c.n = m.at("n").get<std::size_t>();
  c.q = m.at("q").get<int>();
  c.orders = m.at("orders").get<std::vector<int>>();
  c.d = m.at("d").get<double>();
  c.grid = j.at("grid").get<std::vector<double>>();
  read_if(j, "reps", c.reps);
  read_if(j, "seed", c.seed);
  read_if(j, "threads", c.threads);
  if (j.contains("methods")) {
    c.run_bh = c.run_bp = false;
    for (const auto& name : j.at("methods").get<std::vector<std::string>>()) {
      if (name == "BH") {
        c.run_bh = true;
      } else if (name == "BP") {
        c.run_bp = true;
      } else {
        throw std::invalid_argument("eps-sweep: unknown method '" + name + "'");
      }
    }
  }
  if (j.contains("bh_q")) {
    const std::string v = j.at("bh_q").get<std::string>();
    if (v != "auto" && v != "planted") throw std::invalid_argument("eps-sweep: bh_q must be 'auto' or 'planted'");
    c.bh_fixed_q = v == "planted";
  }
  if (j.contains("spectral")) c.spectral = spectral_options_from_json(j.at("spectral"));
  if (j.contains("bp")) c.bp = bp_config_from_json(j.at("bp"));
  return c;
}

SwitchSweepConfig switch_sweep_from_json(const json& j, SwitchExperiment::Kind default_kind) {
  check_keys(j, {"experiment", "model", "grid", "reps", "seed", "spectral", "threads"}, "switch sweep");
  SwitchSweepConfig c;
  c.experiment.kind = default_kind;
  if (j.contains("experiment")) {
    const auto e = j.at("experiment").get<std::string>();
    if (e == "order") {
      c.experiment.kind = SwitchExperiment::Kind::order;
    } else if (e == "shape4") {
      c.experiment.kind = SwitchExperiment::Kind::shape4;
    } else if (e == "shape5") {
      c.experiment.kind = SwitchExperiment::Kind::shape5;
    } else if (e != "shape" && e != "switch") {
      throw std::invalid_argument("switch sweep: unknown experiment '" + e + "'");
    }
  }
  const json& m = j.at("model");
  check_keys(m, {"n", "d", "shape", "k", "k_star"}, "switch sweep.model");
  c.n = m.at("n").get<std::size_t>();
  c.d = m.at("d").get<double>();
  if (m.contains("shape")) {
    const int shape = m.at("shape").get<int>();
    if (shape == 4) {
      c.experiment.kind = SwitchExperiment::Kind::shape4;
    } else if (shape == 5) {
      c.experiment.kind = SwitchExperiment::Kind::shape5;
    } else {
      throw std::invalid_argument("switch sweep: shape must be 4 or 5");
    }
  }
  read_if(m, "k", c.experiment.k);
  read_if(m, "k_star", c.experiment.k_star);
  c.grid = j.at("grid").get<std::vector<double>>();
  read_if(j, "reps", c.reps);
  read_if(j, "seed", c.seed);
  read_if(j, "threads", c.threads);
  if (j.contains("spectral")) c.spectral = spectral_options_from_json(j.at("spectral"));
  return c;
}

SpectrumConfig spectrum_from_json(const json& j) {
  check_keys(j, {"experiment", "model", "eta_grid", "nb"}, "spectrum");
  SpectrumConfig c;
  c.model = symmetric_spec_from_json(j.at("model"));
  read_if(j, "eta_grid", c.eta_grid);
  read_if(j, "nb", c.with_nb);
  return c;
}

}  // namespace hyperbh
