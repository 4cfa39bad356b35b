// Batch front end: generate, detect, score and sweep.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperbh/harness.hpp"
#include "hyperbh/io.hpp"
#include "hyperbh/nonbacktracking.hpp"
#include "hyperbh/simd.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hyperbh;

namespace {

struct Global {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  int threads = 1;
  std::string isa;
};

json read_config(const Global& g) {
  if (g.config.empty()) return json::object();
  std::ifstream in(g.config);
  if (!in) throw std::runtime_error("cannot read config " + g.config);
  return json::parse(in, nullptr, true, /*ignore_comments=*/true);
}

fs::path out_path(const Global& g, const std::string& name) {
  fs::create_directories(g.out);
  return fs::path(g.out) / name;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::vector<std::string> index_tokens(std::size_t n) {
  std::vector<std::string> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = std::to_string(i);
  return t;
}

// First-column tokens of a "token label" file, in file order.
std::vector<std::string> first_column(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::string> tokens;
  for (std::string line; std::getline(in, line);) {
    std::istringstream ss(line);
    std::string tok;
    if ((ss >> tok) && tok[0] != '#') tokens.push_back(tok);
  }
  return tokens;
}

std::vector<double> parse_grid(const std::string& s) {
  // "a:b:step" or "v1,v2,..."
  std::vector<double> grid;
  if (s.find(':') != std::string::npos) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(s);
    if (!(ss >> a >> c1 >> b >> c2 >> step) || step <= 0) throw std::invalid_argument("bad grid '" + s + "'");
    const int count = static_cast<int>(std::floor((b - a) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) grid.push_back(a + i * step);
  } else {
    std::istringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) grid.push_back(std::stod(tok));
  }
  if (grid.empty()) throw std::invalid_argument("empty grid");
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community detection in non-uniform hypergraphs"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--config", g.config, "JSON config file");
  app.add_option("--seed", g.seed, "Base RNG seed (overrides the config)");
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads for sweeps")->capture_default_str();
  app.add_option("--isa", g.isa, "Force the SIMD kernels: scalar, avx2 or neon");

  // generate
  auto* gen = app.add_subcommand("generate", "Sample a hypergraph from the HSBM");
  std::size_t gen_n = 1000;
  int gen_q = 2;
  std::vector<int> gen_orders{3};
  double gen_d = 10, gen_eps = 0.1, gen_rho = 1.0;
  std::optional<double> gen_cin, gen_cout;
  std::string gen_preset;
  int gen_k = 2, gen_kstar = 3;
  gen->add_option("--n", gen_n);
  gen->add_option("--q", gen_q);
  gen->add_option("--orders", gen_orders)->delimiter(',');
  gen->add_option("--d", gen_d, "Target mean degree");
  gen->add_option("--eps", gen_eps, "c_out / c_in");
  gen->add_option("--c-in", gen_cin);
  gen->add_option("--c-out", gen_cout);
  gen->add_option("--preset", gen_preset, "shape4, shape5 or order")->check(CLI::IsMember({"shape4", "shape5", "order"}));
  gen->add_option("--rho", gen_rho);
  gen->add_option("--k", gen_k);
  gen->add_option("--k-star", gen_kstar);

  // cluster
  auto* clu = app.add_subcommand("cluster", "Bethe Hessian spectral clustering");
  std::string clu_edges;
  std::optional<int> clu_q;
  std::optional<double> clu_eta, clu_tol;
  bool clu_merge = false;
  clu->add_option("--edges", clu_edges, "Hyperedge list")->required();
  clu->add_option("--q", clu_q, "Fixed number of communities (default: count of negative eigenvalues)");
  clu->add_option("--eta", clu_eta);
  clu->add_option("--tol", clu_tol, "Eigensolver tolerance");
  clu->add_flag("--merge-duplicates", clu_merge);

  // bp
  auto* bp = app.add_subcommand("bp", "Belief propagation with known rates");
  std::string bp_edges, bp_labels, bp_init = "random";
  int bp_q = 2;
  double bp_cin = 0, bp_cout = 0, bp_damping = 0, bp_tol = 1e-6;
  int bp_sweeps = 500;
  bp->add_option("--edges", bp_edges)->required();
  bp->add_option("--q", bp_q)->required();
  bp->add_option("--c-in", bp_cin)->required();
  bp->add_option("--c-out", bp_cout)->required();
  bp->add_option("--labels", bp_labels, "Planted partition, for init=planted and scoring");
  bp->add_option("--init", bp_init)->check(CLI::IsMember({"random", "uniform", "planted"}));
  bp->add_option("--damping", bp_damping);
  bp->add_option("--tol", bp_tol);
  bp->add_option("--max-sweeps", bp_sweeps);

  // snr
  auto* snr = app.add_subcommand("snr", "Detectability report for the symmetric model");
  int snr_q = 2;
  std::vector<int> snr_orders{3};
  double snr_d = 10, snr_eps = 0;
  snr->add_option("--q", snr_q);
  snr->add_option("--orders", snr_orders)->delimiter(',');
  snr->add_option("--d", snr_d);
  snr->add_option("--eps", snr_eps);

  // sweeps
  auto* seps = app.add_subcommand("sweep-eps", "AMI versus eps for BH and BP");
  std::string seps_grid = "0:1:0.05";
  int seps_reps = 20;
  std::size_t seps_n = 3000;
  int seps_q = 2;
  std::vector<int> seps_orders{3};
  double seps_d = 10;
  std::vector<std::string> seps_methods{"BH"};
  seps->add_option("--grid", seps_grid, "a:b:step or comma list");
  seps->add_option("--reps", seps_reps);
  seps->add_option("--n", seps_n);
  seps->add_option("--q", seps_q);
  seps->add_option("--orders", seps_orders)->delimiter(',');
  seps->add_option("--d", seps_d);
  seps->add_option("--methods", seps_methods)->delimiter(',')->check(CLI::IsMember({"BH", "BP"}));

  auto* sshape = app.add_subcommand("sweep-shape", "Shape-preference sweep over rho");
  auto* sorder = app.add_subcommand("sweep-order", "Order-preference sweep over rho");
  std::string sw_grid = "0.5:3:0.1";
  int sw_reps = 10, sw_shape = 4, sw_k = 2, sw_kstar = 3;
  std::size_t sw_n = 2000;
  double sw_d = 10;
  for (auto* sub : {sshape, sorder}) {
    sub->add_option("--grid", sw_grid, "a:b:step or comma list");
    sub->add_option("--reps", sw_reps);
    sub->add_option("--n", sw_n);
    sub->add_option("--d", sw_d);
  }
  sshape->add_option("--shape", sw_shape)->check(CLI::IsMember({4, 5}));
  sorder->add_option("--k", sw_k);
  sorder->add_option("--k-star", sw_kstar);

  auto* spec = app.add_subcommand("spectrum", "Non-backtracking and Bethe Hessian spectra of one sample");
  std::size_t sp_n = 100;
  int sp_q = 2;
  std::vector<int> sp_orders{3};
  double sp_cin = 0, sp_cout = 0;
  std::string sp_eta_grid;
  spec->add_option("--n", sp_n);
  spec->add_option("--q", sp_q);
  spec->add_option("--orders", sp_orders)->delimiter(',');
  spec->add_option("--c-in", sp_cin);
  spec->add_option("--c-out", sp_cout);
  spec->add_option("--eta-grid", sp_eta_grid);

  auto* emp = app.add_subcommand("empirical", "Cluster a dataset and compare with metadata");
  std::string emp_edges, emp_labels;
  std::optional<int> emp_q;
  bool emp_merge = false;
  emp->add_option("--edges", emp_edges)->required();
  emp->add_option("--labels", emp_labels);
  emp->add_option("--q", emp_q);
  emp->add_flag("--merge-duplicates", emp_merge);

  auto* ev = app.add_subcommand("eval", "AMI and confusion between two partition files");
  std::string ev_a, ev_b;
  ev->add_option("a", ev_a)->required();
  ev->add_option("b", ev_b)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!g.isa.empty()) simd::set_isa(simd::parse_isa(g.isa));
    const json cfg = read_config(g);

    if (*gen) {
      HsbmSample s;
      if (cfg.contains("patterns") || cfg.value("mode", "") == "patterns") {
        PlantedPatternSpec ps;
        ps.n = cfg.at("n").get<std::size_t>();
        ps.q = cfg.at("q").get<int>();
        for (const auto& p : cfg.at("values")) {
          ps.patterns.push_back({p.at("order").get<int>(), p.at("composition").get<std::vector<int>>(),
                                 p.at("rate").get<double>()});
        }
        ps.seed = g.seed.value_or(cfg.value("seed", std::uint64_t{0}));
        s = sample_planted(ps);
      } else if (!gen_preset.empty()) {
        const std::uint64_t seed = g.seed.value_or(0);
        const PlantedPatternSpec ps = gen_preset == "shape4"   ? presets::shape4(gen_n, gen_d, gen_rho, seed)
                                      : gen_preset == "shape5" ? presets::shape5(gen_n, gen_d, gen_rho, seed)
                                                               : presets::order(gen_n, gen_k, gen_kstar, gen_d, gen_rho, seed);
        s = sample_planted(ps);
      } else {
        SymmetricHsbmSpec ss;
        if (!cfg.empty()) {
          ss = symmetric_spec_from_json(cfg);
        } else {
          ss.n = gen_n;
          ss.q = gen_q;
          ss.orders = gen_orders;
          if (gen_cin || gen_cout) {
            ss.mode = SymmetricHsbmSpec::Mode::rates;
            ss.rates = {gen_cin.value_or(0.0), gen_cout.value_or(0.0)};
          } else {
            ss.d = gen_d;
            ss.eps = gen_eps;
          }
        }
        if (g.seed) ss.seed = *g.seed;
        s = sample_symmetric(ss);
        const Rates r = resolve_rates(ss);
        std::cout << "c_in " << r.c_in << " c_out " << r.c_out << '\n';
      }
      const auto tokens = index_tokens(s.graph.num_nodes());
      save_hyperedge_list(out_path(g, "hypergraph.txt"), s.graph, tokens);
      save_partition(out_path(g, "planted.txt"), s.planted, tokens);
      std::cout << "nodes " << s.graph.num_nodes() << " hyperedges " << s.graph.num_edges() << '\n';
    } else if (*clu) {
      SpectralOptions o = cfg.contains("spectral") ? spectral_options_from_json(cfg.at("spectral")) : SpectralOptions{};
      if (clu_q) o.fixed_q = *clu_q;
      if (clu_eta) o.eta = *clu_eta;
      if (clu_tol) o.eigen.tol = *clu_tol;
      if (g.seed) o.kmeans.seed = *g.seed;
      const auto lh = load_hyperedge_list(clu_edges, {clu_merge});
      const SpectralResult r = cluster(lh.graph, o);
      save_partition(out_path(g, "partition.txt"), r.labels, lh.tokens);
      write_json(out_path(g, "spectral.json"), to_json(r));
      std::cout << "eta " << r.eta << " q_hat " << r.q_hat << " q " << r.labels.q << '\n';
    } else if (*bp) {
      BpConfig c = cfg.contains("bp") ? bp_config_from_json(cfg.at("bp")) : BpConfig{};
      c.damping = bp_damping;
      c.tol = bp_tol;
      c.max_sweeps = bp_sweeps;
      c.init = bp_init == "planted" ? BpConfig::Init::planted
               : bp_init == "uniform" ? BpConfig::Init::uniform
                                      : BpConfig::Init::random;
      if (g.seed) c.seed = *g.seed;
      c.validate();
      const auto lh = load_hyperedge_list(bp_edges);
      std::optional<Partition> truth;
      if (!bp_labels.empty()) truth = load_partition(bp_labels, lh.tokens);
      if (c.init == BpConfig::Init::planted && !truth) throw std::invalid_argument("--init planted needs --labels");
      const BpResult r = bp_run(lh.graph, bp_q, {bp_cin, bp_cout}, c, truth ? &*truth : nullptr);
      save_partition(out_path(g, "partition.txt"), r.labels, lh.tokens);
      write_marginals_csv(out_path(g, "marginals.csv"), r.marginals, lh.graph.num_nodes(), bp_q);
      json rep{{"sweeps", r.sweeps}, {"converged", r.converged}, {"last_delta", r.last_delta}};
      if (truth) rep["ami"] = ami(r.labels, *truth);
      write_json(out_path(g, "bp.json"), rep);
      std::cout << rep.dump() << '\n';
    } else if (*snr) {
      const SnrReport r = snr_report(snr_q, snr_orders, snr_d, snr_eps);
      const json j = to_json(r);
      write_json(out_path(g, "snr.json"), j);
      std::cout << j.dump(2) << '\n';
    } else if (*seps) {
      EpsSweepConfig c;
      if (!cfg.empty()) {
        c = eps_sweep_from_json(cfg);
      } else {
        c.n = seps_n;
        c.q = seps_q;
        c.orders = seps_orders;
        c.d = seps_d;
        c.grid = parse_grid(seps_grid);
        c.reps = seps_reps;
        c.run_bh = c.run_bp = false;
        for (const auto& m : seps_methods) (m == "BH" ? c.run_bh : c.run_bp) = true;
      }
      if (g.seed) c.seed = *g.seed;
      c.threads = g.threads;
      const EpsSweepResult r = run_eps_sweep(c);
      write_eps_sweep_csv(out_path(g, "eps_sweep.csv"), r);
      write_json(out_path(g, "eps_sweep.json"), to_json(r));
      std::cout << to_json(r).dump(2) << '\n';
    } else if (*sshape || *sorder) {
      const auto default_kind = *sorder ? SwitchExperiment::Kind::order
                                : sw_shape == 5 ? SwitchExperiment::Kind::shape5
                                                : SwitchExperiment::Kind::shape4;
      SwitchSweepConfig c;
      if (!cfg.empty()) {
        c = switch_sweep_from_json(cfg, default_kind);
      } else {
        c.experiment.kind = default_kind;
        c.experiment.k = sw_k;
        c.experiment.k_star = sw_kstar;
        c.n = sw_n;
        c.d = sw_d;
        c.grid = parse_grid(sw_grid);
        c.reps = sw_reps;
      }
      if (g.seed) c.seed = *g.seed;
      c.threads = g.threads;
      const SwitchSweepResult r = run_switch_sweep(c);
      const std::string stem = *sorder ? "order_sweep" : "shape_sweep";
      write_switch_sweep_csv(out_path(g, stem + ".csv"), r);
      write_json(out_path(g, stem + ".json"), to_json(r));
      std::cout << to_json(r).dump(2) << '\n';
    } else if (*spec) {
      SpectrumConfig c;
      if (!cfg.empty()) {
        c = spectrum_from_json(cfg);
      } else {
        c.model.n = sp_n;
        c.model.q = sp_q;
        c.model.orders = sp_orders;
        c.model.mode = SymmetricHsbmSpec::Mode::rates;
        c.model.rates = {sp_cin, sp_cout};
        if (!sp_eta_grid.empty()) c.eta_grid = parse_grid(sp_eta_grid);
      }
      if (g.seed) c.model.seed = *g.seed;
      const SpectrumResult r = run_spectrum(c);
      write_json(out_path(g, "spectrum.json"), to_json(r));
      std::cout << "bulk radius " << r.bulk_radius << " real NB above " << r.nb_real_above
                << " negative BH " << r.bh_negative << '\n';
    } else if (*emp) {
      EmpiricalConfig c;
      c.edges = emp_edges;
      if (!emp_labels.empty()) c.labels = emp_labels;
      c.merge_duplicates = emp_merge;
      if (cfg.contains("spectral")) c.spectral = spectral_options_from_json(cfg.at("spectral"));
      if (emp_q) c.spectral.fixed_q = *emp_q;
      if (g.seed) c.spectral.kmeans.seed = *g.seed;
      const EmpiricalResult r = run_empirical(c);
      save_partition(out_path(g, "partition.txt"), r.spectral.labels, r.tokens);
      write_composition_csv(out_path(g, "composition_detected.csv"), r.detected_composition);
      json rep = to_json(r.spectral);
      rep.erase("labels");
      rep["dropped_lines"] = r.dropped_lines;
      if (r.truth) {
        write_confusion_csv(out_path(g, "confusion.csv"), *r.confusion, r.truth_names);
        write_composition_csv(out_path(g, "composition_truth.csv"), *r.truth_composition);
        rep["ami"] = *r.ami_vs_truth;
      }
      write_json(out_path(g, "empirical.json"), rep);
      std::cout << rep.dump(2) << '\n';
    } else if (*ev) {
      const auto tokens = first_column(ev_a);
      const NamedLabels a = load_named_labels(ev_a, tokens);
      const NamedLabels b = load_named_labels(ev_b, tokens);
      std::vector<int> la, lb;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (a.labels[i] >= 0 && b.labels[i] >= 0) {
          la.push_back(a.labels[i]);
          lb.push_back(b.labels[i]);
        }
      }
      if (la.empty()) throw std::runtime_error("eval: the partitions share no nodes");
      const Partition pa = Partition::from_labels(la);
      const Partition pb = Partition::from_labels(lb);
      write_confusion_csv(out_path(g, "confusion.csv"), confusion(pa, pb, true), a.names);
      const json rep{{"nodes", la.size()}, {"ami", ami(pa, pb)}};
      write_json(out_path(g, "eval.json"), rep);
      std::cout << rep.dump() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
