#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperbh/harness.hpp"
#include "hyperbh/io.hpp"

using namespace hyperbh;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const fs::path& p) {
  const auto s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("transition point needs the drop to persist") {
  const std::vector<double> x{0.1, 0.2, 0.3, 0.4, 0.5};
  CHECK(transition_point(x, {0.5, 0.01, 0.3, 0.01, 0.0}) == 0.4);
  CHECK(transition_point(x, {0.5, 0.2, 0.1, 0.05, 0.03}) == std::nullopt);
  CHECK(transition_point(x, {0.01, 0.01, 0.01, 0.0, 0.0}) == 0.1);
  CHECK(transition_point(x, {0.5, 0.3, 0.01, NAN, 0.0}) == 0.3);
}

TEST_CASE("first crossing interpolates linearly") {
  const std::vector<double> x{1, 2, 3, 4};
  CHECK(*first_crossing(x, {0.5, 0.25, -0.25, -0.5}) == doctest::Approx(2.5));
  CHECK(*first_crossing(x, {-1, 1, -1, 1}) == doctest::Approx(1.5));
  CHECK(*first_crossing(x, {1, 0, -1, -1}) == doctest::Approx(2.0));
  CHECK_FALSE(first_crossing(x, {1, 1, 1, 1}).has_value());
  CHECK(*first_crossing(x, {1, NAN, -1, -1}) == doctest::Approx(2.0));
}

TEST_CASE("summaries skip failed runs") {
  const auto s = summarize({1.0, NAN, 3.0});
  CHECK(s.count == 2);
  CHECK(s.mean == 2.0);
  CHECK(s.se == doctest::Approx(1.0));
  CHECK(std::isnan(summarize({NAN}).mean));
}

TEST_CASE("coarsening fine labels") {
  const Partition fine({0, 1, 2, 3, 2}, 4);
  CHECK(coarsen(fine, kSplit01_23).labels == std::vector<int>{0, 0, 1, 1, 1});
  CHECK(coarsen(fine, kSplit02_13).labels == std::vector<int>{0, 1, 0, 1, 0});
}

TEST_CASE("seeds differ across points and repetitions") {
  CHECK(job_seed(1, 0, 0) != job_seed(1, 0, 1));
  CHECK(job_seed(1, 0, 1) != job_seed(1, 1, 0));
  CHECK(job_seed(1, 2, 3) == job_seed(1, 2, 3));
  CHECK(job_seed(1, 2, 3) != job_seed(2, 2, 3));
}

TEST_CASE("parallel_for covers every job and rethrows") {
  std::vector<int> hit(100, 0);
  parallel_for(100, 4, [&](std::size_t i) { hit[i] += 1; });
  CHECK(std::all_of(hit.begin(), hit.end(), [](int v) { return v == 1; }));
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("eps sweep is deterministic, thread-count independent and sized by the grid") {
  EpsSweepConfig c;
  c.n = 400;
  c.q = 2;
  c.orders = {2, 3};
  c.d = 10;
  c.grid = {0.0, 0.2, 1.0};
  c.reps = 3;
  c.run_bp = true;
  c.bp.max_sweeps = 50;
  const auto a = run_eps_sweep(c);
  c.threads = 3;
  const auto b = run_eps_sweep(c);
  const auto dir = fs::temp_directory_path() / "hyperbh_harness_test";
  write_eps_sweep_csv(dir / "a.csv", a);
  write_eps_sweep_csv(dir / "b.csv", b);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(line_count(dir / "a.csv") == 1 + c.grid.size());
  CHECK(a.rows[0].bh.mean > 0.9);
  CHECK(std::abs(a.rows[2].bh.mean) < 0.05);
  CHECK(std::abs(a.rows[2].bp.mean) < 0.05);
  REQUIRE(a.snr.eps_bh);
  const json j = to_json(a);
  CHECK(j["rows"].size() == 3);
}

TEST_CASE("switch sweep reports both switching points") {
  SwitchSweepConfig c;
  c.experiment.kind = SwitchExperiment::Kind::shape4;
  c.n = 400;
  c.grid = {0.2, 5.0};
  c.reps = 2;
  const auto r = run_switch_sweep(c);
  CHECK(r.rho_raw == 4.0 / 3.0);
  CHECK(r.rows.size() == 2);
  CHECK(r.rows[0].ami_01_23.mean > r.rows[0].ami_02_13.mean);
  CHECK(r.rows[1].ami_01_23.mean < r.rows[1].ami_02_13.mean);
  REQUIRE(r.crossing);
  CHECK(*r.crossing > 0.2);
  CHECK(*r.crossing < 5.0);
}

TEST_CASE("spectrum dump") {
  SpectrumConfig c;
  c.model = {100, 2, {3}, SymmetricHsbmSpec::Mode::rates, {80.0, 8.0}, 0, 0, 1};
  c.eta_grid = {2.0, 4.0};
  const auto r = run_spectrum(c);
  CHECK(r.bh_eigenvalues.size() == 100);
  CHECK(r.nb_real_above == r.bh_negative);
  CHECK(r.nb_real_above == 2);
  CHECK(r.negative_by_eta.size() == 2);
  c.model.n = 400;
  CHECK_THROWS(run_spectrum(c));
  c.with_nb = false;
  CHECK_NOTHROW(run_spectrum(c));
}

TEST_CASE("empirical pipeline with and without labels") {
  SymmetricHsbmSpec s{300, 3, {2, 3, 4}, SymmetricHsbmSpec::Mode::degree_eps, {}, 12.0, 0.05, 2};
  const auto smp = sample_symmetric(s);
  const auto dir = fs::temp_directory_path() / "hyperbh_harness_test";
  fs::create_directories(dir);
  std::vector<std::string> tokens;
  for (int i = 0; i < 300; ++i) tokens.push_back("v" + std::to_string(i));
  save_hyperedge_list(dir / "edges.txt", smp.graph, tokens);
  {
    std::ofstream meta(dir / "meta.txt");
    for (int i = 0; i < 300; ++i) meta << tokens[i] << " class" << smp.planted.labels[i] << '\n';
  }
  EmpiricalConfig c;
  c.edges = dir / "edges.txt";
  const auto bare = run_empirical(c);
  CHECK_FALSE(bare.truth.has_value());
  CHECK_FALSE(bare.detected_composition.by_order.empty());
  c.labels = dir / "meta.txt";
  const auto r = run_empirical(c);
  REQUIRE(r.ami_vs_truth);
  CHECK(*r.ami_vs_truth > 0.8);
  CHECK(r.confusion->rows() == 3);
  CHECK(r.truth_names.size() == 3);
  write_confusion_csv(dir / "conf.csv", *r.confusion, r.truth_names);
  CHECK(line_count(dir / "conf.csv") == 4);
  write_composition_csv(dir / "comp.csv", r.detected_composition);
  CHECK(line_count(dir / "comp.csv") == 1 + 3 + 4 + 5);
}

TEST_CASE("config parsing rejects unknown keys") {
  const json good = json::parse(R"({"experiment": "eps-sweep", "model": {"n": 100, "q": 2, "orders": [3], "d": 10},
                                    "grid": [0.1, 0.2], "reps": 2, "methods": ["BH", "BP"], "bh_q": "planted",
                                    "spectral": {"kmeans_restarts": 5}, "bp": {"init": "uniform"}})");
  const auto c = eps_sweep_from_json(good);
  CHECK(c.run_bp);
  CHECK(c.bh_fixed_q);
  CHECK(c.spectral.kmeans.restarts == 5);
  CHECK(c.bp.init == BpConfig::Init::uniform);
  json bad = good;
  bad["gird"] = {0.1};
  CHECK_THROWS_AS(eps_sweep_from_json(bad), std::invalid_argument);
  bad = good;
  bad["model"]["eps"] = 0.3;
  CHECK_THROWS_AS(eps_sweep_from_json(bad), std::invalid_argument);
  bad = good;
  bad["methods"] = {"XX"};
  CHECK_THROWS(eps_sweep_from_json(bad));

  const auto m = symmetric_spec_from_json(json::parse(R"({"n": 50, "q": 2, "orders": [2, 3], "mode": "rates",
                                                          "values": {"c_in": 5, "c_out": 1}, "seed": 4})"));
  CHECK(m.mode == SymmetricHsbmSpec::Mode::rates);
  CHECK(m.rates.c_out == 1);
  CHECK_THROWS(symmetric_spec_from_json(json::parse(R"({"n": 50, "q": 2, "orders": [3], "mode": "bogus", "values": {}})")));

  const auto sw = switch_sweep_from_json(json::parse(R"({"model": {"n": 100, "d": 10, "shape": 5}, "grid": [1]})"),
                                         SwitchExperiment::Kind::shape4);
  CHECK(sw.experiment.kind == SwitchExperiment::Kind::shape5);
  CHECK_THROWS(switch_sweep_from_json(json::parse(R"({"model": {"n": 100, "d": 10, "shape": 6}, "grid": [1]})"),
                                      SwitchExperiment::Kind::shape4));
  const auto ex = switch_sweep_from_json(json::parse(R"({"experiment": "shape5", "model": {"n": 100, "d": 10}, "grid": [1]})"),
                                         SwitchExperiment::Kind::shape4);
  CHECK(ex.experiment.kind == SwitchExperiment::Kind::shape5);
  CHECK_THROWS(switch_sweep_from_json(json::parse(R"({"experiment": "shape6", "model": {"n": 100, "d": 10}, "grid": [1]})"),
                                      SwitchExperiment::Kind::shape4));
}
