#include "hyperbh/hsbm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace hyperbh {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t cell_seed(std::uint64_t seed, std::size_t cell) {
  return splitmix64(splitmix64(seed) ^ splitmix64(0x5bd1e995ULL + cell));
}

double factorial(int k) {
  double f = 1.0;
  for (int t = 2; t <= k; ++t) f *= t;
  return f;
}

// C(s, c) / n^c evaluated as a product of ratios.
double choose_over_power(std::size_t s, int c, double n) {
  double v = 1.0;
  for (int t = 0; t < c; ++t) v *= (static_cast<double>(s) - t) / n;
  return std::max(v, 0.0) / factorial(c);
}

// Floyd's algorithm: c distinct values from [0, s).
void draw_distinct(std::size_t s, int c, std::mt19937_64& rng, std::vector<std::size_t>& out) {
  out.clear();
  for (std::size_t j = s - static_cast<std::size_t>(c); j < s; ++j) {
    std::uniform_int_distribution<std::size_t> u(0, j);
    const std::size_t t = u(rng);
    if (std::find(out.begin(), out.end(), t) != out.end()) {
      out.push_back(j);
    } else {
      out.push_back(t);
    }
  }
}

void compositions_rec(int left, int q, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  const int slot = static_cast<int>(cur.size());
  if (slot == q - 1) {
    cur.push_back(left);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int c = left; c >= 0; --c) {
    cur.push_back(c);
    compositions_rec(left - c, q, cur, out);
    cur.pop_back();
  }
}

bool single_community(const std::vector<int>& comp, int k) {
  return std::any_of(comp.begin(), comp.end(), [k](int c) { return c == k; });
}

}  // namespace

void SymmetricHsbmSpec::validate() const {
  if (q < 2) throw std::invalid_argument("HSBM: q must be >= 2");
  if (n < static_cast<std::size_t>(q)) throw std::invalid_argument("HSBM: n must be >= q");
  if (orders.empty()) throw std::invalid_argument("HSBM: empty order set");
  const std::size_t smallest = n / static_cast<std::size_t>(q);
  for (int k : orders) {
    if (k < 2) throw std::invalid_argument("HSBM: orders must be >= 2");
    if (static_cast<std::size_t>(k) > smallest) {
      throw std::invalid_argument("HSBM: order " + std::to_string(k) + " exceeds block size " + std::to_string(smallest));
    }
  }
  if (mode == Mode::rates) {
    if (rates.c_in < 0 || rates.c_out < 0 || (rates.c_in == 0 && rates.c_out == 0)) {
      throw std::invalid_argument("HSBM: rates must be nonnegative and not both zero");
    }
  } else {
    if (!(d > 0)) throw std::invalid_argument("HSBM: target degree must be positive");
    if (eps < 0 || eps > 1) throw std::invalid_argument("HSBM: eps must lie in [0, 1]");
  }
}

void PlantedPatternSpec::validate() const {
  if (q < 1) throw std::invalid_argument("planted HSBM: q must be >= 1");
  const auto blocks = block_sizes(n, q);
  for (const auto& p : patterns) {
    if (p.order < 2) throw std::invalid_argument("planted HSBM: orders must be >= 2");
    if (static_cast<int>(p.composition.size()) != q) {
      throw std::invalid_argument("planted HSBM: composition length must equal q");
    }
    if (std::accumulate(p.composition.begin(), p.composition.end(), 0) != p.order) {
      throw std::invalid_argument("planted HSBM: composition does not sum to the order");
    }
    for (int b = 0; b < q; ++b) {
      if (p.composition[b] < 0 || static_cast<std::size_t>(p.composition[b]) > blocks[b]) {
        throw std::invalid_argument("planted HSBM: composition count exceeds block size");
      }
    }
    if (!(p.rate >= 0)) throw std::invalid_argument("planted HSBM: rates must be nonnegative");
  }
}

std::vector<std::size_t> block_sizes(std::size_t n, int q) {
  std::vector<std::size_t> s(static_cast<std::size_t>(q), n / static_cast<std::size_t>(q));
  for (std::size_t b = 0; b < n % static_cast<std::size_t>(q); ++b) ++s[b];
  return s;
}

Partition block_partition(std::size_t n, int q) {
  std::vector<int> labels;
  labels.reserve(n);
  const auto s = block_sizes(n, q);
  for (int b = 0; b < q; ++b) labels.insert(labels.end(), s[b], b);
  return Partition(std::move(labels), q);
}

std::vector<std::vector<int>> compositions(int k, int q) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compositions_rec(k, q, cur, out);
  return out;
}

double expected_pattern_count(std::size_t n, const std::vector<std::size_t>& blocks, const Pattern& p) {
  const double nd = static_cast<double>(n);
  double v = nd * p.rate;
  for (std::size_t b = 0; b < blocks.size(); ++b) v *= choose_over_power(blocks[b], p.composition[b], nd);
  return v;
}

Rates resolve_rates(const SymmetricHsbmSpec& spec) {
  spec.validate();
  if (spec.mode == SymmetricHsbmSpec::Mode::rates) return spec.rates;
  const double nd = static_cast<double>(spec.n);
  const auto blocks = block_sizes(spec.n, spec.q);
  // Mean degree = c_in * sum_k k/n^k [in_k + eps (all_k - in_k)], with in_k the
  // number of single-community k-sets and all_k = C(n, k).
  double denom = 0.0;
  for (int k : spec.orders) {
    double in = 0.0;
    for (std::size_t s : blocks) in += choose_over_power(s, k, nd);
    const double all = choose_over_power(spec.n, k, nd);
    denom += k * (in + spec.eps * (all - in));
  }
  if (!(denom > 0)) throw std::invalid_argument("resolve_rates: degenerate degree normalisation");
  const double c_in = spec.d / denom;
  return {c_in, spec.eps * c_in};
}

PlantedPatternSpec as_patterns(const SymmetricHsbmSpec& spec) {
  const Rates r = resolve_rates(spec);
  PlantedPatternSpec p;
  p.n = spec.n;
  p.q = spec.q;
  p.seed = spec.seed;
  std::vector<int> orders = spec.orders;
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  for (int k : orders) {
    for (auto& comp : compositions(k, spec.q)) {
      const double rate = single_community(comp, k) ? r.c_in : r.c_out;
      p.patterns.push_back({k, std::move(comp), rate});
    }
  }
  return p;
}

std::map<int, double> expected_order_counts(const SymmetricHsbmSpec& spec) {
  const auto p = as_patterns(spec);
  const auto blocks = block_sizes(spec.n, spec.q);
  std::map<int, double> m;
  for (const auto& pat : p.patterns) m[pat.order] += expected_pattern_count(spec.n, blocks, pat);
  return m;
}

HsbmSample sample_planted(const PlantedPatternSpec& spec) {
  spec.validate();
  const auto blocks = block_sizes(spec.n, spec.q);
  std::vector<std::size_t> offset(blocks.size(), 0);
  for (std::size_t b = 1; b < blocks.size(); ++b) offset[b] = offset[b - 1] + blocks[b - 1];

  std::vector<std::vector<Node>> edges;
  std::vector<std::size_t> pick;
  for (std::size_t cell = 0; cell < spec.patterns.size(); ++cell) {
    const Pattern& p = spec.patterns[cell];
    const double mean = expected_pattern_count(spec.n, blocks, p);
    if (mean <= 0) continue;
    std::mt19937_64 rng(cell_seed(spec.seed, cell));
    std::poisson_distribution<long long> pois(mean);
    const long long count = pois(rng);
    for (long long c = 0; c < count; ++c) {
      std::vector<Node> e;
      e.reserve(static_cast<std::size_t>(p.order));
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (p.composition[b] == 0) continue;
        draw_distinct(blocks[b], p.composition[b], rng, pick);
        for (std::size_t t : pick) e.push_back(static_cast<Node>(offset[b] + t));
      }
      edges.push_back(std::move(e));
    }
  }
  return {Hypergraph::from_edges(spec.n, edges), block_partition(spec.n, spec.q)};
}

HsbmSample sample_symmetric(const SymmetricHsbmSpec& spec) { return sample_planted(as_patterns(spec)); }

namespace presets {
namespace {

std::vector<int> comp4(int c0, int c1, int c2, int c3) { return {c0, c1, c2, c3}; }

void check_rho(double d, double rho) {
  if (!(d > 0) || !(rho >= 0) || !std::isfinite(rho)) {
    throw std::invalid_argument("preset: need d > 0 and finite rho >= 0");
  }
}

}  // namespace

PlantedPatternSpec shape4(std::size_t n, double d, double rho, std::uint64_t seed) {
  check_rho(d, rho);
  const double a = 6.0 * 16.0 * d * rho / (rho + 1.0);
  const double a_star = 2.0 * 64.0 * d / (rho + 1.0);
  PlantedPatternSpec s{n, 4, {}, seed};
  s.patterns = {{4, comp4(3, 0, 1, 0), a}, {4, comp4(1, 0, 3, 0), a},
                {4, comp4(0, 3, 0, 1), a}, {4, comp4(0, 1, 0, 3), a},
                {4, comp4(2, 2, 0, 0), a_star}, {4, comp4(0, 0, 2, 2), a_star}};
  return s;
}

PlantedPatternSpec shape5(std::size_t n, double d, double rho, std::uint64_t seed) {
  check_rho(d, rho);
  const double a = 256.0 * 24.0 * d * rho / (5.0 * (rho + 1.0));
  const double a_star = 256.0 * 12.0 * d / (5.0 * (rho + 1.0));
  PlantedPatternSpec s{n, 4, {}, seed};
  s.patterns = {{5, comp4(1, 0, 4, 0), a}, {5, comp4(4, 0, 1, 0), a},
                {5, comp4(0, 1, 0, 4), a}, {5, comp4(0, 4, 0, 1), a},
                {5, comp4(2, 3, 0, 0), a_star}, {5, comp4(3, 2, 0, 0), a_star},
                {5, comp4(0, 0, 2, 3), a_star}, {5, comp4(0, 0, 3, 2), a_star}};
  return s;
}

PlantedPatternSpec order(std::size_t n, int k, int k_star, double d, double rho, std::uint64_t seed) {
  check_rho(d, rho);
  if (k < 2 || k_star < 2) throw std::invalid_argument("order preset: orders must be >= 2");
  const double denom = k * rho + k_star;
  const double a = std::pow(4.0, k) * factorial(k) * d * rho / (2.0 * (std::pow(2.0, k) - 2.0) * denom);
  const double a_star = std::pow(4.0, k_star) * factorial(k_star) * d / (2.0 * (std::pow(2.0, k_star) - 2.0) * denom);
  PlantedPatternSpec s{n, 4, {}, seed};
  for (int j = 1; j < k; ++j) {
    s.patterns.push_back({k, comp4(j, 0, k - j, 0), a});
    s.patterns.push_back({k, comp4(0, j, 0, k - j), a});
  }
  for (int j = 1; j < k_star; ++j) {
    s.patterns.push_back({k_star, comp4(j, k_star - j, 0, 0), a_star});
    s.patterns.push_back({k_star, comp4(0, 0, j, k_star - j), a_star});
  }
  return s;
}

}  // namespace presets
}  // namespace hyperbh
