#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hyperbh/hypergraph.hpp"

namespace hyperbh {

struct Rates {
  double c_in = 0.0;
  double c_out = 0.0;
};

struct SymmetricHsbmSpec {
  enum class Mode { rates, degree_eps };

  std::size_t n = 0;
  int q = 2;
  std::vector<int> orders;
  Mode mode = Mode::degree_eps;
  Rates rates;       // used in rates mode
  double d = 0.0;    // target mean degree (degree_eps mode)
  double eps = 0.0;  // c_out / c_in (degree_eps mode)
  std::uint64_t seed = 0;

  void validate() const;
};

// One planted hyperedge family: an order, the number of member nodes taken
// from each community, and its C-rate.
struct Pattern {
  int order = 0;
  std::vector<int> composition;  // length q, sums to order
  double rate = 0.0;
};

struct PlantedPatternSpec {
  std::size_t n = 0;
  int q = 0;
  std::vector<Pattern> patterns;
  std::uint64_t seed = 0;

  void validate() const;
};

struct HsbmSample {
  Hypergraph graph;
  Partition planted;
};

// Contiguous blocks whose sizes differ by at most one.
std::vector<std::size_t> block_sizes(std::size_t n, int q);
Partition block_partition(std::size_t n, int q);

// (c_in, c_out) for the model. In degree_eps mode c_out = eps * c_in and
// c_in is chosen so that the expected mean degree of the sampler equals d
// exactly at the model's n and block sizes.
Rates resolve_rates(const SymmetricHsbmSpec& spec);

// All compositions of k into q nonnegative parts, in lexicographic order
// (descending in the first part).
std::vector<std::vector<int>> compositions(int k, int q);

// Expected hyperedge count of one pattern: prod_psi C(s_psi, c_psi) * rate / n^(k-1).
double expected_pattern_count(std::size_t n, const std::vector<std::size_t>& blocks, const Pattern& p);
// Symmetric-model expected m^(k) per order at the resolved rates.
std::map<int, double> expected_order_counts(const SymmetricHsbmSpec& spec);

// The symmetric model expressed as patterns: one per (order, composition),
// rate c_in for single-community compositions, c_out otherwise.
PlantedPatternSpec as_patterns(const SymmetricHsbmSpec& spec);

HsbmSample sample_symmetric(const SymmetricHsbmSpec& spec);
HsbmSample sample_planted(const PlantedPatternSpec& spec);

// Four-community competing-structure presets. rho is the ratio of the
// expected counts of the family aligned with the coarse split {0,2}|{1,3}
// to the family aligned with {0,1}|{2,3}; the mean degree is d.
namespace presets {
// 4-hyperedges: 3+1 across {0,2} and {1,3} versus 2+2 across {0,1} and {2,3}.
PlantedPatternSpec shape4(std::size_t n, double d, double rho, std::uint64_t seed);
// 5-hyperedges: 1+4 across {0,2} and {1,3} versus 2+3 across {0,1} and {2,3}.
PlantedPatternSpec shape5(std::size_t n, double d, double rho, std::uint64_t seed);
// Order-k hyperedges mixing {0,2} and {1,3} versus order-k_star hyperedges
// mixing {0,1} and {2,3}; rho = m^(k) / m^(k_star).
PlantedPatternSpec order(std::size_t n, int k, int k_star, double d, double rho, std::uint64_t seed);
}  // namespace presets

}  // namespace hyperbh
