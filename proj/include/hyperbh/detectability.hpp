#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "hyperbh/hsbm.hpp"

namespace hyperbh {

struct OrderDegrees {
  int order = 0;
  double d_in = 0.0;
  double d_out = 0.0;
  double d = 0.0;  // d_in + (q^(k-1) - 1) d_out
};

// d_in = c_in / (q^(k-1) (k-1)!), d_out likewise with c_out.
std::vector<OrderDegrees> degrees_from_rates(int q, const std::vector<int>& orders, const Rates& rates);

double total_degree(const std::vector<OrderDegrees>& deg);
// d / sum_k (d^(k) / k)
double mean_order(const std::vector<OrderDegrees>& deg);

// (sum_k (k-1)(d_in - d_out))^2 / sum_k (k-1) d^(k). Throws when every d^(k) is 0.
double snr_bh(const std::vector<OrderDegrees>& deg);
// d (kappa-hat - 1) prod_k |(d_in - d_out) / d^(k)|^(2 kappa-hat d^(k) / (d k)).
// Any order with d_in == d_out zeroes the product.
double snr_bp(const std::vector<OrderDegrees>& deg);
bool snr_bp_has_zero_factor(const std::vector<OrderDegrees>& deg);

// Rates with c_out = eps c_in and sum_k d^(k) = d.
Rates rates_for_mean_degree(int q, const std::vector<int>& orders, double d, double eps);

enum class Method { bh, bp };

// Root of SNR(eps) = 1 on [0, 1] at fixed mean degree, by bisection.
// Throws std::domain_error when SNR(0) <= 1.
double critical_epsilon(int q, const std::vector<int>& orders, double d, Method method);
// Uniform closed form (sqrt(d(k-1)) - 1) / (sqrt(d(k-1)) + q^(k-1) - 1).
double critical_epsilon_uniform(int q, int k, double d);

struct SnrReport {
  int q = 0;
  Rates rates;
  std::vector<OrderDegrees> orders;
  double d = 0.0;
  double kappa_hat = 0.0;
  double snr_bh = 0.0;
  double snr_bp = 0.0;
  bool bp_zero_factor = false;
  std::optional<double> eps_bh;
  std::optional<double> eps_bp;
};

// Degrees and both SNRs at (d, eps); the critical roots are filled in when
// they exist.
SnrReport snr_report(int q, const std::vector<int>& orders, double d, double eps);

// Aggregated affinities of one order for equal-size communities:
//   ab(a, b) = sum over z in [q]^(k-2) of C(a, b, z) / (q^(k-2) (k-2)!)
//   a(a)     = sum over z in [q]^(k-1) of C(a, z)    / (q^(k-1) (k-1)!)
struct HatC {
  int order = 0;
  Eigen::MatrixXd ab;
  Eigen::VectorXd a;
};

std::vector<HatC> hatc_from_pattern(const PlantedPatternSpec& spec);
std::vector<HatC> hatc_symmetric(int q, const std::vector<int>& orders, const Rates& rates);

struct CoarseSnr {
  double numerator = 0.0;    // sum_k (c_in - c_out), signed
  double denominator = 0.0;  // Q^2 sum_k (k-1) d^(k)
  double snr = 0.0;
};

// SNR of a two-group coarsening of four fine communities; coarse[f] is the
// group (0 or 1) of fine community f and each group holds two communities.
CoarseSnr coarse_snr(const std::vector<HatC>& hatc, const std::vector<int>& coarse);

inline const std::vector<int> kSplit01_23{0, 0, 1, 1};
inline const std::vector<int> kSplit02_13{0, 1, 0, 1};

struct SwitchExperiment {
  enum class Kind { order, shape4, shape5 };
  Kind kind = Kind::order;
  int k = 2;       // order experiment: order aligned with {0,2}|{1,3}
  int k_star = 3;  // order experiment: order aligned with {0,1}|{2,3}

  // Orders attached to the two coarse splits.
  int order_02_13() const;
  int order_01_23() const;
  PlantedPatternSpec preset(std::size_t n, double d, double rho, std::uint64_t seed) const;
};

// Raw: equal coarse SNRs. Adjusted: SNR_01;23 / (k_star + 1) = SNR_02;13 / (k + 1).
// The raw value uses the closed forms; the adjusted one is solved numerically.
double switching_rho(const SwitchExperiment& ex, bool adjusted);
// Bisection over rho on the coarse SNRs built from the preset's patterns.
// Only assortative signal counts (negative numerators are clipped to 0).
double switching_rho_numeric(const SwitchExperiment& ex, bool adjusted);

}  // namespace hyperbh
