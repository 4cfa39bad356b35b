#include "hyperbh/detectability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hyperbh {
namespace {

double factorial(int k) {
  double f = 1.0;
  for (int t = 2; t <= k; ++t) f *= t;
  return f;
}

// Bisection for a decreasing-to-increasing sign change of f on [lo, hi].
template <class F>
double bisect(F f, double lo, double hi, double ftol, int max_iter) {
  double flo = f(lo);
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= ftol || hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double snr_of(Method m, const std::vector<OrderDegrees>& deg) { return m == Method::bh ? snr_bh(deg) : snr_bp(deg); }

}  // namespace

std::vector<OrderDegrees> degrees_from_rates(int q, const std::vector<int>& orders, const Rates& rates) {
  std::vector<OrderDegrees> out;
  for (int k : orders) {
    const double scale = std::pow(static_cast<double>(q), k - 1) * factorial(k - 1);
    OrderDegrees od{k, rates.c_in / scale, rates.c_out / scale, 0.0};
    od.d = od.d_in + (std::pow(static_cast<double>(q), k - 1) - 1.0) * od.d_out;
    out.push_back(od);
  }
  return out;
}

double total_degree(const std::vector<OrderDegrees>& deg) {
  double d = 0.0;
  for (const auto& od : deg) d += od.d;
  return d;
}

double mean_order(const std::vector<OrderDegrees>& deg) {
  double s = 0.0;
  for (const auto& od : deg) s += od.d / od.order;
  return total_degree(deg) / s;
}

double snr_bh(const std::vector<OrderDegrees>& deg) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& od : deg) {
    num += (od.order - 1) * (od.d_in - od.d_out);
    den += (od.order - 1) * od.d;
  }
  if (!(den > 0)) throw std::domain_error("snr_bh: all per-order degrees are zero");
  return num * num / den;
}

bool snr_bp_has_zero_factor(const std::vector<OrderDegrees>& deg) {
  for (const auto& od : deg) {
    if (od.d_in == od.d_out) return true;
  }
  return false;
}

double snr_bp(const std::vector<OrderDegrees>& deg) {
  const double d = total_degree(deg);
  if (!(d > 0)) throw std::domain_error("snr_bp: all per-order degrees are zero");
  if (snr_bp_has_zero_factor(deg)) return 0.0;
  const double kh = mean_order(deg);
  double log_prod = 0.0;
  for (const auto& od : deg) {
    if (od.d == 0) continue;  // exponent 0
    log_prod += 2.0 * kh * od.d / (d * od.order) * std::log(std::abs(od.d_in - od.d_out) / od.d);
  }
  return d * (kh - 1.0) * std::exp(log_prod);
}

Rates rates_for_mean_degree(int q, const std::vector<int>& orders, double d, double eps) {
  if (orders.empty()) throw std::invalid_argument("rates_for_mean_degree: empty order set");
  double denom = 0.0;
  for (int k : orders) {
    const double qk = std::pow(static_cast<double>(q), k - 1);
    denom += (1.0 + (qk - 1.0) * eps) / (qk * factorial(k - 1));
  }
  const double c_in = d / denom;
  return {c_in, eps * c_in};
}

double critical_epsilon(int q, const std::vector<int>& orders, double d, Method method) {
  auto f = [&](double eps) { return snr_of(method, degrees_from_rates(q, orders, rates_for_mean_degree(q, orders, d, eps))) - 1.0; };
  if (!(f(0.0) > 0)) throw std::domain_error("undetectable at any eps");
  return bisect(f, 0.0, 1.0, 1e-10, 200);
}

double critical_epsilon_uniform(int q, int k, double d) {
  const double s = std::sqrt(d * (k - 1));
  return (s - 1.0) / (s + std::pow(static_cast<double>(q), k - 1) - 1.0);
}

SnrReport snr_report(int q, const std::vector<int>& orders, double d, double eps) {
  SnrReport r;
  r.q = q;
  r.rates = rates_for_mean_degree(q, orders, d, eps);
  r.orders = degrees_from_rates(q, orders, r.rates);
  r.d = total_degree(r.orders);
  r.kappa_hat = mean_order(r.orders);
  r.snr_bh = snr_bh(r.orders);
  r.snr_bp = snr_bp(r.orders);
  r.bp_zero_factor = snr_bp_has_zero_factor(r.orders);
  try {
    r.eps_bh = critical_epsilon(q, orders, d, Method::bh);
  } catch (const std::domain_error&) {
  }
  try {
    r.eps_bp = critical_epsilon(q, orders, d, Method::bp);
  } catch (const std::domain_error&) {
  }
  return r;
}

std::vector<HatC> hatc_from_pattern(const PlantedPatternSpec& spec) {
  const int q = spec.q;
  std::map<int, HatC> by_order;
  for (const auto& p : spec.patterns) {
    auto [it, fresh] = by_order.try_emplace(p.order);
    HatC& hc = it->second;
    if (fresh) {
      hc.order = p.order;
      hc.ab = Eigen::MatrixXd::Zero(q, q);
      hc.a = Eigen::VectorXd::Zero(q);
    }
    // Each unordered composition stands for k! / prod c! ordered tuples; fixing
    // one or two slots leaves (k-1)! / prod c'! or (k-2)! / prod c''! of them.
    std::vector<int> c = p.composition;
    auto inv_fact_prod = [&]() {
      double f = 1.0;
      for (int v : c) f *= factorial(v);
      return 1.0 / f;
    };
    for (int a = 0; a < q; ++a) {
      if (c[a] < 1) continue;
      --c[a];
      hc.a(a) += p.rate * inv_fact_prod() / std::pow(static_cast<double>(q), p.order - 1);
      for (int b = 0; b < q; ++b) {
        if (c[b] < 1) continue;
        --c[b];
        hc.ab(a, b) += p.rate * inv_fact_prod() / std::pow(static_cast<double>(q), p.order - 2);
        ++c[b];
      }
      ++c[a];
    }
  }
  std::vector<HatC> out;
  for (auto& [k, hc] : by_order) out.push_back(std::move(hc));
  return out;
}

std::vector<HatC> hatc_symmetric(int q, const std::vector<int>& orders, const Rates& rates) {
  SymmetricHsbmSpec s;
  s.n = static_cast<std::size_t>(q) * 64;
  s.q = q;
  s.orders = orders;
  s.mode = SymmetricHsbmSpec::Mode::rates;
  s.rates = rates;
  // as_patterns validates block sizes; the dummy n only has to be large enough.
  for (int k : orders) s.n = std::max(s.n, static_cast<std::size_t>(q * k));
  return hatc_from_pattern(as_patterns(s));
}

CoarseSnr coarse_snr(const std::vector<HatC>& hatc, const std::vector<int>& coarse) {
  constexpr int kGroups = 2;
  if (coarse.size() != 4) throw std::invalid_argument("coarse_snr: expects four fine communities");
  int in_group0 = 0;
  for (int g : coarse) {
    if (g != 0 && g != 1) throw std::invalid_argument("coarse_snr: only two-group coarsenings are supported");
    in_group0 += g == 0 ? 1 : 0;
  }
  if (in_group0 != 2) throw std::invalid_argument("coarse_snr: each group must hold two fine communities");

  CoarseSnr r;
  double deg_sum = 0.0;
  for (const auto& hc : hatc) {
    if (hc.ab.rows() != 4) throw std::invalid_argument("coarse_snr: expects 4x4 aggregated matrices");
    double in = 0.0;
    double out = 0.0;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) (coarse[a] == coarse[b] ? in : out) += hc.ab(a, b);
    }
    in /= 8.0;  // two diagonal 2x2 blocks
    out /= 8.0;
    r.numerator += in - out;
    const double dk = (in + (kGroups - 1) * out) / (kGroups * (hc.order - 1));
    deg_sum += (hc.order - 1) * dk;
  }
  r.denominator = kGroups * kGroups * deg_sum;
  r.snr = r.denominator > 0 ? r.numerator * r.numerator / r.denominator : 0.0;
  return r;
}

int SwitchExperiment::order_02_13() const {
  switch (kind) {
    case Kind::shape4:
      return 4;
    case Kind::shape5:
      return 5;
    default:
      return k;
  }
}

int SwitchExperiment::order_01_23() const {
  switch (kind) {
    case Kind::shape4:
      return 4;
    case Kind::shape5:
      return 5;
    default:
      return k_star;
  }
}

PlantedPatternSpec SwitchExperiment::preset(std::size_t n, double d, double rho, std::uint64_t seed) const {
  switch (kind) {
    case Kind::shape4:
      return presets::shape4(n, d, rho, seed);
    case Kind::shape5:
      return presets::shape5(n, d, rho, seed);
    default:
      return presets::order(n, k, k_star, d, rho, seed);
  }
}

double switching_rho(const SwitchExperiment& ex, bool adjusted) {
  if (adjusted) return switching_rho_numeric(ex, true);
  switch (ex.kind) {
    case SwitchExperiment::Kind::shape4:
      return 4.0 / 3.0;
    case SwitchExperiment::Kind::shape5:
      return 3.0 / 2.0;
    default: {
      const double k = ex.k;
      const double ks = ex.k_star;
      return std::pow(2.0, ks - k) * (std::pow(2.0, k - 1) - 1.0) / (std::pow(2.0, ks - 1) - 1.0) *
             (ks * (ks - 1) / 2.0) / (k * (k - 1) / 2.0);
    }
  }
}

double switching_rho_numeric(const SwitchExperiment& ex, bool adjusted) {
  const double w_02 = adjusted ? 1.0 / (ex.order_02_13() + 1) : 1.0;
  const double w_01 = adjusted ? 1.0 / (ex.order_01_23() + 1) : 1.0;
  // Only the ratio matters; n and d drop out of the comparison.
  auto g = [&](double log_rho) {
    const auto hc = hatc_from_pattern(ex.preset(1000, 10.0, std::exp(log_rho), 0));
    const CoarseSnr s01 = coarse_snr(hc, kSplit01_23);
    const CoarseSnr s02 = coarse_snr(hc, kSplit02_13);
    auto clipped = [](const CoarseSnr& s) {
      const double num = std::max(s.numerator, 0.0);
      return s.denominator > 0 ? num * num / s.denominator : 0.0;
    };
    return w_02 * clipped(s02) - w_01 * clipped(s01);
  };
  double lo = std::log(1e-4);
  double hi = std::log(1e4);
  if (!(g(lo) < 0 && g(hi) > 0)) throw std::domain_error("switching_rho: no sign change on [1e-4, 1e4]");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? hi : lo) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace hyperbh
