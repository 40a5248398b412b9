#include "ordmatch/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordmatch/numeric.hpp"

namespace ordmatch::analytics {
namespace {

constexpr std::size_t kPolynomialFactorLimit = 64;

double ratio(std::size_t a, std::size_t b) {
  return static_cast<double>(a) / static_cast<double>(b);
}

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double dn = static_cast<double>(n);
  for (std::size_t k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.75) / (dn + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t j = 2; j <= n; ++j) {
        const double dj = static_cast<double>(j);
        const double p2 = ((2.0 * dj - 1.0) * x * p1 - (dj - 1.0) * p0) / dj;
        p0 = p1;
        p1 = p2;
      }
      derivative = dn * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::fabs(step) < 1e-16) break;
    }
    nodes[k] = -x;
    nodes[n - 1 - k] = x;
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    weights[k] = w;
    weights[n - 1 - k] = w;
  }
}

std::vector<ContentionFactor> contention_factors(const Instance& inst, AgentIndex skip_a,
                                                 AgentIndex skip_b) {
  std::vector<ContentionFactor> factors;
  factors.reserve(inst.num_agents());
  for (AgentIndex j = 0; j < inst.num_agents(); ++j) {
    if (j == skip_a || j == skip_b) continue;
    factors.push_back({inst.quota(j), survivor_prob(inst.quota(j), inst.num_items())});
  }
  return factors;
}

void check_agent(const Instance& inst, AgentIndex i, const char* what) {
  if (i >= inst.num_agents()) {
    throw std::invalid_argument(std::string(what) + ": agent index out of range");
  }
}

}  // namespace

double survivor_prob(std::size_t quota, std::size_t num_items) {
  if (quota == 0 || quota > num_items) {
    throw std::invalid_argument("survivor_prob: need 1 <= b_i <= m");
  }
  return 1.0 - static_cast<double>(quota - 1) / (3.0 * static_cast<double>(num_items));
}

double poly_product_integral(std::span<const ContentionFactor> factors, std::size_t num_items) {
  if (num_items == 0) throw std::invalid_argument("poly_product_integral: m must be positive");
  std::vector<double> slopes;
  slopes.reserve(factors.size());
  for (const auto& f : factors) {
    const double a = static_cast<double>(f.quota) * f.survivor_prob / static_cast<double>(num_items);
    if (!(a >= 0.0 && a <= 1.0)) {
      throw std::invalid_argument("poly_product_integral: b_j p_j / m must lie in [0,1]");
    }
    slopes.push_back(a);
  }

  if (slopes.size() <= kPolynomialFactorLimit) {
    // coeffs[k] = coefficient of y^k in the running product.
    std::vector<double> coeffs(slopes.size() + 1, 0.0);
    coeffs[0] = 1.0;
    std::size_t degree = 0;
    for (double a : slopes) {
      ++degree;
      for (std::size_t k = degree; k >= 1; --k) coeffs[k] -= a * coeffs[k - 1];
    }
    CompensatedSum total;
    for (std::size_t k = 0; k <= degree; ++k) total.add(coeffs[k] / static_cast<double>(k + 1));
    return total.value();
  }

  const std::size_t nodes_needed = std::max<std::size_t>(128, (slopes.size() + 1) / 2 + 1);
  std::vector<double> nodes;
  std::vector<double> weights;
  gauss_legendre(nodes_needed, nodes, weights);
  CompensatedSum total;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double y = 0.5 * (nodes[k] + 1.0);
    double log_product = 0.0;
    bool zero = false;
    for (double a : slopes) {
      const double f = 1.0 - a * y;
      if (f <= 0.0) {
        zero = true;
        break;
      }
      log_product += std::log(f);
    }
    if (!zero) total.add(0.5 * weights[k] * std::exp(log_product));
  }
  return total.value();
}

double rs_q_exact(const Instance& inst, AgentIndex i) {
  check_agent(inst, i, "rs_q_exact");
  const auto factors = contention_factors(inst, i, i);
  return survivor_prob(inst.quota(i), inst.num_items()) *
         poly_product_integral(factors, inst.num_items());
}

double burning_prob(const Instance& inst, AgentIndex i, AgentIndex i_star) {
  check_agent(inst, i, "burning_prob");
  check_agent(inst, i_star, "burning_prob");
  if (i == i_star) throw std::invalid_argument("burning_prob: i must differ from i_star");
  if (inst.quota(i_star) != inst.max_quota()) {
    throw std::invalid_argument("burning_prob: i_star must have maximum quota");
  }
  const std::size_t m = inst.num_items();
  if (inst.max_quota() == m) {
    throw std::invalid_argument("burning_prob: undefined when b_max = m");
  }
  const double x = ratio(inst.max_quota(), m);
  const auto factors = contention_factors(inst, i, i_star);
  const double reach = survivor_prob(inst.quota(i), m) * poly_product_integral(factors, m);
  return 1.0 - (-std::expm1(x - 1.0)) / ((1.0 - x) * reach);
}

double stealing_prob(std::size_t max_quota, std::size_t num_items) {
  if (max_quota == 0 || max_quota >= num_items) {
    throw std::invalid_argument("stealing_prob: need 1 <= b_max < m");
  }
  // With u = 1 - b_max/m: (1 - (1+u) e^{-u}) / (1 - e^{-u}).
  const double u = ratio(num_items - max_quota, num_items);
  const double one_minus_exp = -std::expm1(-u);
  return (one_minus_exp - u * std::exp(-u)) / one_minus_exp;
}

double rsbs_q_exact(const Instance& inst) {
  const double u = ratio(inst.num_items() - inst.max_quota(), inst.num_items());
  return 1.0 - u * std::exp(-u);
}

double hql_q(const Instance& inst) {
  const double m = static_cast<double>(inst.num_items());
  return m / (2.0 * m - static_cast<double>(inst.max_quota()));
}

double hql_distortion_bound(const Instance& inst) {
  return 2.0 - ratio(inst.max_quota(), inst.num_items());
}

double rsbs_distortion_bound(const Instance& inst) { return 1.0 / rsbs_q_exact(inst); }

double quota_product(const Instance& inst) {
  double log_sum = 0.0;
  for (std::size_t b : inst.quotas()) {
    if (b == inst.num_items()) return 0.0;
    log_sum += std::log1p(-ratio(b, inst.num_items()));
  }
  return std::exp(log_sum);
}

double benchmark_lower_bound(const Instance& inst) { return 1.0 / (1.0 - quota_product(inst)); }

GapCurvePoint distortion_gap_curve(std::size_t num, std::size_t den) {
  if (num == 0 || num > den) {
    throw std::invalid_argument("distortion_gap_curve: x must lie in (0, 1]");
  }
  const double x = ratio(num, den);
  const auto k = static_cast<double>(den / num);
  const double u = 1.0 - x;
  const double numerator = 1.0 - std::pow(u, k) * k * x;
  const double denominator = 1.0 - u * std::exp(-u);
  return {x, numerator / denominator};
}

GapCurvePoint distortion_gap_curve(double x) {
  if (!(x > 0.0 && x <= 1.0)) {
    throw std::invalid_argument("distortion_gap_curve: x must lie in (0, 1]");
  }
  // Largest k with k*x <= 1, robust to 1/x rounding just below an integer.
  double k = std::floor(1.0 / x);
  if ((k + 1.0) * x <= 1.0) k += 1.0;
  if (k * x > 1.0) k -= 1.0;
  const double u = 1.0 - x;
  const double numerator = 1.0 - std::pow(u, k) * k * x;
  const double denominator = 1.0 - u * std::exp(-u);
  return {x, numerator / denominator};
}

double product_floor_bound(const Instance& inst) {
  const std::size_t m = inst.num_items();
  const std::size_t b_max = inst.max_quota();
  const auto k = static_cast<double>(m / b_max);
  const double x = ratio(b_max, m);
  return std::pow(1.0 - x, k) * k * x;
}

double hql_gap_bound(double y) {
  if (!(y > 0.0 && y <= 1.0)) throw std::invalid_argument("hql_gap_bound: y must lie in (0, 1]");
  return (2.0 - y) * (1.0 - std::pow(1.0 - y, 1.0 / y));
}

}  // namespace ordmatch::analytics
