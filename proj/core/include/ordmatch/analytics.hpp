#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "ordmatch/model.hpp"

namespace ordmatch::analytics {

/// RS survivor probability 1 - (b_i - 1)/(3m). Requires 1 <= b_i <= m.
double survivor_prob(std::size_t quota, std::size_t num_items);

/// One factor (1 - (b_j p_j / m) y) of the contention integrand.
struct ContentionFactor {
  std::size_t quota;
  double survivor_prob;
};

/// Exact value of the integral over [0,1] of prod_j (1 - (b_j p_j/m) y) dy.
///
/// Up to 64 factors the product is expanded into monomial coefficients and
/// integrated term by term. Larger products use Gauss-Legendre with
/// max(128, ceil(n/2)+1) nodes, which is still exact for the polynomial.
double poly_product_integral(std::span<const ContentionFactor> factors, std::size_t num_items);

/// Probability that RS gives agent i any fixed favorite item (UF draws).
double rs_q_exact(const Instance& inst, AgentIndex i);

/// RSBS phase-2 burning probability for agent i != i_star.
double burning_prob(const Instance& inst, AgentIndex i, AgentIndex i_star);

/// RSBS phase-3 stealing probability. Requires b_max < m.
double stealing_prob(std::size_t max_quota, std::size_t num_items);

/// 1 - (1 - x) e^{x-1} with x = b_max/m: RSBS's per-favorite-item probability.
double rsbs_q_exact(const Instance& inst);

/// HQL's per-favorite-item probability m/(2m - b_max).
double hql_q(const Instance& inst);

/// HQL distortion bound 2 - b_max/m.
double hql_distortion_bound(const Instance& inst);

/// RSBS distortion bound 1 / rsbs_q_exact.
double rsbs_distortion_bound(const Instance& inst);

/// Distortion floor (1 - prod_i (1 - b_i/m))^{-1} shared by every ordinal mechanism.
double benchmark_lower_bound(const Instance& inst);

struct GapCurvePoint {
  double x;
  double bound;
};

/// RSBS distortion-gap bound as a function of x = b_max/m in (0, 1].
GapCurvePoint distortion_gap_curve(double x);

/// Same curve with x = num/den given exactly, so floor(den/num) is exact.
GapCurvePoint distortion_gap_curve(std::size_t num, std::size_t den);

/// (1 - b_max/m)^k * k * b_max/m with k = floor(m/b_max).
double product_floor_bound(const Instance& inst);

/// prod_i (1 - b_i/m).
double quota_product(const Instance& inst);

/// (2 - y)(1 - (1 - y)^{1/y}), the HQL gap bound at y = b_max/m.
double hql_gap_bound(double y);

}  // namespace ordmatch::analytics
