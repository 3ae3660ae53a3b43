#pragma once

// Reference implementations used to check the framework. Nothing here
// touches the rest of the library; inputs are plain vectors.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace abduction::oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

/// Majority label among all rows within the k-th smallest distance of x0;
/// a tie goes to 0.
int brute_knn(const Mat& x, const std::vector<int>& y, const Vec& x0, std::size_t k);

/// arg max over c of prod_j (1 - e(c, S_j)) by exact integer counting; tie
/// to 0. Products overflow beyond roughly 10^18.
/// Throws std::invalid_argument when some S_j is empty.
int direct_nb(const Mat& x, const std::vector<int>& y, const Vec& z);

/// Mean absolute error of h on the rows. Throws on empty input.
double empirical_risk(const std::function<double(const Vec&)>& h, const Mat& x, const Vec& y);

/// Central differences, step h_step * (1 + |p_i|) per coordinate.
Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& p, double h_step = 1e-6);

struct GradientCheckReport {
  double max_relative_error = 0.0;  // |g - g_fd| / max(1, |g_fd|)
  Vec point;
};

GradientCheckReport check_gradient(const std::function<double(const Vec&)>& f, const Vec& analytic, const Vec& p,
                                   double h_step = 1e-6);

/// W = 1/2 sum_k sum_{i,i' in C_k} |x_i - x_i'|^2 by a double loop.
double pairwise_within(const Mat& points, const std::vector<std::size_t>& assignment);

/// Cluster among 0..k-1 minimizing W when points[idx] moves there, the
/// others fixed; tie to the lowest id.
std::size_t exhaustive_kmeans_assignment(const Mat& points, const std::vector<std::size_t>& assignment,
                                         std::size_t k, std::size_t idx);

/// alpha |w|^2 + (1/m) sum xi_i, each xi_i the smallest grid value on a
/// refining grid satisfying y_i f(x_i) >= 1 - xi_i, xi_i >= 0.
double slack_grid_minimum(const Vec& w, double b, const Mat& x, const Vec& y, double alpha,
                          std::size_t grid_resolution = 64);

/// seq_less by search over all bijections a -> b: some bijection with
/// a_i < b_pi(i) (strict) or a_i <= b_pi(i) for every i.
bool seq_less_bijection(const Vec& a, const Vec& b, bool strict);

enum class LinkageKind { single, average, complete };

/// Closest pair (i < j) of clusters by a direct scan of point distances,
/// ties to the lexicographically smallest pair.
std::pair<std::size_t, std::size_t> linkage_pair(const std::vector<Mat>& clusters, LinkageKind kind);

/// Gradient descent on alpha |w|^2 + (1/m) sum (w.x + b - y)^2 until the
/// gradient norm drops below tol. Returns {w..., b}.
Vec ridge_descent(const Mat& x, const Vec& y, double alpha, double tol = 1e-12, std::size_t max_iters = 2000000);

}  // namespace abduction::oracle
