#include "abduction/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace abduction::oracle {

namespace {

double dist2(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += (a[i] - b[i]) * (a[i] - b[i]);
  }
  return s;
}

}  // namespace

int brute_knn(const Mat& x, const std::vector<int>& y, const Vec& x0, std::size_t k) {
  std::vector<double> d;
  for (const auto& row : x) {
    d.push_back(std::sqrt(dist2(row, x0)));
  }
  auto sorted = d;
  std::sort(sorted.begin(), sorted.end());
  const double dk = sorted.at(k - 1);
  int ones = 0;
  int zeros = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (d[i] <= dk) {
      (y[i] == 1 ? ones : zeros) += 1;
    }
  }
  return ones > zeros ? 1 : 0;
}

int direct_nb(const Mat& x, const std::vector<int>& y, const Vec& z) {
  // prod_j (1 - e(c, S_j)) over the common denominator prod_j |S_j|, in integers.
  long long agree0 = 1;
  long long agree1 = 1;
  for (std::size_t j = 0; j < z.size(); ++j) {
    long long count = 0;
    long long ones = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i][j] == z[j]) {
        ++count;
        ones += y[i];
      }
    }
    if (count == 0) {
      throw std::invalid_argument("unseen feature value");
    }
    agree0 *= count - ones;
    agree1 *= ones;
  }
  return agree1 > agree0 ? 1 : 0;
}

double empirical_risk(const std::function<double(const Vec&)>& h, const Mat& x, const Vec& y) {
  if (x.empty()) {
    throw std::invalid_argument("empty sample");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += std::abs(h(x[i]) - y[i]);
  }
  return s / static_cast<double>(x.size());
}

Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& p, double h_step) {
  Vec g(p.size());
  Vec q = p;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double h = h_step * (1.0 + std::abs(p[i]));
    q[i] = p[i] + h;
    const double up = f(q);
    q[i] = p[i] - h;
    const double down = f(q);
    q[i] = p[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

GradientCheckReport check_gradient(const std::function<double(const Vec&)>& f, const Vec& analytic, const Vec& p,
                                   double h_step) {
  const auto fd = fd_gradient(f, p, h_step);
  GradientCheckReport r{0.0, p};
  for (std::size_t i = 0; i < fd.size(); ++i) {
    r.max_relative_error =
        std::max(r.max_relative_error, std::abs(analytic.at(i) - fd[i]) / std::max(1.0, std::abs(fd[i])));
  }
  return r;
}

double pairwise_within(const Mat& points, const std::vector<std::size_t>& assignment) {
  double w = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (assignment[i] == assignment[j]) {
        w += 0.5 * dist2(points[i], points[j]);
      }
    }
  }
  return w;
}

std::size_t exhaustive_kmeans_assignment(const Mat& points, const std::vector<std::size_t>& assignment,
                                         std::size_t k, std::size_t idx) {
  std::size_t best = 0;
  double best_w = std::numeric_limits<double>::infinity();
  auto trial = assignment;
  for (std::size_t c = 0; c < k; ++c) {
    trial[idx] = c;
    const double w = pairwise_within(points, trial);
    if (w < best_w) {
      best = c;
      best_w = w;
    }
  }
  return best;
}

double slack_grid_minimum(const Vec& w, double b, const Mat& x, const Vec& y, double alpha,
                          std::size_t grid_resolution) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double f = b;
    for (std::size_t j = 0; j < w.size(); ++j) {
      f += w[j] * x[i][j];
    }
    auto feasible = [&](double xi) { return xi >= 0.0 && y[i] * f >= 1.0 - xi; };
    // Bracket the smallest feasible slack, then refine on ever finer grids.
    double hi = 1.0;
    while (!feasible(hi)) {
      hi *= 2.0;
    }
    double lo = 0.0;
    if (feasible(lo)) {
      hi = lo;
    }
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
      const double step = (hi - lo) / static_cast<double>(grid_resolution);
      double next_hi = hi;
      for (std::size_t g = 1; g <= grid_resolution; ++g) {
        const double v = lo + step * static_cast<double>(g);
        if (feasible(v)) {
          next_hi = v;
          break;
        }
      }
      const double next_lo = std::max(lo, next_hi - step);
      if (next_hi == hi && next_lo == lo) {
        break;
      }
      hi = next_hi;
      lo = next_lo;
    }
    total += hi;
  }
  double norm = 0.0;
  for (double v : w) {
    norm += v * v;
  }
  return alpha * norm + total / static_cast<double>(x.size());
}

bool seq_less_bijection(const Vec& a, const Vec& b, bool strict) {
  if (a.size() != b.size()) {
    return false;
  }
  std::vector<std::size_t> perm(b.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      ok = strict ? a[i] < b[perm[i]] : a[i] <= b[perm[i]];
    }
    if (ok) {
      return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::pair<std::size_t, std::size_t> linkage_pair(const std::vector<Mat>& clusters, LinkageKind kind) {
  if (clusters.size() < 2) {
    throw std::invalid_argument("need two clusters");
  }
  std::pair<std::size_t, std::size_t> best{0, 1};
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    for (std::size_t j = i + 1; j < clusters.size(); ++j) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      double sum = 0.0;
      // Points of C_j outermost, matching how the distances are accumulated.
      for (const auto& q : clusters[j]) {
        for (const auto& p : clusters[i]) {
          const double d = std::sqrt(dist2(p, q));
          lo = std::min(lo, d);
          hi = std::max(hi, d);
          sum += d;
        }
      }
      const double n = static_cast<double>(clusters[i].size() * clusters[j].size());
      const double d = kind == LinkageKind::single ? lo : kind == LinkageKind::complete ? hi : sum / n;
      if (d < best_d) {
        best_d = d;
        best = {i, j};
      }
    }
  }
  return best;
}

Vec ridge_descent(const Mat& x, const Vec& y, double alpha, double tol, std::size_t max_iters) {
  const std::size_t m = x.size();
  const std::size_t n = x.front().size();
  Vec p(n + 1, 0.0);
  // Step 1/L with L bounding the Hessian 2(X'X/m + alpha D).
  double trace = 0.0;
  for (const auto& row : x) {
    trace += dist2(row, Vec(n, 0.0)) + 1.0;
  }
  const double step = 1.0 / (2.0 * (trace / static_cast<double>(m) + alpha));
  Vec g(n + 1);
  for (std::size_t it = 0; it < max_iters; ++it) {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      double r = p[n] - y[i];
      for (std::size_t j = 0; j < n; ++j) {
        r += p[j] * x[i][j];
      }
      for (std::size_t j = 0; j < n; ++j) {
        g[j] += 2.0 * r * x[i][j] / static_cast<double>(m);
      }
      g[n] += 2.0 * r / static_cast<double>(m);
    }
    for (std::size_t j = 0; j < n; ++j) {
      g[j] += 2.0 * alpha * p[j];
    }
    double norm = 0.0;
    for (double v : g) {
      norm += v * v;
    }
    if (std::sqrt(norm) < tol) {
      break;
    }
    for (std::size_t j = 0; j <= n; ++j) {
      p[j] -= step * g[j];
    }
  }
  return p;
}

}  // namespace abduction::oracle
