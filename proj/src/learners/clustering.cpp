#include "abduction/learners/clustering.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "abduction/error.hpp"
#include "abduction/train.hpp"

namespace abduction::learners {

namespace {

double squared_distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void check_points(std::span<const Point> points) {
  if (points.empty()) {
    throw Error("no points to cluster");
  }
  for (const auto& p : points) {
    if (p.size() != points.front().size() || p.empty()) {
      throw Error("dimension mismatch");
    }
  }
}

const del::BadnessRule kWithinRule{del::align::SameX{}, del::dev::HalfSquareYDist{}, agg::total(), 0};

double within_value(const del::Conglomerate& m) {
  const auto pairs = del::aligned_pairs(kWithinRule.alignment, m);
  if (pairs.empty()) {
    return 0.0;
  }
  return agg::aggregate(kWithinRule.aggregation, del::deviation_sequence(m, pairs, kWithinRule.deviation));
}

}  // namespace

ClusterState make_state(std::span<const Point> points, std::vector<std::size_t> assignment, std::size_t k) {
  if (assignment.size() != points.size()) {
    throw Error("assignment size mismatch");
  }
  ClusterState st;
  st.sizes.assign(k, 0);
  st.centers.assign(k, {});
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto c = assignment[i];
    if (c >= k) {
      throw Error("cluster id out of range");
    }
    if (st.centers[c].empty()) {
      st.centers[c].assign(points[i].size(), 0.0);
    }
    ++st.sizes[c];
    for (std::size_t j = 0; j < points[i].size(); ++j) {
      st.centers[c][j] += points[i][j];
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (auto& v : st.centers[c]) {
      v /= static_cast<double>(st.sizes[c]);
    }
  }
  st.assignment = std::move(assignment);
  return st;
}

std::vector<del::Instance> clustering_instances(std::span<const Point> points, std::span<const std::size_t> assignment) {
  std::vector<del::Instance> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.push_back(del::Instance{{static_cast<double>(assignment[i])}, points[i], del::kObserved});
  }
  return out;
}

// ---------------------------------------------------------------------------

agg::AggregationSpec linkage_aggregation(Linkage linkage) {
  switch (linkage) {
    case Linkage::single:
      return agg::minimum();
    case Linkage::complete:
      return agg::maximum();
    default:
      return agg::l1();
  }
}

namespace {

del::BadnessRule linkage_rule(Linkage linkage) {
  return {del::align::Pointwise{}, del::dev::YDist{}, linkage_aggregation(linkage), 0};
}

}  // namespace

double linkage_distance(std::span<const Point> ci, std::span<const Point> cj, Linkage linkage) {
  if (ci.empty() || cj.empty()) {
    throw Error("empty cluster");
  }
  const std::vector<std::size_t> ids(ci.size(), 0);
  const auto s = clustering_instances(ci, ids);
  return del::badness(linkage_rule(linkage), del::cluster_assignment(0, {cj.begin(), cj.end()}), s);
}

std::pair<std::size_t, std::size_t> linkage_merge_round(const std::vector<std::vector<Point>>& clusters,
                                                        Linkage linkage) {
  if (clusters.size() < 2) {
    throw Error("linkage needs at least two clusters");
  }
  std::vector<Point> points;
  std::vector<std::size_t> ids;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].empty()) {
      throw Error("empty cluster");
    }
    for (const auto& p : clusters[c]) {
      points.push_back(p);
      ids.push_back(c);
    }
  }
  check_points(points);
  const auto s = clustering_instances(points, ids);

  std::vector<std::pair<std::size_t, std::size_t>> order;
  train::BasicTrainingConfig<int> cfg;
  cfg.enumerate = [&](const train::Focused&, const int&) {
    std::vector<del::Hypothesis> hs;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        hs.push_back(del::cluster_assignment(i, clusters[j]));
        order.emplace_back(i, j);
      }
    }
    return hs;
  };
  cfg.criterion = [linkage](const train::Focused&, const int&) {
    return del::ExplanationCriterion{{linkage_rule(linkage)}, del::Regularization::none, del::combine::Single{}};
  };
  const auto sel = train::basic_train(cfg, s, 0);
  return order[sel.index];
}

ClusterState linkage_cluster(std::span<const Point> points, Linkage linkage, std::size_t k_target) {
  check_points(points);
  if (k_target < 1 || k_target > points.size()) {
    throw Error("k_target must lie in [1, point count]");
  }
  std::vector<std::vector<std::size_t>> members(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    members[i] = {i};
  }
  while (members.size() > k_target) {
    std::vector<std::vector<Point>> clusters;
    clusters.reserve(members.size());
    for (const auto& mem : members) {
      auto& c = clusters.emplace_back();
      for (auto i : mem) {
        c.push_back(points[i]);
      }
    }
    const auto [i, j] = linkage_merge_round(clusters, linkage);
    members[i].insert(members[i].end(), members[j].begin(), members[j].end());
    members.erase(members.begin() + static_cast<std::ptrdiff_t>(j));
  }
  std::vector<std::size_t> assignment(points.size());
  for (std::size_t c = 0; c < members.size(); ++c) {
    for (auto i : members[c]) {
      assignment[i] = c;
    }
  }
  return make_state(points, std::move(assignment), members.size());
}

// ---------------------------------------------------------------------------

double within_cluster_pairwise(std::span<const Point> points, std::span<const std::size_t> assignment) {
  if (assignment.size() != points.size()) {
    throw Error("assignment size mismatch");
  }
  return within_value(del::Conglomerate{clustering_instances(points, assignment)});
}

double within_cluster_centroid(std::span<const Point> points, std::span<const std::size_t> assignment, std::size_t k) {
  const auto st = make_state(points, {assignment.begin(), assignment.end()}, k);
  double w = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto c = st.assignment[i];
    w += static_cast<double>(st.sizes[c]) * squared_distance(points[i], st.centers[c]);
  }
  return w;
}

std::size_t kmeans_assign_point(const ClusterState& state, std::span<const Point> points, std::size_t idx) {
  if (idx >= points.size() || state.assignment.size() != points.size()) {
    throw Error("point index out of range");
  }
  const std::size_t k = state.sizes.size();
  if (k == 0) {
    throw Error("no clusters");
  }
  std::vector<del::Instance> others;
  others.reserve(points.size() - 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i != idx) {
      others.push_back(del::Instance{{static_cast<double>(state.assignment[i])}, points[i], del::kObserved});
    }
  }
  // Hypothesis c places points[idx] into cluster c.
  std::size_t best = 0;
  double best_w = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double w = within_value(del::build_conglomerate(del::cluster_assignment(c, {points[idx]}), others));
    if (c == 0 || w < best_w) {
      best = c;
      best_w = w;
    }
  }
  return best;
}

KMeansResult kmeans_run(std::span<const Point> points, std::size_t k, std::uint64_t seed, std::size_t max_rounds) {
  check_points(points);
  if (k < 1 || k > points.size()) {
    throw Error("k must lie in [1, point count]");
  }
  const std::size_t m = points.size();

  // Initial centers: the first k distinct locations of a seeded permutation.
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Point> init;
  for (auto i : perm) {
    if (init.size() == k) {
      break;
    }
    if (std::find(init.begin(), init.end(), points[i]) == init.end()) {
      init.push_back(points[i]);
    }
  }
  std::vector<std::size_t> assignment(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t c = 1; c < init.size(); ++c) {
      if (squared_distance(points[i], init[c]) < squared_distance(points[i], init[assignment[i]])) {
        assignment[i] = c;
      }
    }
  }

  KMeansResult res;
  res.state = make_state(points, std::move(assignment), k);
  auto repair = [&] {
    for (std::size_t c = 0; c < k; ++c) {
      if (res.state.sizes[c] > 0) {
        continue;
      }
      std::size_t far = m;
      double far_d = -1.0;
      for (std::size_t i = 0; i < m; ++i) {
        const auto own = res.state.assignment[i];
        if (res.state.sizes[own] < 2) {
          continue;
        }
        const double d = squared_distance(points[i], res.state.centers[own]);
        if (d > far_d) {
          far = i;
          far_d = d;
        }
      }
      if (far == m) {
        throw Error("cannot repair an empty cluster");
      }
      auto a = res.state.assignment;
      a[far] = c;
      res.state = make_state(points, std::move(a), k);
      res.objective.push_back(within_cluster_pairwise(points, res.state.assignment));
    }
  };
  res.objective.push_back(within_cluster_pairwise(points, res.state.assignment));
  repair();

  while (res.rounds < max_rounds) {
    ++res.rounds;
    bool changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      const auto c = kmeans_assign_point(res.state, points, i);
      if (c == res.state.assignment[i]) {
        continue;
      }
      auto a = res.state.assignment;
      a[i] = c;
      const double w = within_cluster_pairwise(points, a);
      if (!(w < res.objective.back())) {
        continue;
      }
      res.state.assignment = std::move(a);
      res.objective.push_back(w);
      changed = true;
    }
    res.state = make_state(points, std::move(res.state.assignment), k);
    repair();
    if (!changed) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace abduction::learners
