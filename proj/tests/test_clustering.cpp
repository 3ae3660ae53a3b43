#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "abduction/error.hpp"
#include "abduction/learners/clustering.hpp"
#include "abduction/oracle.hpp"

using namespace abduction;
using namespace abduction::learners;

namespace {

constexpr Linkage kAll[] = {Linkage::single, Linkage::average, Linkage::complete};

oracle::LinkageKind kind_of(Linkage l) {
  switch (l) {
    case Linkage::single:
      return oracle::LinkageKind::single;
    case Linkage::average:
      return oracle::LinkageKind::average;
    case Linkage::complete:
      break;
  }
  return oracle::LinkageKind::complete;
}

std::vector<Point> grid_points(std::mt19937_64& g, std::size_t m, std::size_t dim) {
  std::uniform_int_distribution<int> d(0, 16);
  std::vector<Point> pts(m, Point(dim));
  for (auto& p : pts) {
    for (auto& v : p) {
      v = d(g) / 4.0;
    }
  }
  return pts;
}

std::vector<Point> two_blobs(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  for (int i = 0; i < 10; ++i) {
    pts.push_back({u(g)});
    pts.push_back({100 + u(g)});
  }
  return pts;
}

bool separates_blobs(const std::vector<Point>& pts, const std::vector<std::size_t>& a) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const bool same_blob = (pts[i][0] < 50) == (pts[j][0] < 50);
      if (same_blob != (a[i] == a[j])) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST(Linkage, DominantGapMergesFirstPair) {
  const std::vector<std::vector<Point>> clusters{{{0}}, {{1}}, {{10}}};
  for (auto l : kAll) {
    EXPECT_EQ(linkage_merge_round(clusters, l), std::make_pair(std::size_t{0}, std::size_t{1}));
  }
}

TEST(Linkage, DistanceAggregations) {
  const std::vector<Point> a{{0}, {2}};
  const std::vector<Point> b{{1}};
  EXPECT_DOUBLE_EQ(linkage_distance(a, b, Linkage::average), 1.0);
  const std::vector<Point> c{{0}, {2}};
  const std::vector<Point> d{{3}};
  EXPECT_DOUBLE_EQ(linkage_distance(c, d, Linkage::single), 1.0);
  EXPECT_DOUBLE_EQ(linkage_distance(c, d, Linkage::average), 2.0);
  EXPECT_DOUBLE_EQ(linkage_distance(c, d, Linkage::complete), 3.0);
  const std::vector<Point> e{{1}, {3}};
  EXPECT_DOUBLE_EQ(linkage_distance(c, e, Linkage::average), 1.5);
  EXPECT_DOUBLE_EQ(linkage_distance(c, e, Linkage::single), 1.0);
  EXPECT_DOUBLE_EQ(linkage_distance(c, e, Linkage::complete), 3.0);
}

TEST(Linkage, NeedsTwoClusters) {
  EXPECT_THROW(linkage_merge_round({{{0}}}, Linkage::single), Error);
}

TEST(Linkage, MatchesDirectScan) {
  std::mt19937_64 g(101);
  for (int t = 0; t < 100; ++t) {
    const std::size_t count = 2 + g() % 5;
    std::vector<std::vector<Point>> clusters;
    std::vector<oracle::Mat> plain;
    for (std::size_t c = 0; c < count; ++c) {
      clusters.push_back(grid_points(g, 1 + g() % 3, 2));
      plain.emplace_back(clusters.back().begin(), clusters.back().end());
    }
    for (auto l : kAll) {
      ASSERT_EQ(linkage_merge_round(clusters, l), oracle::linkage_pair(plain, kind_of(l)));
    }
  }
}

TEST(Linkage, ExtremeTargets) {
  std::mt19937_64 g(102);
  const auto pts = grid_points(g, 7, 2);
  for (auto l : kAll) {
    const auto same = linkage_cluster(pts, l, pts.size());
    auto ids = same.assignment;
    std::sort(ids.begin(), ids.end());
    EXPECT_EQ(std::unique(ids.begin(), ids.end()), ids.end());
    const auto one = linkage_cluster(pts, l, 1);
    EXPECT_TRUE(std::all_of(one.assignment.begin(), one.assignment.end(), [](auto c) { return c == 0; }));
    EXPECT_EQ(one.sizes, std::vector<std::size_t>{pts.size()});
  }
}

TEST(Linkage, RecoversSeparatedBlobs) {
  std::mt19937_64 g(103);
  const auto pts = two_blobs(g);
  for (auto l : kAll) {
    EXPECT_TRUE(separates_blobs(pts, linkage_cluster(pts, l, 2).assignment));
  }
}

TEST(KMeans, DistinctLocationsGiveZeroObjective) {
  const std::vector<Point> pts{{0, 0}, {5, 5}, {0, 0}, {9, 1}, {5, 5}};
  const auto r = kmeans_run(pts, 3, 4, 100);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.objective.back(), 0.0);
  EXPECT_EQ(r.state.assignment[0], r.state.assignment[2]);
  EXPECT_EQ(r.state.assignment[1], r.state.assignment[4]);
  EXPECT_NE(r.state.assignment[0], r.state.assignment[3]);
}

TEST(KMeans, PairwiseAndCentroidFormsAgree) {
  std::mt19937_64 g(104);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + g() % 12;
    const std::size_t k = 1 + g() % 4;
    const auto pts = grid_points(g, m, 2);
    std::vector<std::size_t> a(m);
    for (auto& c : a) {
      c = g() % k;
    }
    const double pw = within_cluster_pairwise(pts, a);
    const double ct = within_cluster_centroid(pts, a, k);
    ASSERT_NEAR(pw, ct, 1e-9 * std::max(1.0, ct));
    ASSERT_NEAR(pw, oracle::pairwise_within({pts.begin(), pts.end()}, a), 1e-9 * std::max(1.0, pw));
  }
  EXPECT_EQ(within_cluster_pairwise(std::vector<Point>{{1, 2}}, std::vector<std::size_t>{0}), 0.0);
}

TEST(KMeans, AssignmentMatchesExhaustiveSearch) {
  std::mt19937_64 g(105);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 2 + g() % 8;
    const std::size_t k = 1 + g() % 3;
    const auto pts = grid_points(g, m, 2);
    std::vector<std::size_t> a(m);
    for (auto& c : a) {
      c = g() % k;
    }
    const auto state = make_state(pts, a, k);
    const std::size_t idx = g() % m;
    ASSERT_EQ(kmeans_assign_point(state, pts, idx),
              oracle::exhaustive_kmeans_assignment({pts.begin(), pts.end()}, a, k, idx));
  }
}

TEST(KMeans, ClearlyNearestCenterWins) {
  const std::vector<Point> pts{{0}, {0.5}, {10}, {10.5}, {1}};
  const auto state = make_state(pts, {0, 0, 1, 1, 1}, 2);
  EXPECT_EQ(kmeans_assign_point(state, pts, 4), 0u);
}

TEST(KMeans, NearestMeanWhenClustersAreTranslates) {
  // Equal sizes alone do not make the pairwise rule a nearest-mean rule;
  // clusters that are translates of one another (equal spread) do.
  std::mt19937_64 g(106);
  std::uniform_int_distribution<int> d(-8, 8);
  for (int t = 0; t < 200; ++t) {
    const std::vector<Point> shape{{d(g) / 4.0, d(g) / 4.0}, {d(g) / 4.0, d(g) / 4.0}};
    std::vector<Point> pts;
    std::vector<std::size_t> a;
    for (std::size_t c = 0; c < 3; ++c) {
      const double ox = d(g), oy = d(g);
      for (const auto& s : shape) {
        pts.push_back({s[0] + ox, s[1] + oy});
        a.push_back(c);
      }
    }
    pts.push_back({d(g) / 2.0, d(g) / 2.0});
    a.push_back(0);
    const auto state = make_state(pts, a, 3);
    auto others = a;
    others.pop_back();
    const auto base = make_state(std::span<const Point>(pts.data(), pts.size() - 1), others, 3);
    std::size_t best = 0;
    double best_d = INFINITY;
    bool tie = false;
    for (std::size_t c = 0; c < 3; ++c) {
      double dist = 0;
      for (std::size_t j = 0; j < 2; ++j) {
        const double diff = pts.back()[j] - base.centers[c][j];
        dist += diff * diff;
      }
      if (std::abs(dist - best_d) < 1e-9) {
        tie = true;
      }
      if (dist < best_d - 1e-9) {
        best = c;
        best_d = dist;
        tie = false;
      }
    }
    if (tie) {
      continue;
    }
    ASSERT_EQ(kmeans_assign_point(state, pts, pts.size() - 1), best);
  }
}

TEST(KMeans, RecoversBlobsFromEverySeed) {
  std::mt19937_64 g(107);
  const auto pts = two_blobs(g);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = kmeans_run(pts, 2, seed, 100);
    EXPECT_TRUE(r.converged);
    EXPECT_TRUE(separates_blobs(pts, r.state.assignment)) << "seed " << seed;
  }
}

TEST(KMeans, ObjectiveNeverIncreasesAndStateIsConsistent) {
  std::mt19937_64 g(108);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 3 + g() % 20;
    const std::size_t k = 1 + g() % std::min<std::size_t>(m, 4);
    const auto pts = grid_points(g, m, 2);
    const auto r = kmeans_run(pts, k, g(), 50);
    for (std::size_t i = 1; i < r.objective.size(); ++i) {
      ASSERT_LE(r.objective[i], r.objective[i - 1] + 1e-9);
    }
    ASSERT_NEAR(r.objective.back(), within_cluster_pairwise(pts, r.state.assignment), 1e-9);
    const auto fresh = make_state(pts, r.state.assignment, k);
    ASSERT_EQ(fresh.sizes, r.state.sizes);
    for (std::size_t c = 0; c < k; ++c) {
      ASSERT_EQ(fresh.centers[c], r.state.centers[c]);
    }
  }
}

TEST(KMeans, RejectsTooManyClusters) {
  const std::vector<Point> pts{{0}, {1}};
  EXPECT_THROW(kmeans_run(pts, 3, 0, 10), Error);
}
