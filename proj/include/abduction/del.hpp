#pragma once

// Data Explanation Logic: instances, conglomerates M(h, S), alignment
// predicates, deviation functions, badness rules and explanation criteria.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "abduction/agg.hpp"

namespace abduction::del {

enum class Role { observation, hypothesis };

/// Type symbol of an instance. Observations and hypothetical instances may
/// each come in several types, distinguished by `symbol`.
struct Tag {
  Role role = Role::observation;
  std::uint32_t symbol = 0;

  bool observed() const { return role == Role::observation; }
  bool hypothetical() const { return role == Role::hypothesis; }
  friend bool operator==(const Tag&, const Tag&) = default;
};

inline constexpr Tag kObserved{Role::observation, 0};
inline constexpr Tag kHypothetical{Role::hypothesis, 0};

/// One tuple (x, y, tag). Feedback is a vector so that clustering can use a
/// data point as feedback; scalar learners use a single component.
struct Instance {
  std::vector<double> x;
  std::vector<double> y;
  Tag tag;

  double feedback() const { return y.front(); }
};

Instance observation(std::vector<double> x, double y);
Instance hypothetical(std::vector<double> x, double y);

struct Conglomerate {
  std::vector<Instance> instances;
};

double rho_x(const Instance& a, const Instance& b);                     // Euclidean
double rho_x(const Instance& a, const Instance& b, std::size_t feature);  // one coordinate
double rho_y(const Instance& a, const Instance& b);                     // Euclidean on feedback

// ---------------------------------------------------------------------------
// Alignment predicates

namespace align {
/// Hypothetical first, observed second, identical x.
struct Pointwise {};
/// Hypothetical instance at `center` with an observation within `radius` of it.
struct Ball {
  std::vector<double> center;
  double radius = 0.0;
};
/// Any two distinct instances with identical x, both orders.
struct SameX {};
/// Hypothetical first, observed second, equal value of one feature.
struct FeatureEquality {
  std::size_t feature = 0;
};
}  // namespace align

using AlignmentPredicate = std::variant<align::Pointwise, align::Ball, align::SameX, align::FeatureEquality>;

bool aligned(const AlignmentPredicate& pi, const Instance& a, const Instance& b);

/// Index pair into a conglomerate.
struct AlignedPair {
  std::size_t first;
  std::size_t second;
  friend bool operator==(const AlignedPair&, const AlignedPair&) = default;
};

/// All ordered pairs of distinct instances of `m` satisfying `pi`, in
/// lexicographic index order.
std::vector<AlignedPair> aligned_pairs(const AlignmentPredicate& pi, const Conglomerate& m);

using PairTest = std::function<bool(const Instance&, const Instance&)>;
using PairDistance = std::function<double(const Instance&, const Instance&)>;

/// Whether aligned status is downward-closed in x-distance among pairs of
/// distinct instances carrying the same tags.
bool check_alignment_downward_closure(const PairTest& pi, const PairDistance& distance, const Conglomerate& m);
bool check_alignment_downward_closure(const AlignmentPredicate& pi, const Conglomerate& m);

// ---------------------------------------------------------------------------
// Deviation functions t(rho_x, rho_y)

namespace dev {
struct YDist {};
/// log(rho_y), argument clamped from below at eps.
struct LogYDist {
  double eps = 1e-12;
};
struct HalfSquareYDist {};
/// 0 when rho_y < eps, rho_y - eps otherwise.
struct EpsilonInsensitive {
  double eps = 0.0;
};
struct SquareYDist {};
/// 0 when y1 * y2 >= 0, |y1 - y2| otherwise.
struct SignClassYDist {};
}  // namespace dev

using DeviationFunction = std::variant<dev::YDist, dev::LogYDist, dev::HalfSquareYDist, dev::EpsilonInsensitive,
                                       dev::SquareYDist, dev::SignClassYDist>;

/// t evaluated on already computed distances. `y_product` is y1*y2 for
/// scalar feedback and is consulted by SignClassYDist only.
double deviation_value(const DeviationFunction& t, double rho_x, double rho_y, double y_product = 1.0);

double deviation(const DeviationFunction& t, const Instance& a, const Instance& b, std::size_t feature = 0);

agg::DeviationSequence deviation_sequence(const Conglomerate& m, std::span<const AlignedPair> pairs,
                                          const DeviationFunction& t, std::size_t feature = 0);

// ---------------------------------------------------------------------------
// Hypotheses

/// x_feature^degree, or exp(-gamma * |x - center|^2).
struct BasisFunction {
  enum class Kind { power, rbf };
  Kind kind = Kind::power;
  std::size_t feature = 0;
  int degree = 1;
  std::vector<double> center;
  double gamma = 1.0;

  double operator()(std::span<const double> x) const;
  std::string name() const;

  static BasisFunction power(std::size_t feature, int degree);
  static BasisFunction rbf(std::vector<double> center, double gamma);
  /// Parses "x1", "x2^3" (1-based feature) or "rbf:<c1>;<c2>...:<gamma>".
  static BasisFunction parse(const std::string& text);
};

enum class Form { constant, linear, logistic, basis_linear, cluster_assignment, tabulated };

/// An explaining hypothesis together with the finitely many points where it
/// produces hypothetical instances.
///
/// params layout: constant {c}; linear/logistic {w..., b}; basis_linear
/// {w per basis function..., b}; cluster_assignment {cluster id}; tabulated
/// {value per support point}. For cluster_assignment the support points are
/// data vectors and become feedback of instances whose x is the cluster id.
struct Hypothesis {
  Form form = Form::constant;
  std::vector<double> params;
  std::vector<std::vector<double>> support;
  std::vector<BasisFunction> basis;

  double value_at(std::span<const double> x) const;
  std::vector<Instance> hypothetical_instances() const;
};

Hypothesis constant(double c, std::vector<std::vector<double>> support);
Hypothesis linear(std::vector<double> w, double b, std::vector<std::vector<double>> support);
Hypothesis logistic(std::vector<double> w, double b, std::vector<std::vector<double>> support);
Hypothesis basis_linear(std::vector<BasisFunction> basis, std::vector<double> w, double b,
                        std::vector<std::vector<double>> support);
Hypothesis cluster_assignment(std::size_t cluster, std::vector<std::vector<double>> points);
Hypothesis tabulated(std::vector<std::vector<double>> support, std::vector<double> values);

/// Distinct x vectors of the observations, in first-seen order.
std::vector<std::vector<double>> observed_points(std::span<const Instance> s);

/// M(h, S): the observations plus one hypothetical instance per support point.
Conglomerate build_conglomerate(const Hypothesis& h, std::span<const Instance> s);

// ---------------------------------------------------------------------------
// Badness rules and explanation criteria

struct BadnessRule {
  AlignmentPredicate alignment;
  DeviationFunction deviation;
  agg::AggregationSpec aggregation;
  std::size_t feature = 0;
};

/// T_pw: pointwise alignment, |y1 - y2| deviation, averaging.
BadnessRule pointwise_rule();

/// Throws "vacuous badness" when no pair is aligned.
double badness(const BadnessRule& rule, const Hypothesis& h, std::span<const Instance> s);
double badness(const BadnessRule& rule, const Conglomerate& m);

enum class Regularization { none, squared_gradient_norm };

/// Squared norm of the weight part of the parameters (bias excluded).
double regularization_value(const Hypothesis& h);

namespace combine {
struct Single {};
struct WeightedSum {
  std::vector<double> weights;
};
struct OneMinusProductOfComplements {};
}  // namespace combine

using Combining = std::variant<combine::Single, combine::WeightedSum, combine::OneMinusProductOfComplements>;

double combine_values(const Combining& c, std::span<const double> values);

struct ExplanationCriterion {
  std::vector<BadnessRule> rules;
  Regularization regularization = Regularization::none;
  Combining combining = combine::Single{};

  /// Throws when the rule count, regularization and combining disagree.
  void validate() const;
};

/// Combining applied to the per-rule badness values, followed by the
/// regularization value when present.
double criterion_value(const ExplanationCriterion& c, const Hypothesis& h, std::span<const Instance> s);

}  // namespace abduction::del
