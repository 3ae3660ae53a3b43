#include "abduction/del.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "abduction/error.hpp"

namespace abduction::del {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double squared_euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error("dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double euclidean(std::span<const double> a, std::span<const double> b) { return std::sqrt(squared_euclidean(a, b)); }

double dot_plus_bias(std::span<const double> params, std::span<const double> x) {
  if (params.size() != x.size() + 1) {
    throw Error("dimension mismatch");
  }
  double v = params.back();
  for (std::size_t i = 0; i < x.size(); ++i) {
    v += params[i] * x[i];
  }
  return v;
}

}  // namespace

Instance observation(std::vector<double> x, double y) { return Instance{std::move(x), {y}, kObserved}; }
Instance hypothetical(std::vector<double> x, double y) { return Instance{std::move(x), {y}, kHypothetical}; }

double rho_x(const Instance& a, const Instance& b) { return euclidean(a.x, b.x); }

double rho_x(const Instance& a, const Instance& b, std::size_t feature) {
  if (feature >= a.x.size() || feature >= b.x.size()) {
    throw Error("feature index out of range");
  }
  return std::abs(a.x[feature] - b.x[feature]);
}

double rho_y(const Instance& a, const Instance& b) { return euclidean(a.y, b.y); }

// ---------------------------------------------------------------------------

bool aligned(const AlignmentPredicate& pi, const Instance& a, const Instance& b) {
  return std::visit(Overloaded{
                        [&](const align::Pointwise&) {
                          return a.tag.hypothetical() && b.tag.observed() && a.x == b.x;
                        },
                        [&](const align::Ball& ball) {
                          return a.tag.hypothetical() && b.tag.observed() && a.x == ball.center &&
                                 rho_x(a, b) <= ball.radius;
                        },
                        [&](const align::SameX&) { return a.x == b.x; },
                        [&](const align::FeatureEquality& fe) {
                          return a.tag.hypothetical() && b.tag.observed() && rho_x(a, b, fe.feature) == 0.0;
                        },
                    },
                    pi);
}

std::vector<AlignedPair> aligned_pairs(const AlignmentPredicate& pi, const Conglomerate& m) {
  std::vector<AlignedPair> out;
  const auto& inst = m.instances;
  // Equality-keyed predicates are matched through an index; the emitted order
  // is the same lexicographic (first, second) order as the plain scan.
  auto keyed = [&](auto key_of, bool hyp_obs_only) {
    std::map<std::vector<double>, std::vector<std::size_t>> groups;
    for (std::size_t j = 0; j < inst.size(); ++j) {
      if (!hyp_obs_only || inst[j].tag.observed()) {
        groups[key_of(inst[j])].push_back(j);
      }
    }
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (hyp_obs_only && !inst[i].tag.hypothetical()) {
        continue;
      }
      const auto it = groups.find(key_of(inst[i]));
      if (it == groups.end()) {
        continue;
      }
      for (std::size_t j : it->second) {
        if (j != i) {
          out.push_back({i, j});
        }
      }
    }
  };
  std::visit(Overloaded{
                 [&](const align::Pointwise&) { keyed([](const Instance& a) { return a.x; }, true); },
                 [&](const align::SameX&) { keyed([](const Instance& a) { return a.x; }, false); },
                 [&](const align::FeatureEquality& fe) {
                   for (const auto& a : inst) {
                     if (fe.feature >= a.x.size()) {
                       throw Error("feature index out of range");
                     }
                   }
                   keyed([f = fe.feature](const Instance& a) { return std::vector<double>{a.x[f]}; }, true);
                 },
                 [&](const align::Ball&) {
                   for (std::size_t i = 0; i < inst.size(); ++i) {
                     if (!inst[i].tag.hypothetical()) {
                       continue;
                     }
                     for (std::size_t j = 0; j < inst.size(); ++j) {
                       if (i != j && aligned(pi, inst[i], inst[j])) {
                         out.push_back({i, j});
                       }
                     }
                   }
                 },
             },
             pi);
  return out;
}

bool check_alignment_downward_closure(const PairTest& pi, const PairDistance& distance, const Conglomerate& m) {
  // Per (tag, tag) class, every non-aligned pair must lie strictly farther
  // apart than every aligned pair.
  struct Extremes {
    double max_aligned = -std::numeric_limits<double>::infinity();
    double min_other = std::numeric_limits<double>::infinity();
  };
  std::map<std::pair<std::pair<int, std::uint32_t>, std::pair<int, std::uint32_t>>, Extremes> classes;
  const auto& inst = m.instances;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    for (std::size_t j = 0; j < inst.size(); ++j) {
      if (i == j) {
        continue;
      }
      const auto key = std::make_pair(std::make_pair(static_cast<int>(inst[i].tag.role), inst[i].tag.symbol),
                                      std::make_pair(static_cast<int>(inst[j].tag.role), inst[j].tag.symbol));
      auto& e = classes[key];
      const double d = distance(inst[i], inst[j]);
      if (pi(inst[i], inst[j])) {
        e.max_aligned = std::max(e.max_aligned, d);
      } else {
        e.min_other = std::min(e.min_other, d);
      }
    }
  }
  return std::all_of(classes.begin(), classes.end(),
                     [](const auto& kv) { return kv.second.min_other > kv.second.max_aligned; });
}

bool check_alignment_downward_closure(const AlignmentPredicate& pi, const Conglomerate& m) {
  PairDistance distance = [](const Instance& a, const Instance& b) { return rho_x(a, b); };
  if (const auto* fe = std::get_if<align::FeatureEquality>(&pi)) {
    const std::size_t f = fe->feature;
    distance = [f](const Instance& a, const Instance& b) { return rho_x(a, b, f); };
  }
  return check_alignment_downward_closure([&pi](const Instance& a, const Instance& b) { return aligned(pi, a, b); },
                                          distance, m);
}

// ---------------------------------------------------------------------------

double deviation_value(const DeviationFunction& t, double /*rho_x*/, double rho_y, double y_product) {
  return std::visit(Overloaded{
                        [&](const dev::YDist&) { return rho_y; },
                        [&](const dev::LogYDist& d) { return std::log(std::max(rho_y, d.eps)); },
                        [&](const dev::HalfSquareYDist&) { return 0.5 * rho_y * rho_y; },
                        [&](const dev::EpsilonInsensitive& d) { return rho_y < d.eps ? 0.0 : rho_y - d.eps; },
                        [&](const dev::SquareYDist&) { return rho_y * rho_y; },
                        [&](const dev::SignClassYDist&) { return y_product >= 0.0 ? 0.0 : rho_y; },
                    },
                    t);
}

double deviation(const DeviationFunction& t, const Instance& a, const Instance& b, std::size_t feature) {
  const double rx = a.x.empty() ? 0.0 : rho_x(a, b, std::min(feature, a.x.size() - 1));
  // Squared forms skip the root so that they stay exact on grid data.
  if (std::holds_alternative<dev::HalfSquareYDist>(t)) {
    return 0.5 * squared_euclidean(a.y, b.y);
  }
  if (std::holds_alternative<dev::SquareYDist>(t)) {
    return squared_euclidean(a.y, b.y);
  }
  const double product = std::holds_alternative<dev::SignClassYDist>(t) ? a.feedback() * b.feedback() : 1.0;
  return deviation_value(t, rx, rho_y(a, b), product);
}

agg::DeviationSequence deviation_sequence(const Conglomerate& m, std::span<const AlignedPair> pairs,
                                          const DeviationFunction& t, std::size_t feature) {
  agg::DeviationSequence out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    out.push_back(deviation(t, m.instances.at(p.first), m.instances.at(p.second), feature));
  }
  return out;
}

// ---------------------------------------------------------------------------

double BasisFunction::operator()(std::span<const double> x) const {
  if (kind == Kind::power) {
    if (feature >= x.size()) {
      throw Error("basis feature index out of range");
    }
    return std::pow(x[feature], degree);
  }
  return std::exp(-gamma * std::pow(euclidean(x, center), 2));
}

std::string BasisFunction::name() const {
  std::ostringstream os;
  if (kind == Kind::power) {
    os << "x" << feature + 1;
    if (degree != 1) {
      os << "^" << degree;
    }
  } else {
    os << "rbf:";
    for (std::size_t i = 0; i < center.size(); ++i) {
      os << (i ? ";" : "") << center[i];
    }
    os << ":" << gamma;
  }
  return os.str();
}

BasisFunction BasisFunction::power(std::size_t feature, int degree) {
  if (degree < 1) {
    throw Error("basis degree must be positive");
  }
  BasisFunction f;
  f.kind = Kind::power;
  f.feature = feature;
  f.degree = degree;
  return f;
}

BasisFunction BasisFunction::rbf(std::vector<double> center, double gamma) {
  if (!(gamma > 0.0)) {
    throw Error("rbf gamma must be positive");
  }
  BasisFunction f;
  f.kind = Kind::rbf;
  f.center = std::move(center);
  f.gamma = gamma;
  return f;
}

BasisFunction BasisFunction::parse(const std::string& text) {
  try {
    if (text.rfind("rbf:", 0) == 0) {
      const auto last = text.rfind(':');
      if (last <= 4) {
        throw Error("");
      }
      std::vector<double> center;
      std::stringstream cs(text.substr(4, last - 4));
      for (std::string item; std::getline(cs, item, ';');) {
        center.push_back(std::stod(item));
      }
      return rbf(std::move(center), std::stod(text.substr(last + 1)));
    }
    if (text.size() >= 2 && text[0] == 'x') {
      const auto caret = text.find('^');
      std::size_t used = 0;
      const auto feature = std::stoul(text.substr(1, caret == std::string::npos ? std::string::npos : caret - 1), &used);
      if (feature < 1) {
        throw Error("");
      }
      const int degree = caret == std::string::npos ? 1 : std::stoi(text.substr(caret + 1));
      return power(feature - 1, degree);
    }
  } catch (const std::exception&) {
  }
  throw Error("cannot parse basis function '" + text + "'");
}

double Hypothesis::value_at(std::span<const double> x) const {
  switch (form) {
    case Form::constant:
      return params.at(0);
    case Form::linear:
      return dot_plus_bias(params, x);
    case Form::logistic:
      return 1.0 / (1.0 + std::exp(-dot_plus_bias(params, x)));
    case Form::basis_linear: {
      if (params.size() != basis.size() + 1) {
        throw Error("basis/parameter mismatch");
      }
      double v = params.back();
      for (std::size_t i = 0; i < basis.size(); ++i) {
        v += params[i] * basis[i](x);
      }
      return v;
    }
    case Form::tabulated:
      for (std::size_t i = 0; i < support.size(); ++i) {
        if (std::equal(support[i].begin(), support[i].end(), x.begin(), x.end())) {
          return params.at(i);
        }
      }
      throw Error("tabulated hypothesis evaluated off its support");
    case Form::cluster_assignment:
      break;
  }
  throw Error("hypothesis form has no scalar value");
}

std::vector<Instance> Hypothesis::hypothetical_instances() const {
  std::vector<Instance> out;
  out.reserve(support.size());
  if (form == Form::cluster_assignment) {
    for (const auto& point : support) {
      out.push_back(Instance{{params.at(0)}, point, kHypothetical});
    }
    return out;
  }
  for (const auto& point : support) {
    out.push_back(hypothetical(point, value_at(point)));
  }
  return out;
}

Hypothesis constant(double c, std::vector<std::vector<double>> support) {
  return Hypothesis{Form::constant, {c}, std::move(support), {}};
}

Hypothesis linear(std::vector<double> w, double b, std::vector<std::vector<double>> support) {
  w.push_back(b);
  return Hypothesis{Form::linear, std::move(w), std::move(support), {}};
}

Hypothesis logistic(std::vector<double> w, double b, std::vector<std::vector<double>> support) {
  w.push_back(b);
  return Hypothesis{Form::logistic, std::move(w), std::move(support), {}};
}

Hypothesis basis_linear(std::vector<BasisFunction> basis, std::vector<double> w, double b,
                        std::vector<std::vector<double>> support) {
  if (w.size() != basis.size()) {
    throw Error("basis/parameter mismatch");
  }
  w.push_back(b);
  return Hypothesis{Form::basis_linear, std::move(w), std::move(support), std::move(basis)};
}

Hypothesis cluster_assignment(std::size_t cluster, std::vector<std::vector<double>> points) {
  return Hypothesis{Form::cluster_assignment, {static_cast<double>(cluster)}, std::move(points), {}};
}

Hypothesis tabulated(std::vector<std::vector<double>> support, std::vector<double> values) {
  if (support.size() != values.size()) {
    throw Error("tabulated hypothesis needs one value per support point");
  }
  return Hypothesis{Form::tabulated, std::move(values), std::move(support), {}};
}

std::vector<std::vector<double>> observed_points(std::span<const Instance> s) {
  std::vector<std::vector<double>> out;
  for (const auto& inst : s) {
    if (inst.tag.observed() && std::find(out.begin(), out.end(), inst.x) == out.end()) {
      out.push_back(inst.x);
    }
  }
  return out;
}

Conglomerate build_conglomerate(const Hypothesis& h, std::span<const Instance> s) {
  Conglomerate m;
  m.instances.reserve(s.size() + h.support.size());
  if (!s.empty()) {
    const auto n = s.front().x.size();
    const auto ny = s.front().y.size();
    for (const auto& inst : s) {
      if (inst.x.size() != n || inst.y.size() != ny) {
        throw Error("dimension mismatch");
      }
    }
    const auto support_dim = h.form == Form::cluster_assignment ? ny : n;
    for (const auto& p : h.support) {
      if (p.size() != support_dim) {
        throw Error("dimension mismatch");
      }
    }
  }
  m.instances.assign(s.begin(), s.end());
  for (auto& inst : h.hypothetical_instances()) {
    m.instances.push_back(std::move(inst));
  }
  return m;
}

// ---------------------------------------------------------------------------

BadnessRule pointwise_rule() { return BadnessRule{align::Pointwise{}, dev::YDist{}, agg::l1(), 0}; }

double badness(const BadnessRule& rule, const Conglomerate& m) {
  const auto pairs = aligned_pairs(rule.alignment, m);
  if (pairs.empty()) {
    throw Error("vacuous badness");
  }
  const auto feature = std::holds_alternative<align::FeatureEquality>(rule.alignment)
                           ? std::get<align::FeatureEquality>(rule.alignment).feature
                           : rule.feature;
  return agg::aggregate(rule.aggregation, deviation_sequence(m, pairs, rule.deviation, feature));
}

double badness(const BadnessRule& rule, const Hypothesis& h, std::span<const Instance> s) {
  return badness(rule, build_conglomerate(h, s));
}

double regularization_value(const Hypothesis& h) {
  if (h.form != Form::linear && h.form != Form::logistic && h.form != Form::basis_linear) {
    throw Error("regularization undefined for form");
  }
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < h.params.size(); ++i) {
    s += h.params[i] * h.params[i];
  }
  return s;
}

double combine_values(const Combining& c, std::span<const double> values) {
  return std::visit(Overloaded{
                        [&](const combine::Single&) {
                          if (values.size() != 1) {
                            throw Error("single combining expects exactly one value");
                          }
                          return values[0];
                        },
                        [&](const combine::WeightedSum& ws) {
                          if (ws.weights.size() != values.size()) {
                            throw Error("weighted sum expects one weight per component");
                          }
                          double s = 0.0;
                          for (std::size_t i = 0; i < values.size(); ++i) {
                            s += ws.weights[i] * values[i];
                          }
                          return s;
                        },
                        [&](const combine::OneMinusProductOfComplements&) {
                          double p = 1.0;
                          for (double v : values) {
                            p *= 1.0 - v;
                          }
                          return 1.0 - p;
                        },
                    },
                    c);
}

void ExplanationCriterion::validate() const {
  if (rules.empty()) {
    throw Error("explanation criterion needs at least one badness rule");
  }
  const auto components = rules.size() + (regularization == Regularization::none ? 0 : 1);
  const bool single = std::holds_alternative<combine::Single>(combining);
  if ((components == 1) != single) {
    throw Error("single combining is used exactly when there is one component");
  }
  if (const auto* ws = std::get_if<combine::WeightedSum>(&combining)) {
    if (ws->weights.size() != components) {
      throw Error("weighted sum expects one weight per component");
    }
    if (std::any_of(ws->weights.begin(), ws->weights.end(), [](double w) { return !(w >= 0.0); })) {
      throw Error("weighted sum weights must be nonnegative");
    }
  }
}

double criterion_value(const ExplanationCriterion& c, const Hypothesis& h, std::span<const Instance> s) {
  c.validate();
  const auto m = build_conglomerate(h, s);
  std::vector<double> values;
  values.reserve(c.rules.size() + 1);
  for (const auto& rule : c.rules) {
    values.push_back(badness(rule, m));
  }
  if (c.regularization == Regularization::squared_gradient_norm) {
    values.push_back(regularization_value(h));
  }
  return combine_values(c.combining, values);
}

}  // namespace abduction::del
