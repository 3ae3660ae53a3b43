#include "abduction/agg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "abduction/error.hpp"

namespace abduction::agg {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::vector<double> sorted_copy(std::span<const double> a) {
  std::vector<double> s(a.begin(), a.end());
  std::sort(s.begin(), s.end());
  return s;
}

double percentile_of(double rank, std::span<const double> a) {
  if (!(rank >= 0.0 && rank <= 100.0)) {
    throw Error("percentile rank must lie in [0, 100]");
  }
  const auto s = sorted_copy(a);
  const auto m = static_cast<long>(s.size());
  const double p = rank * static_cast<double>(m) / 100.0;
  const double q = std::floor(p);
  // 1-based index -> clamped 0-based position.
  auto at = [&](long one_based) { return s[static_cast<std::size_t>(std::clamp(one_based, 1L, m) - 1)]; };
  if (p == q) {
    return at(static_cast<long>(q) + 1);
  }
  return (at(static_cast<long>(q)) + at(static_cast<long>(q) + 1)) / 2.0;
}

}  // namespace

AggregationSpec l1() { return Recursive{Scale::identity, Compound::sum, Normalize::divide_by_n}; }
AggregationSpec l2() { return Recursive{Scale::square, Compound::sum, Normalize::sqrt_of_quotient}; }
AggregationSpec l2_literal() { return Recursive{Scale::square, Compound::sum, Normalize::sqrt_divided_by_n}; }
AggregationSpec l3() { return Recursive{Scale::identity, Compound::product, Normalize::nth_root}; }
AggregationSpec total() { return Recursive{Scale::identity, Compound::sum, Normalize::identity}; }

AggregationSpec percentile(double rank) {
  if (!(rank >= 0.0 && rank <= 100.0)) {
    throw Error("percentile rank must lie in [0, 100]");
  }
  return Percentile{rank};
}

AggregationSpec minimum() { return Minimum{}; }
AggregationSpec maximum() { return Maximum{}; }

bool is_stable(const AggregationSpec& spec) {
  return std::visit(Overloaded{
                        [](const Recursive& r) {
                          if (r.compound == Compound::max) {
                            return r.scale == Scale::identity && r.normalize == Normalize::identity;
                          }
                          if (r.compound == Compound::sum) {
                            return (r.scale == Scale::identity && r.normalize == Normalize::divide_by_n) ||
                                   (r.scale == Scale::square && r.normalize == Normalize::sqrt_of_quotient);
                          }
                          return r.scale == Scale::identity && r.normalize == Normalize::nth_root;
                        },
                        [](const auto&) { return true; },
                    },
                    spec);
}

std::string describe(const AggregationSpec& spec) {
  return std::visit(Overloaded{
                        [](const Recursive& r) -> std::string {
                          static const char* scales[] = {"identity", "square"};
                          static const char* compounds[] = {"sum", "product", "max"};
                          static const char* norms[] = {"divide_by_n", "nth_root", "identity", "sqrt_of_quotient",
                                                        "sqrt_divided_by_n"};
                          std::ostringstream os;
                          os << "recursive(" << scales[static_cast<int>(r.scale)] << ","
                             << compounds[static_cast<int>(r.compound)] << "," << norms[static_cast<int>(r.normalize)]
                             << ")";
                          return os.str();
                        },
                        [](const Percentile& p) -> std::string {
                          std::ostringstream os;
                          os << "percentile(" << p.rank << ")";
                          return os.str();
                        },
                        [](const Minimum&) -> std::string { return "min"; },
                        [](const Maximum&) -> std::string { return "max"; },
                    },
                    spec);
}

double scale(Scale s, double x) {
  switch (s) {
    case Scale::identity:
      return x;
    case Scale::square:
      return x * x;
  }
  return x;
}

double compound(Compound c, double x, double y) {
  switch (c) {
    case Compound::sum:
      return x + y;
    case Compound::product:
      return x * y;
    case Compound::max:
      return std::max(x, y);
  }
  return x;
}

double normalize(Normalize n, double x, std::size_t count) {
  const auto m = static_cast<double>(count);
  switch (n) {
    case Normalize::divide_by_n:
      return x / m;
    case Normalize::nth_root:
      return std::pow(x, 1.0 / m);
    case Normalize::identity:
      return x;
    case Normalize::sqrt_of_quotient:
      return std::sqrt(x / m);
    case Normalize::sqrt_divided_by_n:
      return std::sqrt(x) / m;
  }
  return x;
}

double fold(const Recursive& spec, std::span<const double> a) {
  if (a.empty()) {
    throw Error("empty aggregation input");
  }
  double acc = scale(spec.scale, a[0]);
  for (std::size_t i = 1; i < a.size(); ++i) {
    acc = compound(spec.compound, acc, scale(spec.scale, a[i]));
  }
  return acc;
}

double aggregate(const AggregationSpec& spec, std::span<const double> a) {
  if (a.empty()) {
    throw Error("empty aggregation input");
  }
  return std::visit(Overloaded{
                        [&](const Recursive& r) { return normalize(r.normalize, fold(r, a), a.size()); },
                        [&](const Percentile& p) { return percentile_of(p.rank, a); },
                        [&](const Minimum&) { return *std::min_element(a.begin(), a.end()); },
                        [&](const Maximum&) { return *std::max_element(a.begin(), a.end()); },
                    },
                    spec);
}

bool seq_sim(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() && sorted_copy(a) == sorted_copy(b);
}

bool seq_less(std::span<const double> a, std::span<const double> b, bool strict) {
  if (a.size() != b.size()) {
    return false;
  }
  const auto sa = sorted_copy(a);
  const auto sb = sorted_copy(b);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (strict ? !(sb[i] > sa[i]) : !(sb[i] >= sa[i])) {
      return false;
    }
  }
  return true;
}

}  // namespace abduction::agg
