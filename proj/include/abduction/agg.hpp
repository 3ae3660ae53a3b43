#pragma once

// Aggregation of deviation sequences.
//
// An aggregation maps a finite sequence of deviations to one real and must be
// insensitive to element order and monotone under the sequence order `seq_less`.
// Recursive aggregations are built as normalize(scale(a1) (+) ... (+) scale(am), m)
// from a closed family of scale/compound/normalize functions.

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace abduction::agg {

using DeviationSequence = std::vector<double>;

enum class Scale { identity, square };
enum class Compound { sum, product, max };
enum class Normalize {
  divide_by_n,        // x / n
  nth_root,           // x^(1/n)
  identity,           // x
  sqrt_of_quotient,   // sqrt(x / n)
  sqrt_divided_by_n,  // sqrt(x) / n
};

struct Recursive {
  Scale scale;
  Compound compound;
  Normalize normalize;
};

/// Order statistic with the rule p = r/100 * m: integer p selects the (p+1)-th
/// smallest element, fractional p averages the floor(p)-th and (floor(p)+1)-th.
/// 1-based indices falling outside [1, m] are clamped to the nearest end.
struct Percentile {
  double rank;
};

struct Minimum {};
struct Maximum {};

using AggregationSpec = std::variant<Recursive, Percentile, Minimum, Maximum>;

// Presets.
AggregationSpec l1();          // arithmetic mean
AggregationSpec l2();          // sqrt(sum a^2 / m)
AggregationSpec l2_literal();  // sqrt(sum a^2) / m, not stable on constants
AggregationSpec l3();          // geometric mean
AggregationSpec total();       // plain sum, not stable
AggregationSpec percentile(double rank);
AggregationSpec minimum();
AggregationSpec maximum();

/// True for specs that map every constant sequence to that constant.
bool is_stable(const AggregationSpec& spec);

std::string describe(const AggregationSpec& spec);

double scale(Scale s, double x);
double compound(Compound c, double x, double y);
double normalize(Normalize n, double x, std::size_t count);

/// The fold Sigma(A, |A|) of a recursive spec, before normalization.
double fold(const Recursive& spec, std::span<const double> a);

/// Throws abduction::Error on empty input or a percentile rank outside [0, 100].
double aggregate(const AggregationSpec& spec, std::span<const double> a);

/// A ~ B: equal as multisets.
bool seq_sim(std::span<const double> a, std::span<const double> b);

/// A < B (strict) or A <= B: equal lengths and some bijection pairs every b
/// with a smaller (or not larger) a. Computed by comparing sorted copies.
bool seq_less(std::span<const double> a, std::span<const double> b, bool strict);

}  // namespace abduction::agg
