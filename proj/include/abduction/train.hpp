#pragma once

// Basic training (focusing, fitting over a finite hypothesis subclass,
// optimal selection) and the Wrapper strategy that repeats it over generated
// parameters and combines the weighted results into one decision.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "abduction/del.hpp"
#include "abduction/error.hpp"

namespace abduction::train {

// ---------------------------------------------------------------------------
// Focusing transforms U: S -> S_q

namespace focus {
struct None {};
/// Observations within distance d_k of `query`, d_k being the distance to
/// the k-th closest observation. Ties at d_k are all kept.
struct NearestSubset {
  std::vector<double> query;
  std::size_t k = 1;
};
/// Observations whose `feature` equals `value`.
struct FeatureValueSubset {
  std::size_t feature = 0;
  double value = 0.0;
};
/// Observations inside the closed box [lower, upper].
struct SubdomainSubset {
  std::vector<double> lower;
  std::vector<double> upper;
};
/// x -> (h_1(x), ..., h_k(x)).
struct BasisExpansion {
  std::vector<del::BasisFunction> basis;
};
}  // namespace focus

using Focusing =
    std::variant<focus::None, focus::NearestSubset, focus::FeatureValueSubset, focus::SubdomainSubset, focus::BasisExpansion>;

struct Focused {
  std::vector<del::Instance> instances;
  /// d_k for NearestSubset, 0 otherwise.
  double radius = 0.0;
};

Focused apply_focusing(const Focusing& u, std::span<const del::Instance> s);

// ---------------------------------------------------------------------------
// Basic training

template <class Param>
struct BasicTrainingConfig {
  /// Empty means no focusing.
  std::function<Focusing(const Param&)> focusing;
  std::function<std::vector<del::Hypothesis>(const Focused&, const Param&)> enumerate;
  std::function<del::ExplanationCriterion(const Focused&, const Param&)> criterion;
  /// Values within this distance of the best so far count as ties, which
  /// the earlier hypothesis wins.
  double tie_tolerance = 0.0;
};

struct Selection {
  del::Hypothesis hypothesis;
  double value = 0.0;
  std::size_t index = 0;       // position in the enumeration
  std::size_t enumerated = 0;  // |F'|
  Focused focused;
};

/// arg min of the criterion over the enumerated hypotheses on S_q; the first
/// minimum in enumeration order wins.
template <class Param>
Selection basic_train(const BasicTrainingConfig<Param>& cfg, std::span<const del::Instance> s, const Param& q) {
  if (s.empty()) {
    throw Error("basic training needs a nonempty training set");
  }
  Focused focused = cfg.focusing ? apply_focusing(cfg.focusing(q), s) : Focused{{s.begin(), s.end()}, 0.0};
  const auto hypotheses = cfg.enumerate(focused, q);
  if (hypotheses.empty()) {
    throw Error("empty hypothesis enumeration");
  }
  const auto criterion = cfg.criterion(focused, q);
  Selection best;
  best.enumerated = hypotheses.size();
  bool have = false;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    const double v = del::criterion_value(criterion, hypotheses[i], focused.instances);
    if (!have || v < best.value - cfg.tie_tolerance) {
      best.hypothesis = hypotheses[i];
      best.value = v;
      best.index = i;
      have = true;
    }
  }
  best.focused = std::move(focused);
  return best;
}

// ---------------------------------------------------------------------------
// Wrapper strategy

template <class Param>
struct IterationRecord {
  Param q;
  del::Hypothesis chosen;
  double value = 0.0;
  double weight = 0.0;
  std::size_t focus_size = 0;
};

template <class Param>
struct TrainingTrace {
  std::vector<IterationRecord<Param>> iterations;
};

template <class Param, class Decision>
struct WrapperConfig {
  Param first;
  /// Successor of q; may consult the trace. nullopt ends generation.
  std::function<std::optional<Param>(const Param&, const TrainingTrace<Param>&)> next;
  std::function<double(const Selection&, const Param&)> weight;
  std::function<bool(const TrainingTrace<Param>&)> stop;
  std::function<Decision(const TrainingTrace<Param>&)> combine;
  /// Hard iteration cap; 0 means |S|.
  std::size_t max_iterations = 0;
};

template <class Param, class Decision>
std::pair<Decision, TrainingTrace<Param>> wrapper_run(const WrapperConfig<Param, Decision>& wcfg,
                                                      const BasicTrainingConfig<Param>& bcfg,
                                                      std::span<const del::Instance> s) {
  const std::size_t cap = wcfg.max_iterations ? wcfg.max_iterations : s.size();
  TrainingTrace<Param> trace;
  std::optional<Param> q = wcfg.first;
  while (q) {
    if (trace.iterations.size() >= cap) {
      throw Error("wrapper loop exceeded its iteration cap");
    }
    auto sel = basic_train(bcfg, s, *q);
    const double w = wcfg.weight ? wcfg.weight(sel, *q) : 0.0;
    trace.iterations.push_back({*q, std::move(sel.hypothesis), sel.value, w, sel.focused.instances.size()});
    if (wcfg.stop && wcfg.stop(trace)) {
      break;
    }
    q = wcfg.next(*q, trace);
  }
  return {wcfg.combine(trace), std::move(trace)};
}

}  // namespace abduction::train
