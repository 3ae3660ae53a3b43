#include "abduction/train.hpp"

#include <algorithm>
#include <cmath>

namespace abduction::train {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error("dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

Focused apply_focusing(const Focusing& u, std::span<const del::Instance> s) {
  return std::visit(
      Overloaded{
          [&](const focus::None&) { return Focused{{s.begin(), s.end()}, 0.0}; },
          [&](const focus::NearestSubset& f) {
            if (f.k < 1 || f.k > s.size()) {
              throw Error("neighborhood size must lie in [1, |S|]");
            }
            std::vector<double> d;
            d.reserve(s.size());
            for (const auto& inst : s) {
              d.push_back(distance(inst.x, f.query));
            }
            auto sorted = d;
            std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(f.k - 1), sorted.end());
            Focused out{{}, sorted[f.k - 1]};
            for (std::size_t i = 0; i < s.size(); ++i) {
              if (d[i] <= out.radius) {
                out.instances.push_back(s[i]);
              }
            }
            return out;
          },
          [&](const focus::FeatureValueSubset& f) {
            Focused out;
            for (const auto& inst : s) {
              if (inst.x.at(f.feature) == f.value) {
                out.instances.push_back(inst);
              }
            }
            return out;
          },
          [&](const focus::SubdomainSubset& f) {
            Focused out;
            for (const auto& inst : s) {
              bool inside = inst.x.size() == f.lower.size() && inst.x.size() == f.upper.size();
              for (std::size_t j = 0; inside && j < inst.x.size(); ++j) {
                inside = inst.x[j] >= f.lower[j] && inst.x[j] <= f.upper[j];
              }
              if (inside) {
                out.instances.push_back(inst);
              }
            }
            return out;
          },
          [&](const focus::BasisExpansion& f) {
            Focused out;
            out.instances.reserve(s.size());
            for (const auto& inst : s) {
              del::Instance e{{}, inst.y, inst.tag};
              e.x.reserve(f.basis.size());
              for (const auto& h : f.basis) {
                e.x.push_back(h(inst.x));
              }
              out.instances.push_back(std::move(e));
            }
            return out;
          },
      },
      u);
}

}  // namespace abduction::train
