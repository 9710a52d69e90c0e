#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "core/channel.hpp"
#include "core/field.hpp"

namespace lrs::analysis {

inline constexpr double kDefaultEpsilonSimulated = 1e-2;
inline constexpr double kDefaultEpsilonAnalytic = 1e-3;
inline constexpr int kDefaultFitMinDelta = 3;

struct DeltaWindow {
  int min = kDefaultFitMinDelta;
  int max = std::numeric_limits<int>::max();
};

struct PowerLawFit {
  double exponent = 0.0;   // q in t* = prefactor · δ^q
  double prefactor = 0.0;
  double residual = 0.0;   // RMS of ln t* residuals
  int n_points = 0;
  DeltaWindow window;
};

struct CausalFront {
  double epsilon = 0.0;
  std::vector<int> distances;
  std::vector<double> arrival;  // t*(δ)
  int omitted = 0;              // rows that never reached ε
  nlohmann::ordered_json source = nlohmann::ordered_json::object();
  std::optional<PowerLawFit> fit;
};

/// Earliest t with |C(δ,t)| >= ε per row, linearly interpolated between the
/// bracketing grid times.
CausalFront extract_front(const CorrelationField& field, double epsilon);

/// OLS of ln t* on ln δ over the window.
PowerLawFit fit_power_law(const CausalFront& front, DeltaWindow window = {});
PowerLawFit fit_power_law(const std::vector<int>& distances, const std::vector<double>& arrival,
                          DeltaWindow window = {});

/// CSV `delta,t_star`.
std::string front_to_csv(const CausalFront& front);
CausalFront front_from_csv(const std::string& text, const std::string& origin_name);
/// {q, prefactor, residual, epsilon, window}.
nlohmann::ordered_json fit_report(const CausalFront& front, const PowerLawFit& fit);

struct Extrapolation {
  double intercept = 0.0;  // value at 1/N -> 0
  double slope = 0.0;      // d value / d(1/N)
  double residual = 0.0;   // RMS
};

/// Linear fit of each column of values[n][δ] against 1/N.
std::vector<Extrapolation> extrapolate_inverse_size(const std::vector<std::int64_t>& sizes,
                                                    const std::vector<std::vector<double>>& values);

struct ScalingSeries {
  double tau = 0.0;
  std::vector<std::int64_t> sizes;
  std::vector<int> distances;
  std::vector<std::vector<double>> values;  // [size][distance]
  std::vector<Extrapolation> extrapolated;  // per distance
  double spread = 0.0;                      // max - min of extrapolated values
  double mean = 0.0;
  double relative_spread() const { return spread / std::abs(mean); }
};

void summarize(ScalingSeries& series);

struct ScalingRequest {
  double alpha = 0.25;
  double J = 1.0;
  std::vector<std::int64_t> sizes;
  std::vector<double> taus;
  std::vector<int> distances;
};

/// Long-range Ising chains of each size, origin at the centre, evaluated at
/// t = τ N^(α-1/2); one series per τ.
std::vector<ScalingSeries> scaling_study(const ScalingRequest& request, int workers = 1);

struct BoundComparison {
  bool empty = true;
  std::vector<int> distances;
  std::vector<double> arrival;
  std::vector<double> boundary;
  std::vector<double> ratios;  // t*(δ) / boundary(δ)
  double min_ratio = 0.0;
  double median_ratio = 0.0;
};

BoundComparison compare_with_bound(const CausalFront& front, const channel::BoundParams& params,
                                   double alpha, int dimension, DeltaWindow window = {0, std::numeric_limits<int>::max()});

nlohmann::ordered_json bound_report(const BoundComparison& cmp, const channel::BoundParams& params,
                                    double alpha, int dimension);

}  // namespace lrs::analysis
