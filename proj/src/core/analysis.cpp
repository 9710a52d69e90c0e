#include "core/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "core/error.hpp"
#include "core/format.hpp"
#include "core/ising_exact.hpp"
#include "core/numeric.hpp"
#include "core/parallel.hpp"

namespace lrs::analysis {

CausalFront extract_front(const CorrelationField& field, double epsilon) {
  field.validate();
  require(epsilon > 0.0 && epsilon < 1.0, "extract_front: epsilon must lie in (0,1)");
  double peak = 0.0;
  for (double v : field.values) peak = std::max(peak, std::abs(v));
  if (!(epsilon < peak))
    fail(ErrorKind::empty_front, "extract_front: no row reaches epsilon=" + format_double(epsilon) +
                                     " (max |C| = " + format_double(peak) +
                                     "); try a smaller epsilon");

  CausalFront front;
  front.epsilon = epsilon;
  front.source["observable"] = field.observable;
  front.source["metadata"] = field.metadata;
  const auto& t = field.times;
  for (std::size_t d = 0; d < field.n_distances(); ++d) {
    std::optional<double> hit;
    for (std::size_t k = 0; k < field.n_times(); ++k) {
      double c = std::abs(field.at(d, k));
      if (c < epsilon) continue;
      if (k == 0) {
        hit = t[0];
      } else {
        double c0 = std::abs(field.at(d, k - 1));
        hit = t[k - 1] + (epsilon - c0) / (c - c0) * (t[k] - t[k - 1]);
      }
      break;
    }
    if (hit) {
      front.distances.push_back(field.distances[d]);
      front.arrival.push_back(*hit);
    } else {
      ++front.omitted;
    }
  }
  return front;
}

PowerLawFit fit_power_law(const std::vector<int>& distances, const std::vector<double>& arrival,
                          DeltaWindow window) {
  require(distances.size() == arrival.size(), "fit_power_law: size mismatch");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (distances[i] < window.min || distances[i] > window.max) continue;
    require(distances[i] > 0 && arrival[i] > 0.0,
            "fit_power_law: distances and arrival times in the window must be positive");
    x.push_back(std::log(static_cast<double>(distances[i])));
    y.push_back(std::log(arrival[i]));
  }
  std::vector<double> distinct = x;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3)
    fail(ErrorKind::input, "fit_power_law: need at least 3 distinct distances in window [" +
                               std::to_string(window.min) + ", " + std::to_string(window.max) +
                               "], found " + std::to_string(distinct.size()));
  auto line = fit_line(x, y);
  PowerLawFit fit;
  fit.exponent = line.slope;
  fit.prefactor = std::exp(line.intercept);
  fit.residual = line.rms_residual;
  fit.n_points = static_cast<int>(x.size());
  fit.window = window;
  return fit;
}

PowerLawFit fit_power_law(const CausalFront& front, DeltaWindow window) {
  return fit_power_law(front.distances, front.arrival, window);
}

std::string front_to_csv(const CausalFront& front) {
  std::string out = "delta,t_star\n";
  for (std::size_t i = 0; i < front.distances.size(); ++i)
    out += std::to_string(front.distances[i]) + "," + format_double(front.arrival[i]) + "\n";
  return out;
}

CausalFront front_from_csv(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "delta,t_star")
    fail(ErrorKind::input, name + ":1: expected header 'delta,t_star'");
  CausalFront front;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::string where = name + ":" + std::to_string(lineno);
    auto comma = line.find(',');
    if (comma == std::string::npos) fail(ErrorKind::input, where + ": expected two columns");
    int d = 0;
    double t = 0;
    auto r1 = std::from_chars(line.data(), line.data() + comma, d);
    auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), t);
    if (r1.ec != std::errc() || r1.ptr != line.data() + comma || r2.ec != std::errc() ||
        r2.ptr != line.data() + line.size())
      fail(ErrorKind::input, where + ": cannot parse row '" + line + "'");
    if (!front.distances.empty() && d <= front.distances.back())
      fail(ErrorKind::input, where + ": distances must be increasing");
    if (!(t >= 0.0)) fail(ErrorKind::input, where + ": t_star must be >= 0");
    front.distances.push_back(d);
    front.arrival.push_back(t);
  }
  if (front.distances.empty()) fail(ErrorKind::input, name + ": no data rows");
  return front;
}

nlohmann::ordered_json fit_report(const CausalFront& front, const PowerLawFit& fit) {
  nlohmann::ordered_json j;
  j["q"] = fit.exponent;
  j["prefactor"] = fit.prefactor;
  j["residual"] = fit.residual;
  j["epsilon"] = front.epsilon;
  j["window"] = {fit.window.min, fit.window.max};
  j["n_points"] = fit.n_points;
  j["omitted_rows"] = front.omitted;
  return j;
}

std::vector<Extrapolation> extrapolate_inverse_size(const std::vector<std::int64_t>& sizes,
                                                    const std::vector<std::vector<double>>& values) {
  require(sizes.size() >= 2, "scaling: need at least 2 system sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    require(sizes[i] > sizes[i - 1], "scaling: sizes must be strictly increasing");
  require(values.size() == sizes.size(), "scaling: one value row per size required");
  std::size_t nd = values.front().size();
  for (const auto& row : values) require(row.size() == nd, "scaling: ragged value table");
  std::vector<double> inv;
  for (auto n : sizes) inv.push_back(1.0 / static_cast<double>(n));
  std::vector<Extrapolation> out(nd);
  for (std::size_t d = 0; d < nd; ++d) {
    std::vector<double> y;
    for (const auto& row : values) y.push_back(row[d]);
    auto line = fit_line(inv, y);
    out[d] = {line.intercept, line.slope, line.rms_residual};
  }
  return out;
}

void summarize(ScalingSeries& s) {
  s.extrapolated = extrapolate_inverse_size(s.sizes, s.values);
  double lo = s.extrapolated.front().intercept, hi = lo;
  CompensatedSum sum;
  for (const auto& e : s.extrapolated) {
    lo = std::min(lo, e.intercept);
    hi = std::max(hi, e.intercept);
    sum.add(e.intercept);
  }
  s.spread = hi - lo;
  s.mean = sum.value() / static_cast<double>(s.extrapolated.size());
}

std::vector<ScalingSeries> scaling_study(const ScalingRequest& req, int workers) {
  require(!req.taus.empty() && !req.distances.empty(), "scaling: tau and delta lists must be nonempty");
  require(req.sizes.size() >= 2, "scaling: need at least 2 system sizes");
  for (std::size_t i = 1; i < req.sizes.size(); ++i)
    require(req.sizes[i] > req.sizes[i - 1], "scaling: sizes must be strictly increasing");
  for (double tau : req.taus) require(tau >= 0.0, "scaling: tau must be >= 0");
  for (int d : req.distances) require(d >= 1, "scaling: distances must be >= 1");

  std::vector<ScalingSeries> out;
  for (double tau : req.taus) {
    ScalingSeries s;
    s.tau = tau;
    s.sizes = req.sizes;
    s.distances = req.distances;
    out.push_back(std::move(s));
  }
  for (std::size_t ni = 0; ni < req.sizes.size(); ++ni) {
    auto n = req.sizes[ni];
    require(n <= std::numeric_limits<int>::max(), "scaling: size too large");
    ising::IsingModel model(Lattice::chain(static_cast<int>(n)), req.J, req.alpha);
    Site o = model.lattice().center();
    for (int d : req.distances)
      require(o + d < n, "scaling: distance " + std::to_string(d) + " exceeds chain of " +
                             std::to_string(n));
    const std::size_t nd = req.distances.size(), ntau = req.taus.size();
    std::vector<double> flat(nd * ntau);
    parallel_for(flat.size(), workers, [&](std::size_t b, std::size_t e) {
      for (std::size_t idx = b; idx < e; ++idx) {
        std::size_t ti = idx / nd, di = idx % nd;
        double t = ising::physical_time(req.taus[ti], n, req.alpha);
        flat[idx] = ising::connected_xx(model, o, o + req.distances[di], t);
      }
    });
    for (std::size_t ti = 0; ti < ntau; ++ti)
      out[ti].values.emplace_back(flat.begin() + ti * nd, flat.begin() + (ti + 1) * nd);
  }
  for (auto& s : out) summarize(s);
  return out;
}

BoundComparison compare_with_bound(const CausalFront& front, const channel::BoundParams& params,
                                   double alpha, int dimension, DeltaWindow window) {
  channel::validate(params);
  // Surface the domain error even when the window is empty.
  channel::causal_boundary(params, alpha, dimension, 0);
  BoundComparison cmp;
  for (std::size_t i = 0; i < front.distances.size(); ++i) {
    int d = front.distances[i];
    if (d < window.min || d > window.max) continue;
    double tb = channel::causal_boundary(params, alpha, dimension, d);
    cmp.distances.push_back(d);
    cmp.arrival.push_back(front.arrival[i]);
    cmp.boundary.push_back(tb);
    cmp.ratios.push_back(front.arrival[i] / tb);
  }
  cmp.empty = cmp.ratios.empty();
  if (!cmp.empty) {
    std::vector<double> sorted = cmp.ratios;
    std::sort(sorted.begin(), sorted.end());
    cmp.min_ratio = sorted.front();
    std::size_t n = sorted.size();
    cmp.median_ratio = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  }
  return cmp;
}

nlohmann::ordered_json bound_report(const BoundComparison& cmp, const channel::BoundParams& p,
                                    double alpha, int dimension) {
  nlohmann::ordered_json j;
  j["empty"] = cmp.empty;
  j["alpha"] = alpha;
  j["D"] = dimension;
  j["params"] = {{"C", p.C}, {"v", p.v}, {"xi", p.xi}, {"epsilon", p.epsilon},
                 {"size_a", p.size_a}, {"size_b", p.size_b}};
  j["n_points"] = cmp.ratios.size();
  if (!cmp.empty) {
    j["min_ratio"] = cmp.min_ratio;
    j["median_ratio"] = cmp.median_ratio;
  } else {
    j["min_ratio"] = nullptr;
    j["median_ratio"] = nullptr;
  }
  return j;
}

}  // namespace lrs::analysis
