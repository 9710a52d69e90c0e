#include "core/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "core/error.hpp"
#include "core/format.hpp"
#include "core/numeric.hpp"
#include "core/parallel.hpp"

namespace lrs::channel {

namespace {

void require_alpha_above_dimension(double alpha, int dimension) {
  if (!(alpha > dimension))
    fail(ErrorKind::domain, "long-range bound not proven for alpha <= D (alpha=" +
                                format_double(alpha) + ", D=" + std::to_string(dimension) + ")");
}

const char* state_name(InitialState s) {
  return s == InitialState::ghz ? "ghz" : "product_plus";
}

}  // namespace

void validate(const ChannelSetup& setup) {
  require(setup.lattice.contains(setup.origin), "channel: origin outside lattice");
  require(setup.alpha >= 0.0 && std::isfinite(setup.alpha), "channel: alpha must be >= 0");
  require(setup.delta >= 1, "channel: receiver distance must be >= 1");
  require(setup.delta <= setup.lattice.max_distance_from(setup.origin),
          "channel: receiver region B is empty (delta beyond lattice)");
}

std::int64_t receiver_size(const ChannelSetup& setup) {
  validate(setup);
  auto table = shell_counts(setup.lattice, setup.origin);
  std::int64_t n = 0;
  for (int l = setup.delta; l <= table.l_max(); ++l) n += table.counts[l];
  return n;
}

double product_signal(const ChannelSetup& setup, double t) {
  validate(setup);
  require(setup.initial_state == InitialState::product_plus,
          "product_signal: setup must use the product_plus initial state");
  require(t >= 0.0, "product_signal: t must be >= 0");
  auto table = shell_counts(setup.lattice, setup.origin);
  // (1 + cos x)/2 = cos²(x/2); the log of each factor is 2 ln|cos(x/2)|.
  CompensatedSum log_sum;
  for (int l = setup.delta; l <= table.l_max(); ++l) {
    if (table.counts[l] == 0) continue;
    double half_phase = t / std::pow(1.0 + l, setup.alpha);
    double c = std::abs(std::cos(half_phase));
    if (c == 0.0) return 1.0;
    log_sum.add(static_cast<double>(table.counts[l]) * 2.0 * std::log(c));
  }
  double p = -std::expm1(log_sum.value());
  return std::clamp(p, 0.0, 1.0);
}

double product_signal_lower_bound(const ChannelSetup& setup, double t) {
  validate(setup);
  require(t >= 0.0, "product_signal_lower_bound: t must be >= 0");
  double window = 0.5 * std::pow(1.0 + setup.delta, setup.alpha);
  if (2.0 * t > std::pow(1.0 + setup.delta, setup.alpha))
    fail(ErrorKind::precondition,
         "product_signal_lower_bound: requires 2t <= (1+delta)^alpha, i.e. t <= " +
             format_double(window));
  auto table = shell_counts(setup.lattice, setup.origin);
  double s = shell_sum(table, setup.delta, 2.0 * setup.alpha);
  return std::clamp(-std::expm1(-0.8 * t * t * s), 0.0, 1.0);
}

double ghz_coupling_sum(const ChannelSetup& setup) {
  validate(setup);
  return shell_sum(shell_counts(setup.lattice, setup.origin), setup.delta, setup.alpha);
}

double ghz_signal(const ChannelSetup& setup, double t) {
  require(setup.initial_state == InitialState::ghz,
          "ghz_signal: setup must use the ghz initial state");
  require(t >= 0.0, "ghz_signal: t must be >= 0");
  double f = ghz_coupling_sum(setup);
  return std::clamp(0.5 * (1.0 - std::cos(kGhzPhaseFactor * t * f)), 0.0, 1.0);
}

double ghz_front_exponent(const Lattice& lattice, double alpha, int delta_lo, int delta_hi) {
  require(alpha >= 0.0, "ghz_front_exponent: alpha must be >= 0");
  require(alpha != static_cast<double>(lattice.dimension()),
          "ghz_front_exponent: alpha must differ from D");
  require(delta_lo >= 1 && delta_hi >= delta_lo + 2,
          "ghz_front_exponent: need at least 3 distinct distances with delta >= 1");
  Site o = lattice.center();
  int l_max = lattice.max_distance_from(o);
  if (l_max < 4 * delta_hi)
    fail(ErrorKind::precondition,
         "ghz_front_exponent: lattice too small, need l_max >= 4*max delta (l_max=" +
             std::to_string(l_max) + ", max delta=" + std::to_string(delta_hi) + ")");
  auto table = shell_counts(lattice, o);
  std::vector<double> x, y;
  for (int d = delta_lo; d <= delta_hi; ++d) {
    x.push_back(std::log(static_cast<double>(d)));
    y.push_back(std::log(shell_sum(table, d, alpha)));
  }
  return fit_line(x, y).slope;
}

SignalCurve sample_curve(const ChannelSetup& setup, CurveKind kind,
                         std::span<const double> times, int workers) {
  validate(setup);
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(times[i] >= 0.0, "signal curve: times must be >= 0");
    require(i == 0 || times[i] > times[i - 1], "signal curve: times must be increasing");
  }
  if (kind == CurveKind::lower_bound) {
    require(setup.initial_state == InitialState::product_plus,
            "signal curve: lower bound exists only for the product_plus state");
    if (!times.empty()) product_signal_lower_bound(setup, times.back());
  }
  SignalCurve curve{std::vector<double>(times.begin(), times.end()),
                    std::vector<double>(times.size()), setup, kind};
  parallel_for(times.size(), workers, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      double t = times[i];
      if (kind == CurveKind::lower_bound)
        curve.p[i] = product_signal_lower_bound(setup, t);
      else if (setup.initial_state == InitialState::ghz)
        curve.p[i] = ghz_signal(setup, t);
      else
        curve.p[i] = product_signal(setup, t);
    }
  });
  return curve;
}

void write_curve(const SignalCurve& curve, const std::string& csv_path,
                 const std::string& meta_path) {
  std::ostringstream csv;
  csv << "t,p\n";
  for (std::size_t i = 0; i < curve.times.size(); ++i)
    csv << format_double(curve.times[i]) << ',' << format_double(curve.p[i]) << '\n';
  write_text_file(csv_path, csv.str());

  const auto& s = curve.setup;
  nlohmann::ordered_json meta;
  meta["alpha"] = s.alpha;
  meta["D"] = s.lattice.dimension();
  meta["extents"] = s.lattice.extents();
  meta["origin"] = s.origin;
  meta["delta"] = s.delta;
  meta["receiver_size"] = receiver_size(s);
  meta["state"] = state_name(s.initial_state);
  meta["kind"] = curve.kind == CurveKind::exact ? "exact" : "lower_bound";
  if (s.initial_state == InitialState::ghz) {
    meta["coupling_sum"] = ghz_coupling_sum(s);
    meta["phase_factor"] = kGhzPhaseFactor;
  }
  write_text_file(meta_path, meta.dump(2) + "\n");
}

double first_crossing(const ChannelSetup& setup, double threshold, double t_max) {
  require(threshold > 0.0 && threshold < 1.0, "first_crossing: threshold must lie in (0,1)");
  require(t_max > 0.0, "first_crossing: t_max must be > 0");
  auto p = [&](double t) {
    return setup.initial_state == InitialState::ghz ? ghz_signal(setup, t)
                                                     : product_signal(setup, t);
  };
  // Coarse scan for the first bracket, then bisect.
  const int scan = 4096;
  double lo = 0.0;
  for (int k = 1; k <= scan; ++k) {
    double hi = t_max * k / scan;
    if (p(hi) >= threshold) {
      while (hi - lo > 1e-9) {
        double mid = 0.5 * (lo + hi);
        (p(mid) >= threshold ? hi : lo) = mid;
      }
      return hi;
    }
    lo = hi;
  }
  return -1.0;
}

void validate(const BoundParams& p) {
  require(p.C > 0 && p.v > 0 && p.xi > 0, "bound params: C, v, xi must be positive");
  require(p.epsilon > 0 && p.epsilon < 1, "bound params: epsilon must lie in (0,1)");
  require(p.size_a >= 1 && p.size_b >= 1, "bound params: region sizes must be positive");
}

double lr_bound_envelope(const BoundParams& params, double alpha, int dimension,
                         int delta, double t) {
  validate(params);
  require(delta >= 0, "lr_bound_envelope: delta must be >= 0");
  require_alpha_above_dimension(alpha, dimension);
  double m = static_cast<double>(std::min(params.size_a, params.size_b));
  return params.C * m * std::expm1(params.v * std::abs(t)) /
         std::pow(1.0 + delta, alpha - dimension);
}

double causal_boundary(const BoundParams& params, double alpha, int dimension, int delta) {
  validate(params);
  require(delta >= 0, "causal_boundary: delta must be >= 0");
  require_alpha_above_dimension(alpha, dimension);
  double m = static_cast<double>(std::min(params.size_a, params.size_b));
  return std::log1p(params.epsilon * std::pow(1.0 + delta, alpha - dimension) / m) / params.v;
}

}  // namespace lrs::channel
