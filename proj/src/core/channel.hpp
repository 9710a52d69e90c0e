#pragma once

#include <span>
#include <string>
#include <vector>

#include "core/lattice.hpp"

namespace lrs::channel {

enum class InitialState { product_plus, ghz };
enum class CurveKind { exact, lower_bound };

/// Sender A = {origin}; receiver B = every site at distance >= delta.
struct ChannelSetup {
  Lattice lattice;
  Site origin;
  int delta;
  double alpha;
  InitialState initial_state;
};

void validate(const ChannelSetup& setup);
std::int64_t receiver_size(const ChannelSetup& setup);

/// Phase accumulated per unit time and unit coupling by the GHZ receiver
/// block. A direct 2^n simulation of the channel Hamiltonian fixes it to 2,
/// the same factor that appears in the single-site product-state phases.
inline constexpr double kGhzPhaseFactor = 2.0;

/// p_t = 1 - Π_{j∈B} (1 + cos(2t/(1+d_j)^α)) / 2, summed in log space.
double product_signal(const ChannelSetup& setup, double t);

/// 1 - exp(-(4t²/5) Σ_{j∈B} (1+d_j)^(-2α)); valid while 2t <= (1+δ)^α.
double product_signal_lower_bound(const ChannelSetup& setup, double t);

/// f(δ) = Σ_{j∈B} (1+d_j)^(-α).
double ghz_coupling_sum(const ChannelSetup& setup);

/// p_t = 1 - (1 + cos(kGhzPhaseFactor · t · f(δ))) / 2.
double ghz_signal(const ChannelSetup& setup, double t);

/// Least-squares slope of ln f(δ) against ln δ over every integer δ in
/// [delta_lo, delta_hi]. Asymptotically D - α for α > D.
double ghz_front_exponent(const Lattice& lattice, double alpha, int delta_lo, int delta_hi);

struct SignalCurve {
  std::vector<double> times;
  std::vector<double> p;
  ChannelSetup setup;
  CurveKind kind;
};

SignalCurve sample_curve(const ChannelSetup& setup, CurveKind kind,
                         std::span<const double> times, int workers = 1);

/// CSV `t,p` plus a JSON sidecar with α, D, δ, |B| and state kind.
void write_curve(const SignalCurve& curve, const std::string& csv_path,
                 const std::string& meta_path);

/// First time the analytic curve reaches `threshold`, by bisection to
/// 1e-9 in t on [0, t_max]. Returns a negative value if never reached.
double first_crossing(const ChannelSetup& setup, double threshold, double t_max);

// Long-range Lieb-Robinson envelope and causal region. Printed forms of the
// envelope carry (1+δ)^(D-α); the region is quoted as growing
// logarithmically, which needs the exponent α-D used here.

struct BoundParams {
  double C = 1.0;
  double v = 1.0;
  double xi = 1.0;
  double epsilon = 1e-3;
  std::int64_t size_a = 1;
  std::int64_t size_b = 1;
};

void validate(const BoundParams& params);

/// C · min(|A|,|B|) · (e^{v|t|} - 1) / (1+δ)^{α-D}; requires α > D.
double lr_bound_envelope(const BoundParams& params, double alpha, int dimension,
                         int delta, double t);

/// t* = ln[1 + ε (1+δ)^{α-D} / min(|A|,|B|)] / v; requires α > D.
double causal_boundary(const BoundParams& params, double alpha, int dimension, int delta);

}  // namespace lrs::channel
