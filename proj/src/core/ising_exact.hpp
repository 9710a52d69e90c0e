#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "core/field.hpp"
#include "core/lattice.hpp"

namespace lrs::ising {

/// H = -Σ_{i<j} J_ij σ^z_i σ^z_j with J_ij = J · dist(i,j)^(-α).
///
/// Every closed form below assumes the |+>^⊗N initial state. Couplings are
/// evaluated from a per-distance table, never as an N×N matrix.
class IsingModel {
 public:
  IsingModel(Lattice lattice, double J, double alpha);

  const Lattice& lattice() const { return lattice_; }
  double J() const { return J_; }
  double alpha() const { return alpha_; }

  /// J_ij; zero on the diagonal.
  double coupling(Site i, Site j) const;
  double coupling_at_distance(int d) const { return d == 0 ? 0.0 : by_distance_[d]; }

 private:
  Lattice lattice_;
  double J_;
  double alpha_;
  std::vector<double> by_distance_;
};

/// <σ^x_j(t)> = Π_{k≠j} cos(2 J_jk t).
double magnetization_x(const IsingModel& model, Site j, double t);

/// <σ^x_o σ^x_j>(t) - <σ^x_o><σ^x_j>, with
/// <σ^x_o σ^x_j> = ½[Π_k cos(2t(J_ok+J_jk)) + Π_k cos(2t(J_ok-J_jk))], k ∉ {o,j}.
double connected_xx(const IsingModel& model, Site o, Site j, double t);

enum class Direction { positive = 1, negative = -1 };

/// Fills C(δ,t) for receivers displaced δ = 1..delta_max from `o` along
/// axis 0. Observable tag `xx_connected`.
CorrelationField correlation_field(const IsingModel& model, Site o, int delta_max,
                                   std::span<const double> times, int workers = 1,
                                   Direction direction = Direction::positive);

/// τ = t · N^(1/2 - α).
inline double rescaled_time(double t, std::int64_t n_sites, double alpha) {
  return t * std::pow(static_cast<double>(n_sites), 0.5 - alpha);
}
inline double physical_time(double tau, std::int64_t n_sites, double alpha) {
  return tau * std::pow(static_cast<double>(n_sites), alpha - 0.5);
}

}  // namespace lrs::ising
