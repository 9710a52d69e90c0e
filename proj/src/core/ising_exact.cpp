#include "core/ising_exact.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/format.hpp"
#include "core/parallel.hpp"

namespace lrs::ising {

IsingModel::IsingModel(Lattice lattice, double J, double alpha)
    : lattice_(std::move(lattice)), J_(J), alpha_(alpha) {
  require(std::isfinite(J), "ising: J must be finite");
  require(alpha >= 0.0 && std::isfinite(alpha), "ising: alpha must be >= 0");
  int l_max = 0;
  for (int e : lattice_.extents()) l_max += e - 1;
  by_distance_.assign(l_max + 1, 0.0);
  for (int d = 1; d <= l_max; ++d) by_distance_[d] = J_ * std::pow(static_cast<double>(d), -alpha_);
}

double IsingModel::coupling(Site i, Site j) const {
  return coupling_at_distance(lattice_.distance(i, j));
}

namespace {

// Distance lookups specialised for chains, where d = |i - k|.
struct Couplings {
  const IsingModel& model;
  bool chain;

  double operator()(Site i, Site k) const {
    if (chain) return model.coupling_at_distance(static_cast<int>(i > k ? i - k : k - i));
    return model.coupling(i, k);
  }
};

double magnetization_unchecked(const Couplings& J, Site n, Site j, double t) {
  double prod = 1.0;
  for (Site k = 0; k < n; ++k)
    if (k != j) prod *= std::cos(2.0 * t * J(j, k));
  return prod;
}

double xx_unchecked(const Couplings& J, Site n, Site o, Site j, double t) {
  double plus = 1.0, minus = 1.0;
  for (Site k = 0; k < n; ++k) {
    if (k == o || k == j) continue;
    double a = J(o, k), b = J(j, k);
    plus *= std::cos(2.0 * t * (a + b));
    minus *= std::cos(2.0 * t * (a - b));
  }
  return 0.5 * (plus + minus);
}

}  // namespace

double magnetization_x(const IsingModel& model, Site j, double t) {
  require(model.lattice().contains(j), "magnetization_x: site outside lattice");
  require(t >= 0.0, "magnetization_x: t must be >= 0");
  Couplings J{model, model.lattice().dimension() == 1};
  return magnetization_unchecked(J, model.lattice().size(), j, t);
}

double connected_xx(const IsingModel& model, Site o, Site j, double t) {
  const auto& lat = model.lattice();
  require(lat.contains(o) && lat.contains(j), "connected_xx: site outside lattice");
  require(o != j, "connected_xx: sites must differ");
  require(t >= 0.0, "connected_xx: t must be >= 0");
  Couplings J{model, lat.dimension() == 1};
  Site n = lat.size();
  return xx_unchecked(J, n, o, j, t) -
         magnetization_unchecked(J, n, o, t) * magnetization_unchecked(J, n, j, t);
}

CorrelationField correlation_field(const IsingModel& model, Site o, int delta_max,
                                   std::span<const double> times, int workers,
                                   Direction direction) {
  const auto& lat = model.lattice();
  require(lat.contains(o), "correlation_field: origin outside lattice");
  require(delta_max >= 1, "correlation_field: delta_max must be >= 1");
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(times[i] >= 0.0, "correlation_field: times must be >= 0");
    require(i == 0 || times[i] > times[i - 1], "correlation_field: times must be increasing");
  }
  int sign = static_cast<int>(direction);
  std::vector<Site> receivers(delta_max);
  for (int d = 1; d <= delta_max; ++d) receivers[d - 1] = lat.shifted(o, 0, sign * d);

  std::vector<int> deltas(delta_max);
  for (int d = 1; d <= delta_max; ++d) deltas[d - 1] = d;
  CorrelationField field(std::move(deltas), {times.begin(), times.end()}, "xx_connected");

  Couplings J{model, lat.dimension() == 1};
  const Site n = lat.size();
  const std::size_t nt = times.size();
  std::vector<double> m_origin(nt);
  for (std::size_t k = 0; k < nt; ++k) m_origin[k] = magnetization_unchecked(J, n, o, times[k]);

  parallel_for(static_cast<std::size_t>(delta_max) * nt, workers,
               [&](std::size_t begin, std::size_t end) {
                 for (std::size_t idx = begin; idx < end; ++idx) {
                   std::size_t d = idx / nt, k = idx % nt;
                   Site j = receivers[d];
                   double t = times[k];
                   field.values[idx] = xx_unchecked(J, n, o, j, t) -
                                       m_origin[k] * magnetization_unchecked(J, n, j, t);
                 }
               });

  auto& meta = field.metadata;
  meta["model"] = "long_range_ising";
  meta["hamiltonian"] = "H = -sum_{i<j} J dist(i,j)^-alpha sz_i sz_j";
  meta["initial_state"] = "plus_product";
  meta["alpha"] = model.alpha();
  meta["J"] = model.J();
  meta["N"] = n;
  meta["D"] = lat.dimension();
  meta["extents"] = lat.extents();
  meta["origin"] = o;
  meta["direction"] = sign > 0 ? "positive" : "negative";
  return field;
}

}  // namespace lrs::ising
