#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/ed_engine.hpp"
#include "core/field.hpp"

namespace lrs::xxz {

enum class Observable { zz_connected, pm };

const char* observable_tag(Observable o);

struct QuenchConfig {
  int n_sites = 14;
  double alpha = 3.0;
  double j_perp = 2.0;
  double j_z = 1.0;
  double t_max = 1.5;
  ed::PropagatorConfig propagator;
  int sample_stride = 20;
  std::vector<Observable> observables{Observable::zz_connected, Observable::pm};
  std::optional<int> origin;     // default: central site
  std::optional<int> delta_max;  // default: up to the right edge
  int max_sites = 16;

  int resolved_origin() const { return origin.value_or((n_sites - 1) / 2); }
  int resolved_delta_max() const { return delta_max.value_or(n_sites - 1 - resolved_origin()); }
  void validate() const;
};

struct QuenchResult {
  std::map<Observable, CorrelationField> fields;
  double magnetization_drift = 0.0;  // max |M(t) - M(0)| over samples
  double energy_drift = 0.0;         // max |E(t) - E(0)| over samples
  int max_krylov_dim = 0;
};

/// Evolves the staggered state |1,0,1,0,...> under the long-range XXZ chain
/// and records, every `sample_stride` steps, <σ^z_oσ^z_{o+δ}>_c and/or
/// |<σ^+_oσ^-_{o+δ}>| for δ = 1..delta_max.
QuenchResult run_quench(const QuenchConfig& cfg, int workers = 1);

/// Running maximum from the right: row'(δ) = max_{i>=δ} row(i).
std::vector<double> destagger(std::span<const double> row);

/// Row of `field` at time index `t_index`, de-staggered over δ.
std::vector<double> destagger(const CorrelationField& field, std::size_t t_index);

/// Applies the running maximum to |C| at every time; tags the observable
/// with a `_destaggered` suffix and records it in the metadata.
CorrelationField destagger_magnitude(const CorrelationField& field);

}  // namespace lrs::xxz
