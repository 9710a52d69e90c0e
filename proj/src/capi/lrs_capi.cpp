#include "lrs/lrs.h"

#include <memory>
#include <new>
#include <string>
#include <vector>

#include "core/analysis.hpp"
#include "core/channel.hpp"
#include "core/error.hpp"
#include "core/field.hpp"
#include "core/format.hpp"
#include "core/ising_exact.hpp"
#include "core/lattice.hpp"
#include "core/xxz_experiment.hpp"

struct lrs_context_s {
  int workers = 0;
};

struct lrs_lattice_s {
  lrs::Lattice lattice;
};

struct lrs_curve_s {
  lrs::channel::SignalCurve curve;
};

struct lrs_field_s {
  lrs::CorrelationField field;
};

struct lrs_front_s {
  lrs::analysis::CausalFront front;
};

struct lrs_scaling_s {
  std::vector<lrs::analysis::ScalingSeries> series;
  double alpha;
  double J;
};

struct lrs_bound_report_s {
  lrs::analysis::BoundComparison cmp;
  lrs::channel::BoundParams params;
  double alpha;
  int dimension;
};

namespace {

thread_local std::string last_error;

lrs_status status_of(lrs::ErrorKind kind) {
  switch (kind) {
    case lrs::ErrorKind::input: return LRS_ERR_INPUT;
    case lrs::ErrorKind::precondition: return LRS_ERR_PRECONDITION;
    case lrs::ErrorKind::domain: return LRS_ERR_DOMAIN;
    case lrs::ErrorKind::convergence: return LRS_ERR_CONVERGENCE;
    case lrs::ErrorKind::empty_front: return LRS_ERR_EMPTY_FRONT;
    case lrs::ErrorKind::io: return LRS_ERR_IO;
  }
  return LRS_ERR_INTERNAL;
}

// Runs f, translating exceptions into a status and the thread's last error.
template <class F>
lrs_status guarded(F&& f) {
  try {
    f();
    return LRS_OK;
  } catch (const lrs::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LRS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LRS_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return LRS_ERR_INTERNAL;
  }
}

template <class T>
T& deref(T* p, const char* what) {
  if (p == nullptr) lrs::fail(lrs::ErrorKind::input, std::string(what) + " is null");
  return *p;
}

int workers_of(lrs_context ctx) { return ctx ? ctx->workers : 1; }

lrs::channel::ChannelSetup make_setup(lrs_lattice lattice, const lrs_channel_setup* setup) {
  const auto& lat = deref(lattice, "lattice").lattice;
  const auto& s = deref(setup, "channel setup");
  lrs::require(s.initial_state == LRS_STATE_PRODUCT_PLUS || s.initial_state == LRS_STATE_GHZ,
               "channel setup: unknown initial state");
  lrs::channel::ChannelSetup out{lat, s.origin < 0 ? lat.center() : s.origin, s.delta, s.alpha,
                                 s.initial_state == LRS_STATE_GHZ
                                     ? lrs::channel::InitialState::ghz
                                     : lrs::channel::InitialState::product_plus};
  lrs::channel::validate(out);
  return out;
}

lrs::channel::BoundParams make_params(const lrs_bound_params* p) {
  const auto& in = deref(p, "bound params");
  lrs::channel::BoundParams out{in.C, in.v, in.xi, in.epsilon, in.size_a, in.size_b};
  lrs::channel::validate(out);
  return out;
}

lrs::analysis::DeltaWindow make_window(int lo, int hi) {
  lrs::require(lo <= hi, "window: min must not exceed max");
  return {lo, hi};
}

const std::string& path_arg(const char* p, const char* what, std::string& storage) {
  if (p == nullptr || *p == '\0') lrs::fail(lrs::ErrorKind::input, std::string(what) + " is empty");
  storage = p;
  return storage;
}

}  // namespace

extern "C" {

uint32_t lrs_abi_version(void) { return LRS_ABI_VERSION; }

const char* lrs_version(void) { return "1.0.0"; }

const char* lrs_last_error(void) { return last_error.c_str(); }

const char* lrs_status_name(lrs_status status) {
  switch (status) {
    case LRS_OK: return "ok";
    case LRS_ERR_INPUT: return "input error";
    case LRS_ERR_PRECONDITION: return "precondition error";
    case LRS_ERR_DOMAIN: return "domain error";
    case LRS_ERR_CONVERGENCE: return "convergence error";
    case LRS_ERR_EMPTY_FRONT: return "empty front";
    case LRS_ERR_IO: return "i/o error";
    case LRS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

// ---- context ----

lrs_status lrs_context_create(lrs_context* out) {
  return guarded([&] { deref(out, "output handle") = new lrs_context_s{}; });
}

void lrs_context_destroy(lrs_context ctx) { delete ctx; }

lrs_status lrs_context_set_workers(lrs_context ctx, int workers) {
  return guarded([&] {
    lrs::require(workers >= 0, "workers must be >= 0");
    deref(ctx, "context").workers = workers;
  });
}

int lrs_context_workers(lrs_context ctx) { return ctx ? ctx->workers : 0; }

// ---- lattice ----

lrs_status lrs_lattice_create(const int* extents, int dimension, lrs_lattice* out) {
  return guarded([&] {
    lrs::require(extents != nullptr && dimension >= 1, "lattice: need at least one extent");
    std::vector<int> e(extents, extents + dimension);
    deref(out, "output handle") = new lrs_lattice_s{lrs::Lattice(std::move(e))};
  });
}

void lrs_lattice_destroy(lrs_lattice lattice) { delete lattice; }

int lrs_lattice_dimension(lrs_lattice lattice) {
  return lattice ? lattice->lattice.dimension() : 0;
}

int64_t lrs_lattice_size(lrs_lattice lattice) { return lattice ? lattice->lattice.size() : 0; }

int64_t lrs_lattice_center(lrs_lattice lattice) {
  return lattice ? lattice->lattice.center() : -1;
}

lrs_status lrs_lattice_distance(lrs_lattice lattice, int64_t i, int64_t j, int* out) {
  return guarded([&] { deref(out, "output") = deref(lattice, "lattice").lattice.distance(i, j); });
}

lrs_status lrs_lattice_shell_counts(lrs_lattice lattice, int64_t origin, int64_t* counts,
                                    size_t capacity, int* l_max) {
  return guarded([&] {
    auto table = lrs::shell_counts(deref(lattice, "lattice").lattice, origin);
    if (l_max) *l_max = table.l_max();
    if (counts)
      for (size_t l = 0; l < capacity && l < table.counts.size(); ++l) counts[l] = table.counts[l];
  });
}

lrs_status lrs_lattice_shell_sum(lrs_lattice lattice, int64_t origin, int delta, double exponent,
                                 double* out) {
  return guarded([&] {
    auto table = lrs::shell_counts(deref(lattice, "lattice").lattice, origin);
    deref(out, "output") = lrs::shell_sum(table, delta, exponent);
  });
}

// ---- channel ----

lrs_status lrs_product_signal(lrs_lattice lattice, const lrs_channel_setup* setup, double t,
                              double* out) {
  return guarded([&] {
    deref(out, "output") = lrs::channel::product_signal(make_setup(lattice, setup), t);
  });
}

lrs_status lrs_product_signal_lower_bound(lrs_lattice lattice, const lrs_channel_setup* setup,
                                          double t, double* out) {
  return guarded([&] {
    deref(out, "output") = lrs::channel::product_signal_lower_bound(make_setup(lattice, setup), t);
  });
}

lrs_status lrs_ghz_signal(lrs_lattice lattice, const lrs_channel_setup* setup, double t,
                          double* out) {
  return guarded(
      [&] { deref(out, "output") = lrs::channel::ghz_signal(make_setup(lattice, setup), t); });
}

lrs_status lrs_ghz_coupling_sum(lrs_lattice lattice, const lrs_channel_setup* setup, double* out) {
  return guarded(
      [&] { deref(out, "output") = lrs::channel::ghz_coupling_sum(make_setup(lattice, setup)); });
}

lrs_status lrs_ghz_front_exponent(lrs_lattice lattice, double alpha, int delta_lo, int delta_hi,
                                  double* slope) {
  return guarded([&] {
    deref(slope, "output") = lrs::channel::ghz_front_exponent(deref(lattice, "lattice").lattice,
                                                              alpha, delta_lo, delta_hi);
  });
}

lrs_status lrs_receiver_size(lrs_lattice lattice, const lrs_channel_setup* setup, int64_t* out) {
  return guarded(
      [&] { deref(out, "output") = lrs::channel::receiver_size(make_setup(lattice, setup)); });
}

lrs_status lrs_signal_curve(lrs_context ctx, lrs_lattice lattice, const lrs_channel_setup* setup,
                            lrs_curve_kind kind, const double* times, size_t n_times,
                            lrs_curve* out) {
  return guarded([&] {
    lrs::require(times != nullptr || n_times == 0, "signal curve: times is null");
    lrs::require(kind == LRS_CURVE_EXACT || kind == LRS_CURVE_LOWER_BOUND,
                 "signal curve: unknown kind");
    auto curve = lrs::channel::sample_curve(
        make_setup(lattice, setup),
        kind == LRS_CURVE_LOWER_BOUND ? lrs::channel::CurveKind::lower_bound
                                      : lrs::channel::CurveKind::exact,
        std::span<const double>(times, n_times), workers_of(ctx));
    deref(out, "output handle") = new lrs_curve_s{std::move(curve)};
  });
}

void lrs_curve_destroy(lrs_curve curve) { delete curve; }

size_t lrs_curve_size(lrs_curve curve) { return curve ? curve->curve.times.size() : 0; }

lrs_status lrs_curve_point(lrs_curve curve, size_t i, double* t, double* p) {
  return guarded([&] {
    const auto& c = deref(curve, "curve").curve;
    lrs::require(i < c.times.size(), "curve: index out of range");
    if (t) *t = c.times[i];
    if (p) *p = c.p[i];
  });
}

lrs_status lrs_curve_write(lrs_curve curve, const char* csv_path, const char* meta_path) {
  return guarded([&] {
    std::string a, b;
    lrs::channel::write_curve(deref(curve, "curve").curve, path_arg(csv_path, "csv path", a),
                              path_arg(meta_path, "metadata path", b));
  });
}

lrs_status lrs_lr_bound_envelope(const lrs_bound_params* params, double alpha, int dimension,
                                 int delta, double t, double* out) {
  return guarded([&] {
    deref(out, "output") =
        lrs::channel::lr_bound_envelope(make_params(params), alpha, dimension, delta, t);
  });
}

lrs_status lrs_causal_boundary(const lrs_bound_params* params, double alpha, int dimension,
                               int delta, double* out) {
  return guarded([&] {
    deref(out, "output") = lrs::channel::causal_boundary(make_params(params), alpha, dimension, delta);
  });
}

// ---- ising ----

lrs_status lrs_ising_magnetization_x(lrs_lattice lattice, double J, double alpha, int64_t site,
                                     double t, double* out) {
  return guarded([&] {
    lrs::ising::IsingModel model(deref(lattice, "lattice").lattice, J, alpha);
    deref(out, "output") = lrs::ising::magnetization_x(model, site, t);
  });
}

lrs_status lrs_ising_connected_xx(lrs_lattice lattice, double J, double alpha, int64_t origin,
                                  int64_t site, double t, double* out) {
  return guarded([&] {
    lrs::ising::IsingModel model(deref(lattice, "lattice").lattice, J, alpha);
    deref(out, "output") = lrs::ising::connected_xx(model, origin, site, t);
  });
}

lrs_status lrs_ising_field(lrs_context ctx, lrs_lattice lattice, double J, double alpha,
                           int64_t origin, int delta_max, const double* times, size_t n_times,
                           lrs_field* out) {
  return guarded([&] {
    lrs::require(times != nullptr && n_times > 0, "ising field: empty time grid");
    const auto& lat = deref(lattice, "lattice").lattice;
    lrs::ising::IsingModel model(lat, J, alpha);
    auto field = lrs::ising::correlation_field(model, origin < 0 ? lat.center() : origin, delta_max,
                                               std::span<const double>(times, n_times),
                                               workers_of(ctx));
    deref(out, "output handle") = new lrs_field_s{std::move(field)};
  });
}

double lrs_rescaled_time(double t, int64_t n_sites, double alpha) {
  return lrs::ising::rescaled_time(t, n_sites, alpha);
}

// ---- xxz ----

void lrs_quench_config_default(lrs_quench_config* cfg) {
  if (!cfg) return;
  lrs::xxz::QuenchConfig d;
  cfg->n_sites = d.n_sites;
  cfg->alpha = d.alpha;
  cfg->j_perp = d.j_perp;
  cfg->j_z = d.j_z;
  cfg->t_max = d.t_max;
  cfg->dt = d.propagator.dt;
  cfg->sample_stride = d.sample_stride;
  cfg->origin = -1;
  cfg->delta_max = 0;
  cfg->krylov_dim = d.propagator.krylov_dim;
  cfg->krylov_cap = d.propagator.krylov_cap;
  cfg->tolerance = d.propagator.tolerance;
  cfg->max_sites = d.max_sites;
  cfg->observables = LRS_OBS_ZZ_CONNECTED | LRS_OBS_PM;
}

lrs_status lrs_xxz_quench(lrs_context ctx, const lrs_quench_config* cfg, lrs_field* zz_out,
                          lrs_field* pm_out) {
  return guarded([&] {
    const auto& c = deref(cfg, "quench config");
    lrs::xxz::QuenchConfig q;
    q.n_sites = c.n_sites;
    q.alpha = c.alpha;
    q.j_perp = c.j_perp;
    q.j_z = c.j_z;
    q.t_max = c.t_max;
    q.propagator = {c.dt, c.krylov_dim, c.krylov_cap, c.tolerance};
    q.sample_stride = c.sample_stride;
    if (c.origin >= 0) q.origin = c.origin;
    if (c.delta_max > 0) q.delta_max = c.delta_max;
    q.max_sites = c.max_sites;
    q.observables.clear();
    if (c.observables & LRS_OBS_ZZ_CONNECTED) {
      lrs::require(zz_out != nullptr, "quench: zz output handle is null");
      q.observables.push_back(lrs::xxz::Observable::zz_connected);
    }
    if (c.observables & LRS_OBS_PM) {
      lrs::require(pm_out != nullptr, "quench: pm output handle is null");
      q.observables.push_back(lrs::xxz::Observable::pm);
    }
    auto result = lrs::xxz::run_quench(q, workers_of(ctx));
    for (auto& [obs, field] : result.fields) {
      field.metadata["magnetization_drift"] = result.magnetization_drift;
      field.metadata["energy_drift"] = result.energy_drift;
      field.metadata["max_krylov_dim_used"] = result.max_krylov_dim;
      auto* handle = new lrs_field_s{std::move(field)};
      (obs == lrs::xxz::Observable::pm ? *pm_out : *zz_out) = handle;
    }
  });
}

// ---- fields ----

void lrs_field_destroy(lrs_field field) { delete field; }

lrs_status lrs_field_shape(lrs_field field, size_t* n_distances, size_t* n_times) {
  return guarded([&] {
    const auto& f = deref(field, "field").field;
    if (n_distances) *n_distances = f.n_distances();
    if (n_times) *n_times = f.n_times();
  });
}

lrs_status lrs_field_distance(lrs_field field, size_t i, int* out) {
  return guarded([&] {
    const auto& f = deref(field, "field").field;
    lrs::require(i < f.n_distances(), "field: distance index out of range");
    deref(out, "output") = f.distances[i];
  });
}

lrs_status lrs_field_time(lrs_field field, size_t k, double* out) {
  return guarded([&] {
    const auto& f = deref(field, "field").field;
    lrs::require(k < f.n_times(), "field: time index out of range");
    deref(out, "output") = f.times[k];
  });
}

lrs_status lrs_field_value(lrs_field field, size_t i, size_t k, double* out) {
  return guarded([&] {
    const auto& f = deref(field, "field").field;
    lrs::require(i < f.n_distances() && k < f.n_times(), "field: index out of range");
    deref(out, "output") = f.at(i, k);
  });
}

const char* lrs_field_observable(lrs_field field) {
  return field ? field->field.observable.c_str() : "";
}

lrs_status lrs_field_write(lrs_field field, const char* csv_path, const char* meta_path) {
  return guarded([&] {
    std::string a;
    lrs::write_field(deref(field, "field").field, path_arg(csv_path, "csv path", a),
                     meta_path ? meta_path : "");
  });
}

lrs_status lrs_field_read(const char* csv_path, const char* meta_path, lrs_field* out) {
  return guarded([&] {
    std::string a;
    auto f = lrs::read_field(path_arg(csv_path, "csv path", a), meta_path ? meta_path : "");
    deref(out, "output handle") = new lrs_field_s{std::move(f)};
  });
}

lrs_status lrs_field_destagger(lrs_field field, lrs_field* out) {
  return guarded([&] {
    auto f = lrs::xxz::destagger_magnitude(deref(field, "field").field);
    deref(out, "output handle") = new lrs_field_s{std::move(f)};
  });
}

// ---- fronts ----

lrs_status lrs_extract_front(lrs_field field, double epsilon, lrs_front* out) {
  return guarded([&] {
    auto front = lrs::analysis::extract_front(deref(field, "field").field, epsilon);
    deref(out, "output handle") = new lrs_front_s{std::move(front)};
  });
}

void lrs_front_destroy(lrs_front front) { delete front; }

size_t lrs_front_size(lrs_front front) { return front ? front->front.distances.size() : 0; }

int lrs_front_omitted(lrs_front front) { return front ? front->front.omitted : 0; }

double lrs_front_epsilon(lrs_front front) { return front ? front->front.epsilon : 0.0; }

lrs_status lrs_front_point(lrs_front front, size_t i, int* delta, double* t_star) {
  return guarded([&] {
    const auto& f = deref(front, "front").front;
    lrs::require(i < f.distances.size(), "front: index out of range");
    if (delta) *delta = f.distances[i];
    if (t_star) *t_star = f.arrival[i];
  });
}

lrs_status lrs_front_write(lrs_front front, const char* csv_path) {
  return guarded([&] {
    std::string a;
    lrs::write_text_file(path_arg(csv_path, "csv path", a),
                         lrs::analysis::front_to_csv(deref(front, "front").front));
  });
}

lrs_status lrs_front_read(const char* csv_path, double epsilon, lrs_front* out) {
  return guarded([&] {
    std::string a;
    const auto& path = path_arg(csv_path, "csv path", a);
    auto f = lrs::analysis::front_from_csv(lrs::read_text_file(path), path);
    f.epsilon = epsilon;
    deref(out, "output handle") = new lrs_front_s{std::move(f)};
  });
}

lrs_status lrs_fit_power_law(lrs_front front, int window_min, int window_max, lrs_power_fit* out) {
  return guarded([&] {
    auto& f = deref(front, "front").front;
    auto fit = lrs::analysis::fit_power_law(f, make_window(window_min, window_max));
    f.fit = fit;
    deref(out, "output") = {fit.exponent, fit.prefactor, fit.residual,
                            fit.n_points, fit.window.min, fit.window.max};
  });
}

lrs_status lrs_fit_report_write(lrs_front front, const lrs_power_fit* fit, const char* json_path) {
  return guarded([&] {
    const auto& in = deref(fit, "fit");
    lrs::analysis::PowerLawFit f{in.exponent, in.prefactor, in.residual, in.n_points,
                                 {in.window_min, in.window_max}};
    std::string a;
    lrs::write_text_file(path_arg(json_path, "json path", a),
                         lrs::analysis::fit_report(deref(front, "front").front, f).dump(2) + "\n");
  });
}

// ---- scaling ----

lrs_status lrs_scaling_study(lrs_context ctx, double alpha, double J, const int64_t* sizes,
                             size_t n_sizes, const double* taus, size_t n_taus,
                             const int* distances, size_t n_distances, lrs_scaling* out) {
  return guarded([&] {
    lrs::require(sizes && taus && distances, "scaling: null input array");
    lrs::analysis::ScalingRequest req{alpha, J, {sizes, sizes + n_sizes}, {taus, taus + n_taus},
                                      {distances, distances + n_distances}};
    auto series = lrs::analysis::scaling_study(req, workers_of(ctx));
    deref(out, "output handle") = new lrs_scaling_s{std::move(series), alpha, J};
  });
}

void lrs_scaling_destroy(lrs_scaling s) { delete s; }

size_t lrs_scaling_series_count(lrs_scaling s) { return s ? s->series.size() : 0; }

lrs_status lrs_scaling_value(lrs_scaling s, size_t series, size_t size_index,
                             size_t distance_index, double* out) {
  return guarded([&] {
    const auto& all = deref(s, "scaling").series;
    lrs::require(series < all.size(), "scaling: series index out of range");
    const auto& v = all[series].values;
    lrs::require(size_index < v.size() && distance_index < v[size_index].size(),
                 "scaling: index out of range");
    deref(out, "output") = v[size_index][distance_index];
  });
}

lrs_status lrs_scaling_extrapolated(lrs_scaling s, size_t series, size_t distance_index,
                                    double* intercept, double* slope) {
  return guarded([&] {
    const auto& all = deref(s, "scaling").series;
    lrs::require(series < all.size(), "scaling: series index out of range");
    const auto& e = all[series].extrapolated;
    lrs::require(distance_index < e.size(), "scaling: distance index out of range");
    if (intercept) *intercept = e[distance_index].intercept;
    if (slope) *slope = e[distance_index].slope;
  });
}

lrs_status lrs_scaling_spread(lrs_scaling s, size_t series, double* spread, double* mean) {
  return guarded([&] {
    const auto& all = deref(s, "scaling").series;
    lrs::require(series < all.size(), "scaling: series index out of range");
    if (spread) *spread = all[series].spread;
    if (mean) *mean = all[series].mean;
  });
}

lrs_status lrs_scaling_write(lrs_scaling s, const char* values_csv, const char* extrap_csv,
                             const char* summary_json) {
  return guarded([&] {
    const auto& sc = deref(s, "scaling");
    using lrs::format_double;
    std::string values = "tau,n,delta,value\n", extrap = "tau,delta,intercept,slope,residual\n";
    nlohmann::ordered_json summary;
    summary["alpha"] = sc.alpha;
    summary["J"] = sc.J;
    summary["series"] = nlohmann::ordered_json::array();
    for (const auto& ser : sc.series) {
      std::string tau = format_double(ser.tau);
      for (size_t n = 0; n < ser.sizes.size(); ++n)
        for (size_t d = 0; d < ser.distances.size(); ++d)
          values += tau + "," + std::to_string(ser.sizes[n]) + "," +
                    std::to_string(ser.distances[d]) + "," + format_double(ser.values[n][d]) + "\n";
      for (size_t d = 0; d < ser.distances.size(); ++d) {
        const auto& e = ser.extrapolated[d];
        extrap += tau + "," + std::to_string(ser.distances[d]) + "," + format_double(e.intercept) +
                  "," + format_double(e.slope) + "," + format_double(e.residual) + "\n";
      }
      summary["series"].push_back({{"tau", ser.tau},
                                   {"sizes", ser.sizes},
                                   {"distances", ser.distances},
                                   {"spread", ser.spread},
                                   {"mean", ser.mean},
                                   {"relative_spread", ser.relative_spread()}});
    }
    std::string a, b, c;
    lrs::write_text_file(path_arg(values_csv, "values csv path", a), values);
    lrs::write_text_file(path_arg(extrap_csv, "extrapolation csv path", b), extrap);
    lrs::write_text_file(path_arg(summary_json, "summary path", c), summary.dump(2) + "\n");
  });
}

// ---- bound comparison ----

lrs_status lrs_compare_with_bound(lrs_front front, const lrs_bound_params* params, double alpha,
                                  int dimension, int window_min, int window_max,
                                  lrs_bound_report* out) {
  return guarded([&] {
    auto p = make_params(params);
    auto cmp = lrs::analysis::compare_with_bound(deref(front, "front").front, p, alpha, dimension,
                                                 make_window(window_min, window_max));
    deref(out, "output handle") = new lrs_bound_report_s{std::move(cmp), p, alpha, dimension};
  });
}

void lrs_bound_report_destroy(lrs_bound_report r) { delete r; }

int lrs_bound_report_empty(lrs_bound_report r) { return r ? (r->cmp.empty ? 1 : 0) : 1; }

size_t lrs_bound_report_size(lrs_bound_report r) { return r ? r->cmp.ratios.size() : 0; }

lrs_status lrs_bound_report_ratio(lrs_bound_report r, size_t i, int* delta, double* ratio) {
  return guarded([&] {
    const auto& c = deref(r, "report").cmp;
    lrs::require(i < c.ratios.size(), "report: index out of range");
    if (delta) *delta = c.distances[i];
    if (ratio) *ratio = c.ratios[i];
  });
}

lrs_status lrs_bound_report_summary(lrs_bound_report r, double* min_ratio, double* median_ratio) {
  return guarded([&] {
    const auto& c = deref(r, "report").cmp;
    lrs::require(!c.empty, "report: empty comparison has no summary");
    if (min_ratio) *min_ratio = c.min_ratio;
    if (median_ratio) *median_ratio = c.median_ratio;
  });
}

lrs_status lrs_bound_report_write(lrs_bound_report r, const char* csv_path, const char* json_path) {
  return guarded([&] {
    const auto& rep = deref(r, "report");
    using lrs::format_double;
    std::string csv = "delta,t_star,t_bound,ratio\n";
    for (size_t i = 0; i < rep.cmp.ratios.size(); ++i)
      csv += std::to_string(rep.cmp.distances[i]) + "," + format_double(rep.cmp.arrival[i]) + "," +
             format_double(rep.cmp.boundary[i]) + "," + format_double(rep.cmp.ratios[i]) + "\n";
    std::string a, b;
    lrs::write_text_file(path_arg(csv_path, "csv path", a), csv);
    lrs::write_text_file(path_arg(json_path, "json path", b),
                         lrs::analysis::bound_report(rep.cmp, rep.params, rep.alpha, rep.dimension)
                                 .dump(2) +
                             "\n");
  });
}

}  // extern "C"
