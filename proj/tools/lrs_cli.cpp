// lrs: command-line front end over the lrs C library.
#include <lrs/lrs.h>

#include <cmath>
#include <charconv>
#include <climits>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitConvergence = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LibraryError : std::runtime_error {
  lrs_status status;
  LibraryError(lrs_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
};

void check(lrs_status s) {
  if (s != LRS_OK) throw LibraryError(s, lrs_last_error());
}

int exit_code(lrs_status s) {
  switch (s) {
    case LRS_ERR_INPUT:
    case LRS_ERR_IO: return kExitConfig;
    case LRS_ERR_PRECONDITION:
    case LRS_ERR_DOMAIN:
    case LRS_ERR_EMPTY_FRONT: return kExitDomain;
    case LRS_ERR_CONVERGENCE: return kExitConvergence;
    default: return kExitFailure;
  }
}

template <class H, void (*Destroy)(H)>
class Owned {
 public:
  Owned() = default;
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
  ~Owned() {
    if (h_) Destroy(h_);
  }
  H* out() { return &h_; }
  H get() const { return h_; }
  explicit operator bool() const { return h_ != nullptr; }

 private:
  H h_ = nullptr;
};

using Context = Owned<lrs_context, lrs_context_destroy>;
using Lattice = Owned<lrs_lattice, lrs_lattice_destroy>;
using Curve = Owned<lrs_curve, lrs_curve_destroy>;
using Field = Owned<lrs_field, lrs_field_destroy>;
using Front = Owned<lrs_front, lrs_front_destroy>;
using Scaling = Owned<lrs_scaling, lrs_scaling_destroy>;
using BoundReport = Owned<lrs_bound_report, lrs_bound_report_destroy>;

// CSV cells carry 17 significant digits; summaries use the shortest round trip.
std::string fmt17(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// Flag registry. Each option can also be given as a key of the JSON config
// file; flags given on the command line win.
class Params {
 public:
  template <class T>
  void add(CLI::App* app, const std::string& key, T& var, const std::string& help) {
    Entry e;
    e.key = key;
    e.option = app->add_option("--" + key, var, help)->capture_default_str();
    e.set = [&var, key](const json& v) { assign(var, v, key); };
    e.get = [&var] { return json(var); };
    entries_.push_back(std::move(e));
  }

  void add_flag(CLI::App* app, const std::string& key, bool& var, const std::string& help) {
    Entry e;
    e.key = key;
    e.option = app->add_flag("--" + key, var, help);
    e.set = [&var, key](const json& v) { assign(var, v, key); };
    e.get = [&var] { return json(var); };
    entries_.push_back(std::move(e));
  }

  void apply(const json& cfg) {
    if (!cfg.is_object()) throw ConfigError("config: top level must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      const Entry* e = find(key);
      if (e == nullptr) throw ConfigError("config field '" + key + "': unknown key");
      if (e->option->count() == 0) e->set(value);
    }
  }

  json resolved() const {
    json out = json::object();
    for (const auto& e : entries_) out[e.key] = e.get();
    return out;
  }

 private:
  struct Entry {
    std::string key;
    CLI::Option* option = nullptr;
    std::function<void(const json&)> set;
    std::function<json()> get;
  };

  const Entry* find(const std::string& key) const {
    for (const auto& e : entries_)
      if (e.key == key) return &e;
    return nullptr;
  }

  static void assign(double& var, const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("config field '" + key + "': expected a number");
    var = v.get<double>();
  }
  static void assign(int& var, const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError("config field '" + key + "': expected an integer");
    auto x = v.get<long long>();
    if (x < INT_MIN || x > INT_MAX) throw ConfigError("config field '" + key + "': out of range");
    var = static_cast<int>(x);
  }
  static void assign(bool& var, const json& v, const std::string& key) {
    if (!v.is_boolean()) throw ConfigError("config field '" + key + "': expected true or false");
    var = v.get<bool>();
  }
  static void assign(std::string& var, const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("config field '" + key + "': expected a string");
    var = v.get<std::string>();
  }

  std::vector<Entry> entries_;
};

json load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

template <class T>
T parse_number(const std::string& s, const std::string& key) {
  T v{};
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw ConfigError("field '" + key + "': cannot parse '" + s + "' as a number");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "lo:hi", "lo:" (open above) or ":hi".
std::pair<int, int> parse_window(const std::string& s, const std::string& key) {
  auto parts = split(s, ':');
  if (parts.size() != 2) throw ConfigError("field '" + key + "': expected lo:hi, got '" + s + "'");
  int lo = parts[0].empty() ? 0 : parse_number<int>(parts[0], key);
  int hi = parts[1].empty() ? INT_MAX : parse_number<int>(parts[1], key);
  if (lo > hi) throw ConfigError("field '" + key + "': empty window '" + s + "'");
  return {lo, hi};
}

template <class T>
std::vector<T> parse_list(const std::string& s, const std::string& key) {
  std::vector<T> out;
  for (const auto& p : split(s, ',')) {
    if (p.empty()) throw ConfigError("field '" + key + "': empty list entry in '" + s + "'");
    out.push_back(parse_number<T>(p, key));
  }
  return out;
}

// Comma list, or an inclusive range "lo:hi[:step]".
std::vector<int> parse_int_set(const std::string& s, const std::string& key) {
  if (s.find(':') == std::string::npos) return parse_list<int>(s, key);
  auto parts = split(s, ':');
  if (parts.size() < 2 || parts.size() > 3)
    throw ConfigError("field '" + key + "': expected lo:hi[:step], got '" + s + "'");
  int lo = parse_number<int>(parts[0], key), hi = parse_number<int>(parts[1], key);
  int step = parts.size() == 3 ? parse_number<int>(parts[2], key) : 1;
  if (step <= 0 || lo > hi) throw ConfigError("field '" + key + "': empty range '" + s + "'");
  std::vector<int> out;
  for (long long v = lo; v <= hi; v += step) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<double> time_grid(double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("field 'dt': must be > 0");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw ConfigError("field 'tmax': must be >= 0");
  auto n = static_cast<long long>(std::floor(t_max / dt + 1e-9));
  if (n > 50'000'000) throw ConfigError("field 'dt': time grid too large");
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  for (long long k = 0; k <= n; ++k) t[static_cast<std::size_t>(k)] = static_cast<double>(k) * dt;
  return t;
}

void require_positive(int v, const std::string& key) {
  if (v < 1) throw ConfigError("field '" + key + "': must be >= 1");
}

std::vector<int> extents_of(int length, int dimension) {
  require_positive(length, "length");
  if (dimension < 1 || dimension > 3) throw ConfigError("field 'd': must be 1, 2 or 3");
  return std::vector<int>(static_cast<std::size_t>(dimension), length);
}

// Everything a subcommand needs and produces.
struct Run {
  std::string name;
  Params params;
  std::string config_path;
  std::string out_dir;
  int workers = 0;
  Context ctx;
  std::vector<std::string> artifacts;
  json summary = json::object();
  std::string line;

  std::string path(const std::string& file) {
    artifacts.push_back(file);
    return (fs::path(out_dir) / file).string();
  }
};

lrs_channel_setup channel_setup(double alpha, int delta, int origin, lrs_initial_state state) {
  return {origin, delta, alpha, state};
}

// ---- subcommands ------------------------------------------------------------

struct IsingArgs {
  double alpha = 0.75, J = 1.0, tmax = 2.0, dt = 0.01, epsilon = 1e-3;
  int n = 1001, d = 1, delta_max = -1, origin = -1;
  std::string fit = "3:";
};

void run_ising(Run& run, IsingArgs& a) {
  auto extents = extents_of(a.n, a.d);
  auto times = time_grid(a.tmax, a.dt);
  auto window = parse_window(a.fit, "fit");
  Lattice lat;
  check(lrs_lattice_create(extents.data(), a.d, lat.out()));
  if (a.origin < 0) a.origin = static_cast<int>(lrs_lattice_center(lat.get()));
  if (a.delta_max < 0) {
    // along axis 0 up to the edge
    int64_t stride = lrs_lattice_size(lat.get()) / a.n;
    a.delta_max = a.n - 1 - static_cast<int>(a.origin / stride);
  }
  Field field;
  check(lrs_ising_field(run.ctx.get(), lat.get(), a.J, a.alpha, a.origin, a.delta_max, times.data(),
                        times.size(), field.out()));
  Front front;
  lrs_status fs_ = lrs_extract_front(field.get(), a.epsilon, front.out());
  if (fs_ != LRS_OK && fs_ != LRS_ERR_EMPTY_FRONT) check(fs_);
  lrs_power_fit fit{};
  bool have_fit = front && lrs_fit_power_law(front.get(), window.first, window.second, &fit) == LRS_OK;

  fs::create_directories(run.out_dir);
  check(lrs_field_write(field.get(), run.path("field.csv").c_str(), run.path("field.json").c_str()));
  run.summary["front_rows"] = front ? lrs_front_size(front.get()) : 0;
  std::ostringstream line;
  line << "ising: alpha=" << fmt(a.alpha) << " N=" << lrs_lattice_size(lat.get())
       << " rows=" << a.delta_max << " front=" << (front ? lrs_front_size(front.get()) : 0);
  if (front) check(lrs_front_write(front.get(), run.path("front.csv").c_str()));
  if (have_fit) {
    check(lrs_fit_report_write(front.get(), &fit, run.path("fit.json").c_str()));
    run.summary["q"] = fit.exponent;
    run.summary["fit_points"] = fit.n_points;
    line << " q=" << fmt(fit.exponent);
  } else {
    run.summary["q"] = nullptr;
    line << " q=n/a";
  }
  run.line = line.str();
}

struct ProductArgs {
  double alpha = 0.75, tmax = 1.0, dt = 0.01;
  int length = 1001, d = 1, delta = 10, origin = -1;
};

void run_channel_product(Run& run, ProductArgs& a) {
  auto extents = extents_of(a.length, a.d);
  auto times = time_grid(a.tmax, a.dt);
  Lattice lat;
  check(lrs_lattice_create(extents.data(), a.d, lat.out()));
  if (a.origin < 0) a.origin = static_cast<int>(lrs_lattice_center(lat.get()));
  auto setup = channel_setup(a.alpha, a.delta, a.origin, LRS_STATE_PRODUCT_PLUS);
  Curve exact, bound;
  check(lrs_signal_curve(run.ctx.get(), lat.get(), &setup, LRS_CURVE_EXACT, times.data(),
                         times.size(), exact.out()));
  // the lower bound holds only while 2t <= (1+delta)^alpha
  double t_valid = 0.5 * std::pow(1.0 + a.delta, a.alpha);
  std::vector<double> bound_times;
  for (double t : times)
    if (t <= t_valid) bound_times.push_back(t);
  check(lrs_signal_curve(run.ctx.get(), lat.get(), &setup, LRS_CURVE_LOWER_BOUND,
                         bound_times.data(), bound_times.size(), bound.out()));
  int64_t receivers = 0;
  check(lrs_receiver_size(lat.get(), &setup, &receivers));
  double p_end = 0.0;
  check(lrs_curve_point(exact.get(), lrs_curve_size(exact.get()) - 1, nullptr, &p_end));

  fs::create_directories(run.out_dir);
  check(lrs_curve_write(exact.get(), run.path("signal.csv").c_str(), run.path("signal.json").c_str()));
  check(lrs_curve_write(bound.get(), run.path("lower_bound.csv").c_str(),
                        run.path("lower_bound.json").c_str()));
  run.summary["receivers"] = receivers;
  run.summary["p_at_tmax"] = p_end;
  run.summary["lower_bound_valid_until"] = t_valid;
  run.line = "channel-product: alpha=" + fmt(a.alpha) + " |B|=" + std::to_string(receivers) +
             " p(" + fmt(a.tmax) + ")=" + fmt(p_end);
}

struct GhzArgs {
  double alpha = 1.5, tmax = 1.0, dt = 0.01;
  int length = 4001, d = 1, delta = 10, origin = -1;
  std::string fit = "10:200";
};

void run_channel_ghz(Run& run, GhzArgs& a) {
  auto extents = extents_of(a.length, a.d);
  auto times = time_grid(a.tmax, a.dt);
  auto window = parse_window(a.fit, "fit");
  if (window.second == INT_MAX) throw ConfigError("field 'fit': an upper distance is required");
  Lattice lat;
  check(lrs_lattice_create(extents.data(), a.d, lat.out()));
  if (a.origin < 0) a.origin = static_cast<int>(lrs_lattice_center(lat.get()));
  auto setup = channel_setup(a.alpha, a.delta, a.origin, LRS_STATE_GHZ);
  Curve curve;
  check(lrs_signal_curve(run.ctx.get(), lat.get(), &setup, LRS_CURVE_EXACT, times.data(),
                         times.size(), curve.out()));
  double slope = 0.0;
  check(lrs_ghz_front_exponent(lat.get(), a.alpha, window.first, window.second, &slope));
  std::string coupling = "delta,f\n";
  auto c_setup = channel_setup(a.alpha, 0, lrs_lattice_center(lat.get()), LRS_STATE_GHZ);
  for (int d = window.first; d <= window.second; ++d) {
    c_setup.delta = d;
    double f = 0.0;
    check(lrs_ghz_coupling_sum(lat.get(), &c_setup, &f));
    coupling += std::to_string(d) + "," + fmt17(f) + "\n";
  }

  fs::create_directories(run.out_dir);
  check(lrs_curve_write(curve.get(), run.path("signal.csv").c_str(), run.path("signal.json").c_str()));
  {
    std::ofstream out(run.path("coupling.csv"), std::ios::binary);
    out << coupling;
    if (!out) throw LibraryError(LRS_ERR_IO, "cannot write coupling.csv");
  }
  json report = {{"alpha", a.alpha},
                 {"D", a.d},
                 {"extents", extents},
                 {"window", {window.first, window.second}},
                 {"slope", slope},
                 {"asymptotic_slope", a.d - a.alpha}};
  std::ofstream(run.path("slope.json"), std::ios::binary) << report.dump(2) << "\n";
  run.summary["slope"] = slope;
  run.summary["asymptotic_slope"] = a.d - a.alpha;
  run.line = "channel-ghz: alpha=" + fmt(a.alpha) + " D=" + std::to_string(a.d) +
             " slope=" + fmt(slope) + " (D-alpha=" + fmt(a.d - a.alpha) + ")";
}

struct XxzArgs {
  double alpha = 3.0, jperp = 2.0, jz = 1.0, tmax = 1.5, dt = 0.0025, tolerance = 1e-10,
         epsilon = 1e-2;
  int n = 14, stride = 20, origin = -1, delta_max = -1, krylov_dim = 12, krylov_cap = 30,
      max_sites = 16;
  std::string fit = "3:";
};

void run_xxz(Run& run, XxzArgs& a) {
  auto window = parse_window(a.fit, "fit");
  lrs_quench_config cfg;
  lrs_quench_config_default(&cfg);
  cfg.n_sites = a.n;
  cfg.alpha = a.alpha;
  cfg.j_perp = a.jperp;
  cfg.j_z = a.jz;
  cfg.t_max = a.tmax;
  cfg.dt = a.dt;
  cfg.sample_stride = a.stride;
  if (a.origin < 0) a.origin = (a.n - 1) / 2;
  if (a.delta_max < 0) a.delta_max = a.n - 1 - a.origin;
  cfg.origin = a.origin;
  cfg.delta_max = a.delta_max;
  cfg.krylov_dim = a.krylov_dim;
  cfg.krylov_cap = a.krylov_cap;
  cfg.tolerance = a.tolerance;
  cfg.max_sites = a.max_sites;
  cfg.observables = LRS_OBS_ZZ_CONNECTED | LRS_OBS_PM;
  Field zz, pm, zz_d;
  check(lrs_xxz_quench(run.ctx.get(), &cfg, zz.out(), pm.out()));
  check(lrs_field_destagger(zz.get(), zz_d.out()));
  Front front;
  lrs_status fs_ = lrs_extract_front(zz_d.get(), a.epsilon, front.out());
  if (fs_ != LRS_OK && fs_ != LRS_ERR_EMPTY_FRONT) check(fs_);
  lrs_power_fit fit{};
  bool have_fit = front && lrs_fit_power_law(front.get(), window.first, window.second, &fit) == LRS_OK;

  fs::create_directories(run.out_dir);
  check(lrs_field_write(zz.get(), run.path("zz_connected.csv").c_str(),
                        run.path("zz_connected.json").c_str()));
  check(lrs_field_write(pm.get(), run.path("pm_abs.csv").c_str(), run.path("pm_abs.json").c_str()));
  check(lrs_field_write(zz_d.get(), run.path("zz_destaggered.csv").c_str(),
                        run.path("zz_destaggered.json").c_str()));
  std::string line = "xxz-ed: N=" + std::to_string(a.n) + " alpha=" + fmt(a.alpha) +
                     " front=" + std::to_string(front ? lrs_front_size(front.get()) : 0);
  run.summary["front_rows"] = front ? lrs_front_size(front.get()) : 0;
  if (front) check(lrs_front_write(front.get(), run.path("front.csv").c_str()));
  if (have_fit) {
    check(lrs_fit_report_write(front.get(), &fit, run.path("fit.json").c_str()));
    run.summary["q"] = fit.exponent;
    line += " q=" + fmt(fit.exponent);
  } else {
    run.summary["q"] = nullptr;
    line += " q=n/a";
  }
  run.line = line;
}

struct FrontArgs {
  std::string field, meta, fit = "3:";
  double epsilon = 1e-2;
  bool destagger = false;
};

void run_front(Run& run, FrontArgs& a) {
  if (a.field.empty()) throw ConfigError("field 'field': a correlation field CSV is required");
  auto window = parse_window(a.fit, "fit");
  Field field;
  check(lrs_field_read(a.field.c_str(), a.meta.empty() ? nullptr : a.meta.c_str(), field.out()));
  Field destaggered;
  lrs_field src = field.get();
  if (a.destagger) {
    check(lrs_field_destagger(field.get(), destaggered.out()));
    src = destaggered.get();
  }
  Front front;
  check(lrs_extract_front(src, a.epsilon, front.out()));
  lrs_power_fit fit{};
  check(lrs_fit_power_law(front.get(), window.first, window.second, &fit));

  fs::create_directories(run.out_dir);
  check(lrs_front_write(front.get(), run.path("front.csv").c_str()));
  check(lrs_fit_report_write(front.get(), &fit, run.path("fit.json").c_str()));
  run.summary["q"] = fit.exponent;
  run.summary["prefactor"] = fit.prefactor;
  run.summary["rows"] = lrs_front_size(front.get());
  run.summary["omitted"] = lrs_front_omitted(front.get());
  run.line = "front: rows=" + std::to_string(lrs_front_size(front.get())) +
             " omitted=" + std::to_string(lrs_front_omitted(front.get())) +
             " q=" + fmt(fit.exponent) + " residual=" + fmt(fit.residual);
}

struct ScalingArgs {
  double alpha = 0.25, J = 1.0;
  std::string sizes = "1000,10000,100000", taus = "0.1,1", deltas = "20:120";
};

void run_scaling(Run& run, ScalingArgs& a) {
  auto sizes = parse_list<int64_t>(a.sizes, "sizes");
  auto taus = parse_list<double>(a.taus, "taus");
  auto deltas = parse_int_set(a.deltas, "deltas");
  Scaling sc;
  check(lrs_scaling_study(run.ctx.get(), a.alpha, a.J, sizes.data(), sizes.size(), taus.data(),
                          taus.size(), deltas.data(), deltas.size(), sc.out()));
  fs::create_directories(run.out_dir);
  check(lrs_scaling_write(sc.get(), run.path("values.csv").c_str(),
                          run.path("extrapolated.csv").c_str(), run.path("summary.json").c_str()));
  std::string line = "scaling: alpha=" + fmt(a.alpha);
  json spreads = json::array();
  for (std::size_t s = 0; s < lrs_scaling_series_count(sc.get()); ++s) {
    double spread = 0.0, mean = 0.0;
    check(lrs_scaling_spread(sc.get(), s, &spread, &mean));
    double rel = spread / std::abs(mean);
    spreads.push_back({{"tau", taus[s]}, {"relative_spread", rel}});
    line += " tau=" + fmt(taus[s]) + ":spread/mean=" + fmt(rel);
  }
  run.summary["series"] = spreads;
  run.line = line;
}

struct BoundArgs {
  std::string front;
  double alpha = 3.0, C = 1.0, v = 1.0, xi = 1.0, epsilon = 1e-3;
  int d = 1, size_a = 1, size_b = 1;
  std::string window = "0:";
};

void run_bound(Run& run, BoundArgs& a) {
  if (a.front.empty()) throw ConfigError("field 'front': a front CSV is required");
  auto window = parse_window(a.window, "window");
  Front front;
  check(lrs_front_read(a.front.c_str(), a.epsilon, front.out()));
  lrs_bound_params p{a.C, a.v, a.xi, a.epsilon, a.size_a, a.size_b};
  BoundReport rep;
  check(lrs_compare_with_bound(front.get(), &p, a.alpha, a.d, window.first, window.second,
                               rep.out()));
  fs::create_directories(run.out_dir);
  check(lrs_bound_report_write(rep.get(), run.path("bound.csv").c_str(),
                               run.path("bound.json").c_str()));
  if (lrs_bound_report_empty(rep.get())) {
    run.summary["rows"] = 0;
    run.line = "bound-compare: no front rows inside the window";
    return;
  }
  double mn = 0.0, med = 0.0;
  check(lrs_bound_report_summary(rep.get(), &mn, &med));
  run.summary["rows"] = lrs_bound_report_size(rep.get());
  run.summary["min_ratio"] = mn;
  run.summary["median_ratio"] = med;
  run.line = "bound-compare: rows=" + std::to_string(lrs_bound_report_size(rep.get())) +
             " min_ratio=" + fmt(mn) + " median_ratio=" + fmt(med);
}

std::string default_output_root() {
  const char* env = std::getenv("LRS_OUTPUT_ROOT");
  return env && *env ? env : "lrs_out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation spreading in long-range spin lattices", "lrs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lrs_version()));

  std::vector<std::unique_ptr<Run>> runs;
  auto add = [&](const std::string& name, const std::string& help) {
    auto run = std::make_unique<Run>();
    run->name = name;
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", run->config_path, "JSON file with option values; flags override it");
    sub->add_option("--out", run->out_dir,
                    "output directory (default: $LRS_OUTPUT_ROOT/<subcommand> or lrs_out/<subcommand>)");
    run->params.add(sub, "workers", run->workers, "worker threads, 0 = available parallelism");
    runs.push_back(std::move(run));
    return std::pair{sub, runs.back().get()};
  };

  IsingArgs ising;
  {
    auto [sub, r] = add("ising", "long-range Ising connected <xx> field, front and fit");
    auto& p = r->params;
    p.add(sub, "alpha", ising.alpha, "coupling exponent");
    p.add(sub, "J", ising.J, "coupling strength");
    p.add(sub, "n", ising.n, "linear size per axis");
    p.add(sub, "d", ising.d, "lattice dimension");
    p.add(sub, "tmax", ising.tmax, "final time");
    p.add(sub, "dt", ising.dt, "time step of the grid");
    p.add(sub, "delta-max", ising.delta_max, "largest distance, -1 = to the edge");
    p.add(sub, "origin", ising.origin, "origin site index, -1 = centre");
    p.add(sub, "epsilon", ising.epsilon, "front threshold");
    p.add(sub, "fit", ising.fit, "power-law fit window lo:hi");
  }
  ProductArgs product;
  {
    auto [sub, r] = add("channel-product", "channel signal for a product |+> state");
    auto& p = r->params;
    p.add(sub, "alpha", product.alpha, "coupling exponent");
    p.add(sub, "d", product.d, "lattice dimension");
    p.add(sub, "length", product.length, "linear size per axis");
    p.add(sub, "delta", product.delta, "receiver distance");
    p.add(sub, "origin", product.origin, "sender site, -1 = centre");
    p.add(sub, "tmax", product.tmax, "final time");
    p.add(sub, "dt", product.dt, "time step of the grid");
  }
  GhzArgs ghz;
  {
    auto [sub, r] = add("channel-ghz", "channel signal for a GHZ receiver and f(delta) slope");
    auto& p = r->params;
    p.add(sub, "alpha", ghz.alpha, "coupling exponent");
    p.add(sub, "d", ghz.d, "lattice dimension");
    p.add(sub, "length", ghz.length, "linear size per axis");
    p.add(sub, "delta", ghz.delta, "receiver distance for the signal curve");
    p.add(sub, "origin", ghz.origin, "sender site, -1 = centre");
    p.add(sub, "tmax", ghz.tmax, "final time");
    p.add(sub, "dt", ghz.dt, "time step of the grid");
    p.add(sub, "fit", ghz.fit, "distance window lo:hi for the slope of ln f");
  }
  XxzArgs xxz;
  {
    auto [sub, r] = add("xxz-ed", "long-range XXZ quench from the Neel state by exact evolution");
    auto& p = r->params;
    p.add(sub, "n", xxz.n, "chain length (even)");
    p.add(sub, "alpha", xxz.alpha, "coupling exponent");
    p.add(sub, "jperp", xxz.jperp, "flip-flop coupling");
    p.add(sub, "jz", xxz.jz, "zz coupling");
    p.add(sub, "tmax", xxz.tmax, "final time");
    p.add(sub, "dt", xxz.dt, "propagator step");
    p.add(sub, "stride", xxz.stride, "steps between samples");
    p.add(sub, "origin", xxz.origin, "origin site, -1 = centre");
    p.add(sub, "delta-max", xxz.delta_max, "largest distance, -1 = to the edge");
    p.add(sub, "krylov-dim", xxz.krylov_dim, "nominal Krylov dimension");
    p.add(sub, "krylov-cap", xxz.krylov_cap, "largest Krylov dimension before failing");
    p.add(sub, "tolerance", xxz.tolerance, "per-step residual tolerance");
    p.add(sub, "max-sites", xxz.max_sites, "refuse chains longer than this");
    p.add(sub, "epsilon", xxz.epsilon, "front threshold");
    p.add(sub, "fit", xxz.fit, "power-law fit window lo:hi");
  }
  FrontArgs front;
  {
    auto [sub, r] = add("front", "causal front and power-law fit of a field CSV");
    auto& p = r->params;
    p.add(sub, "field", front.field, "field CSV (delta,t,value)");
    p.add(sub, "meta", front.meta, "optional field metadata JSON");
    p.add(sub, "epsilon", front.epsilon, "front threshold");
    p.add(sub, "fit", front.fit, "power-law fit window lo:hi");
    p.add_flag(sub, "destagger", front.destagger, "use the running maximum of |C| over distance");
  }
  ScalingArgs scaling;
  {
    auto [sub, r] = add("scaling", "finite-size scaling of the Ising correlator at t = tau N^(alpha-1/2)");
    auto& p = r->params;
    p.add(sub, "alpha", scaling.alpha, "coupling exponent");
    p.add(sub, "J", scaling.J, "coupling strength");
    p.add(sub, "sizes", scaling.sizes, "comma-separated chain lengths");
    p.add(sub, "taus", scaling.taus, "comma-separated rescaled times");
    p.add(sub, "deltas", scaling.deltas, "distances: list or lo:hi[:step]");
  }
  BoundArgs bound;
  {
    auto [sub, r] = add("bound-compare", "compare a front with the long-range causal boundary");
    auto& p = r->params;
    p.add(sub, "front", bound.front, "front CSV (delta,t_star)");
    p.add(sub, "alpha", bound.alpha, "coupling exponent (must exceed d)");
    p.add(sub, "d", bound.d, "lattice dimension");
    p.add(sub, "C", bound.C, "bound prefactor");
    p.add(sub, "v", bound.v, "bound velocity");
    p.add(sub, "xi", bound.xi, "bound length scale");
    p.add(sub, "epsilon", bound.epsilon, "threshold defining the boundary");
    p.add(sub, "size-a", bound.size_a, "sender region size");
    p.add(sub, "size-b", bound.size_b, "receiver region size");
    p.add(sub, "window", bound.window, "distance window lo:hi");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  Run* run = nullptr;
  for (auto& r : runs)
    if (app.got_subcommand(r->name)) run = r.get();

  try {
    if (!run->config_path.empty()) run->params.apply(load_config(run->config_path));
    if (run->workers < 0) throw ConfigError("field 'workers': must be >= 0");
    if (run->out_dir.empty()) run->out_dir = (fs::path(default_output_root()) / run->name).string();
    check(lrs_context_create(run->ctx.out()));
    check(lrs_context_set_workers(run->ctx.get(), run->workers));

    const std::string& n = run->name;
    if (n == "ising") run_ising(*run, ising);
    else if (n == "channel-product") run_channel_product(*run, product);
    else if (n == "channel-ghz") run_channel_ghz(*run, ghz);
    else if (n == "xxz-ed") run_xxz(*run, xxz);
    else if (n == "front") run_front(*run, front);
    else if (n == "scaling") run_scaling(*run, scaling);
    else run_bound(*run, bound);

    json manifest = {{"program", "lrs"},
                     {"version", lrs_version()},
                     {"subcommand", run->name},
                     {"config", run->params.resolved()},
                     {"config_file", run->config_path},
                     {"output_dir", run->out_dir},
                     {"artifacts", run->artifacts},
                     {"summary", run->summary}};
    std::ofstream out(fs::path(run->out_dir) / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << "\n";
    if (!out) throw LibraryError(LRS_ERR_IO, "cannot write manifest.json in " + run->out_dir);
    std::cout << run->line << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "lrs " << run->name << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const LibraryError& e) {
    std::cerr << "lrs " << run->name << ": " << lrs_status_name(e.status) << ": " << e.what() << "\n";
    return exit_code(e.status);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "lrs " << run->name << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "lrs " << run->name << ": " << e.what() << "\n";
    return kExitFailure;
  }
}
