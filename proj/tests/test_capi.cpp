#include "doctest.h"

#include <lrs/lrs.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Chain {
  lrs_lattice h = nullptr;
  explicit Chain(std::vector<int> extents) {
    REQUIRE(lrs_lattice_create(extents.data(), static_cast<int>(extents.size()), &h) == LRS_OK);
  }
  ~Chain() { lrs_lattice_destroy(h); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(lrs_abi_version() == LRS_ABI_VERSION);
  CHECK(std::strlen(lrs_version()) > 0);
  CHECK(std::string(lrs_status_name(LRS_ERR_DOMAIN)) == "domain error");
  CHECK(std::string(lrs_status_name(static_cast<lrs_status>(42))) == "unknown status");
}

TEST_CASE("null handles and bad arguments report input errors") {
  double out = 0;
  CHECK(lrs_product_signal(nullptr, nullptr, 0.1, &out) == LRS_ERR_INPUT);
  CHECK(std::string(lrs_last_error()).find("null") != std::string::npos);
  lrs_lattice lat = nullptr;
  int bad[] = {3, 0};
  CHECK(lrs_lattice_create(bad, 2, &lat) == LRS_ERR_INPUT);
  CHECK(lat == nullptr);
  CHECK(lrs_lattice_create(nullptr, 1, &lat) == LRS_ERR_INPUT);
  CHECK(lrs_lattice_size(nullptr) == 0);
  lrs_field_destroy(nullptr);
  lrs_front_destroy(nullptr);
  CHECK(lrs_front_size(nullptr) == 0);
}

TEST_CASE("lattice queries") {
  Chain sq({5, 5});
  CHECK(lrs_lattice_dimension(sq.h) == 2);
  CHECK(lrs_lattice_size(sq.h) == 25);
  CHECK(lrs_lattice_center(sq.h) == 12);
  int d = -1;
  CHECK(lrs_lattice_distance(sq.h, 0, 24, &d) == LRS_OK);
  CHECK(d == 8);
  CHECK(lrs_lattice_distance(sq.h, 0, 25, &d) == LRS_ERR_INPUT);
  int64_t counts[16] = {};
  int l_max = 0;
  CHECK(lrs_lattice_shell_counts(sq.h, 12, counts, 16, &l_max) == LRS_OK);
  CHECK(l_max == 4);
  CHECK(counts[0] == 1);
  CHECK(counts[1] == 4);
  CHECK(counts[4] == 4);
  double s = 0;
  CHECK(lrs_lattice_shell_sum(sq.h, 12, 0, 0.0, &s) == LRS_OK);
  CHECK(s == doctest::Approx(25.0));
}

TEST_CASE("channel functions") {
  Chain c({201});
  lrs_channel_setup setup{-1, 10, 0.75, LRS_STATE_PRODUCT_PLUS};
  double p = 0, lb = 0;
  CHECK(lrs_product_signal(c.h, &setup, 0.5, &p) == LRS_OK);
  CHECK(lrs_product_signal_lower_bound(c.h, &setup, 0.5, &lb) == LRS_OK);
  CHECK(p >= lb);
  CHECK(p > 0.0);
  CHECK(lrs_product_signal_lower_bound(c.h, &setup, 100.0, &lb) == LRS_ERR_PRECONDITION);
  int64_t nb = 0;
  CHECK(lrs_receiver_size(c.h, &setup, &nb) == LRS_OK);
  CHECK(nb == 182);
  setup.initial_state = LRS_STATE_GHZ;
  double f = 0, g = 0;
  CHECK(lrs_ghz_coupling_sum(c.h, &setup, &f) == LRS_OK);
  CHECK(lrs_ghz_signal(c.h, &setup, M_PI / (2 * f), &g) == LRS_OK);
  CHECK(g == doctest::Approx(1.0));
  setup.initial_state = static_cast<lrs_initial_state>(7);
  CHECK(lrs_ghz_signal(c.h, &setup, 0.1, &g) == LRS_ERR_INPUT);

  double slope = 0;
  Chain big({4001});
  CHECK(lrs_ghz_front_exponent(big.h, 3.0, 10, 100, &slope) == LRS_OK);
  CHECK(slope < -1.5);
  CHECK(lrs_ghz_front_exponent(c.h, 3.0, 10, 100, &slope) == LRS_ERR_PRECONDITION);
}

TEST_CASE("bound functions surface domain errors") {
  lrs_bound_params p{1.0, 1.0, 1.0, 1e-3, 1, 1};
  double t = 0, env = 0;
  CHECK(lrs_causal_boundary(&p, 3.0, 1, 10, &t) == LRS_OK);
  CHECK(lrs_lr_bound_envelope(&p, 3.0, 1, 10, t, &env) == LRS_OK);
  CHECK(env == doctest::Approx(1e-3));
  CHECK(lrs_causal_boundary(&p, 1.0, 1, 10, &t) == LRS_ERR_DOMAIN);
  CHECK(std::string(lrs_last_error()).find("alpha <= D") != std::string::npos);
  p.v = -1;
  CHECK(lrs_causal_boundary(&p, 3.0, 1, 10, &t) == LRS_ERR_INPUT);
}

TEST_CASE("curves") {
  support::TempDir dir("capi_curve");
  Chain c({101});
  lrs_channel_setup setup{-1, 5, 1.0, LRS_STATE_PRODUCT_PLUS};
  double times[] = {0.0, 0.5, 1.0};
  lrs_curve curve = nullptr;
  REQUIRE(lrs_signal_curve(nullptr, c.h, &setup, LRS_CURVE_EXACT, times, 3, &curve) == LRS_OK);
  CHECK(lrs_curve_size(curve) == 3);
  double t = 0, p = 0, direct = 0;
  CHECK(lrs_curve_point(curve, 2, &t, &p) == LRS_OK);
  lrs_product_signal(c.h, &setup, 1.0, &direct);
  CHECK(p == direct);
  CHECK(lrs_curve_point(curve, 3, &t, &p) == LRS_ERR_INPUT);
  CHECK(lrs_curve_write(curve, dir.file("c.csv").c_str(), dir.file("c.json").c_str()) == LRS_OK);
  CHECK(slurp(dir.file("c.csv")).rfind("t,p\n", 0) == 0);
  CHECK(lrs_curve_write(curve, "", dir.file("c.json").c_str()) == LRS_ERR_INPUT);
  CHECK(lrs_curve_write(curve, dir.file("nodir/c.csv").c_str(), dir.file("c.json").c_str()) == LRS_ERR_IO);
  lrs_curve_destroy(curve);
}

TEST_CASE("Ising field, front, fit and bound report") {
  support::TempDir dir("capi_ising");
  lrs_context ctx = nullptr;
  REQUIRE(lrs_context_create(&ctx) == LRS_OK);
  CHECK(lrs_context_set_workers(ctx, 2) == LRS_OK);
  CHECK(lrs_context_workers(ctx) == 2);
  CHECK(lrs_context_set_workers(ctx, -1) == LRS_ERR_INPUT);
  Chain c({201});
  std::vector<double> times;
  for (int k = 0; k <= 300; ++k) times.push_back(0.01 * k);
  lrs_field field = nullptr;
  REQUIRE(lrs_ising_field(ctx, c.h, 1.0, 1.5, -1, 60, times.data(), times.size(), &field) == LRS_OK);
  size_t nd = 0, nt = 0;
  CHECK(lrs_field_shape(field, &nd, &nt) == LRS_OK);
  CHECK(nd == 60);
  CHECK(nt == 301);
  double v = 0, ref = 0;
  CHECK(lrs_field_value(field, 4, 100, &v) == LRS_OK);
  CHECK(lrs_ising_connected_xx(c.h, 1.0, 1.5, 100, 105, 1.0, &ref) == LRS_OK);
  CHECK(v == ref);
  CHECK(std::string(lrs_field_observable(field)) == "xx_connected");
  CHECK(lrs_field_value(field, 60, 0, &v) == LRS_ERR_INPUT);

  CHECK(lrs_field_write(field, dir.file("f.csv").c_str(), dir.file("f.json").c_str()) == LRS_OK);
  lrs_field back = nullptr;
  CHECK(lrs_field_read(dir.file("f.csv").c_str(), dir.file("f.json").c_str(), &back) == LRS_OK);
  CHECK(std::string(lrs_field_observable(back)) == "xx_connected");
  CHECK(lrs_field_write(back, dir.file("g.csv").c_str(), nullptr) == LRS_OK);
  CHECK(slurp(dir.file("f.csv")) == slurp(dir.file("g.csv")));

  lrs_front front = nullptr;
  CHECK(lrs_extract_front(field, 0.9, &front) == LRS_ERR_EMPTY_FRONT);
  REQUIRE(lrs_extract_front(field, 1e-3, &front) == LRS_OK);
  CHECK(lrs_front_size(front) + lrs_front_omitted(front) == 60);
  CHECK(lrs_front_epsilon(front) == 1e-3);
  lrs_power_fit fit{};
  CHECK(lrs_fit_power_law(front, 3, 1 << 30, &fit) == LRS_OK);
  CHECK(fit.exponent > 0.0);
  CHECK(lrs_fit_power_law(front, 5, 3, &fit) == LRS_ERR_INPUT);
  CHECK(lrs_front_write(front, dir.file("front.csv").c_str()) == LRS_OK);
  CHECK(lrs_fit_report_write(front, &fit, dir.file("fit.json").c_str()) == LRS_OK);
  CHECK(slurp(dir.file("fit.json")).find("\"q\"") != std::string::npos);

  lrs_front read = nullptr;
  REQUIRE(lrs_front_read(dir.file("front.csv").c_str(), 1e-3, &read) == LRS_OK);
  CHECK(lrs_front_size(read) == lrs_front_size(front));
  lrs_bound_params p{1.0, 1.0, 1.0, 1e-3, 1, 1};
  lrs_bound_report rep = nullptr;
  CHECK(lrs_compare_with_bound(read, &p, 1.5, 2, 0, 1000, &rep) == LRS_ERR_DOMAIN);
  REQUIRE(lrs_compare_with_bound(read, &p, 3.0, 1, 0, 1000, &rep) == LRS_OK);
  CHECK(!lrs_bound_report_empty(rep));
  double mn = 0, med = 0;
  CHECK(lrs_bound_report_summary(rep, &mn, &med) == LRS_OK);
  CHECK(mn <= med);
  CHECK(lrs_bound_report_write(rep, dir.file("b.csv").c_str(), dir.file("b.json").c_str()) == LRS_OK);
  CHECK(slurp(dir.file("b.csv")).rfind("delta,t_star,t_bound,ratio\n", 0) == 0);
  lrs_bound_report_destroy(rep);
  CHECK(lrs_compare_with_bound(read, &p, 3.0, 1, 5000, 6000, &rep) == LRS_OK);
  CHECK(lrs_bound_report_empty(rep));
  CHECK(lrs_bound_report_summary(rep, &mn, &med) == LRS_ERR_INPUT);
  lrs_bound_report_destroy(rep);

  lrs_field d = nullptr;
  REQUIRE(lrs_field_destagger(field, &d) == LRS_OK);
  CHECK(std::string(lrs_field_observable(d)) == "xx_connected_destaggered");

  lrs_front_destroy(read);
  lrs_front_destroy(front);
  lrs_field_destroy(d);
  lrs_field_destroy(back);
  lrs_field_destroy(field);
  lrs_context_destroy(ctx);
}

TEST_CASE("XXZ quench") {
  lrs_quench_config cfg;
  lrs_quench_config_default(&cfg);
  CHECK(cfg.n_sites == 14);
  CHECK(cfg.j_perp == 2.0);
  CHECK(cfg.dt == 0.0025);
  cfg.n_sites = 8;
  cfg.t_max = 0.2;
  lrs_field zz = nullptr, pm = nullptr;
  REQUIRE(lrs_xxz_quench(nullptr, &cfg, &zz, &pm) == LRS_OK);
  size_t nd = 0, nt = 0;
  lrs_field_shape(zz, &nd, &nt);
  CHECK(nd == 4);
  CHECK(nt == 5);
  CHECK(std::string(lrs_field_observable(pm)) == "pm_abs");
  lrs_field_destroy(zz);
  lrs_field_destroy(pm);

  cfg.observables = LRS_OBS_PM;
  zz = pm = nullptr;
  CHECK(lrs_xxz_quench(nullptr, &cfg, nullptr, &pm) == LRS_OK);
  CHECK(pm != nullptr);
  lrs_field_destroy(pm);
  CHECK(lrs_xxz_quench(nullptr, &cfg, nullptr, nullptr) == LRS_ERR_INPUT);

  cfg.observables = LRS_OBS_ZZ_CONNECTED;
  cfg.dt = 0.5;
  cfg.krylov_dim = 2;
  cfg.krylov_cap = 2;
  cfg.sample_stride = 1;
  cfg.t_max = 1.0;
  CHECK(lrs_xxz_quench(nullptr, &cfg, &zz, nullptr) == LRS_ERR_CONVERGENCE);
  cfg.n_sites = 7;
  CHECK(lrs_xxz_quench(nullptr, &cfg, &zz, nullptr) == LRS_ERR_INPUT);
}

TEST_CASE("scaling study") {
  support::TempDir dir("capi_scaling");
  int64_t sizes[] = {201, 401, 801};
  double taus[] = {0.1, 1.0};
  int deltas[] = {10, 20, 30};
  lrs_scaling sc = nullptr;
  REQUIRE(lrs_scaling_study(nullptr, 0.25, 1.0, sizes, 3, taus, 2, deltas, 3, &sc) == LRS_OK);
  CHECK(lrs_scaling_series_count(sc) == 2);
  double v = 0, icpt = 0, slope = 0, spread = 0, mean = 0;
  CHECK(lrs_scaling_value(sc, 1, 2, 0, &v) == LRS_OK);
  CHECK(lrs_scaling_extrapolated(sc, 0, 2, &icpt, &slope) == LRS_OK);
  CHECK(lrs_scaling_spread(sc, 0, &spread, &mean) == LRS_OK);
  CHECK(spread >= 0.0);
  CHECK(lrs_scaling_value(sc, 2, 0, 0, &v) == LRS_ERR_INPUT);
  CHECK(lrs_scaling_write(sc, dir.file("v.csv").c_str(), dir.file("e.csv").c_str(),
                          dir.file("s.json").c_str()) == LRS_OK);
  auto values = slurp(dir.file("v.csv"));
  CHECK(values.rfind("tau,n,delta,value\n0.10000000000000001,201,10,", 0) == 0);
  CHECK(slurp(dir.file("e.csv")).rfind("tau,delta,intercept,slope,residual\n", 0) == 0);
  lrs_scaling_destroy(sc);
  int64_t bad[] = {401, 201};
  CHECK(lrs_scaling_study(nullptr, 0.25, 1.0, bad, 2, taus, 2, deltas, 3, &sc) == LRS_ERR_INPUT);
}
