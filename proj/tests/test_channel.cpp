#include "doctest.h"

#include <cmath>
#include <numbers>

#include "core/channel.hpp"
#include "core/error.hpp"
#include "core/format.hpp"
#include "oracle/dense_spin.hpp"
#include "support.hpp"

#include "json.hpp"

using namespace lrs;
using namespace lrs::channel;

namespace {

ChannelSetup setup(Lattice lat, int delta, double alpha, InitialState s = InitialState::product_plus) {
  Site o = lat.center();
  return {std::move(lat), o, delta, alpha, s};
}

// Receiver weights (1+d)^-alpha for every site at distance >= delta.
std::vector<double> weights(const ChannelSetup& s) {
  std::vector<double> w;
  for (Site j = 0; j < s.lattice.size(); ++j) {
    int d = s.lattice.distance(s.origin, j);
    if (d >= s.delta) w.push_back(std::pow(1.0 + d, -s.alpha));
  }
  return w;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no lrs::Error thrown");
  return ErrorKind::io;
}

}  // namespace

TEST_CASE("product signal matches the state-vector channel") {
  auto g = support::rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    int len = support::uniform_int(g, 5, 9);
    auto s = setup(Lattice::chain(len), support::uniform_int(g, 1, 2), support::uniform(g, 0.0, 2.0));
    auto w = weights(s);
    if (w.size() > 8) continue;
    double t = support::uniform(g, 0.0, 3.0);
    CHECK(product_signal(s, t) == doctest::Approx(oracle::channel_signal(w, false, t)).epsilon(1e-11));
  }
  auto s2 = setup(Lattice({3, 3}), 1, 0.7);
  CHECK(product_signal(s2, 0.8) ==
        doctest::Approx(oracle::channel_signal(weights(s2), false, 0.8)).epsilon(1e-11));
}

TEST_CASE("GHZ signal matches the state-vector channel") {
  auto g = support::rng(32);
  for (int trial = 0; trial < 12; ++trial) {
    int len = support::uniform_int(g, 5, 9);
    auto s = setup(Lattice::chain(len), support::uniform_int(g, 1, 2), support::uniform(g, 0.0, 2.0),
                   InitialState::ghz);
    auto w = weights(s);
    if (w.size() > 8) continue;
    double t = support::uniform(g, 0.0, 3.0);
    CHECK(ghz_signal(s, t) == doctest::Approx(oracle::channel_signal(w, true, t)).epsilon(1e-11));
  }
}

TEST_CASE("product signal examples") {
  auto s = setup(Lattice::chain(21), 10, 0.5);
  CHECK(product_signal(s, 0.0) == 0.0);
  // two receivers at distance 10, each contributing cos^2(t/sqrt(11))
  double c = std::cos(0.3 / std::sqrt(11.0));
  CHECK(product_signal(s, 0.3) == doctest::Approx(1.0 - std::pow(c, 4)).epsilon(1e-14));
  // a receiver phase of pi/2 forces p = 1
  auto zero = setup(Lattice::chain(3), 1, 0.0);
  CHECK(product_signal(zero, std::numbers::pi / 2) == 1.0);
}

TEST_CASE("GHZ signal reaches one when the accumulated phase is pi") {
  auto s = setup(Lattice::chain(41), 5, 1.2, InitialState::ghz);
  double f = ghz_coupling_sum(s);
  CHECK(ghz_signal(s, std::numbers::pi / (2.0 * f)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ghz_signal(s, std::numbers::pi / f) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(ghz_signal(s, 0.0) == 0.0);
}

TEST_CASE("GHZ coupling sum is the tail shell sum") {
  auto s = setup(Lattice::chain(101), 7, 1.5, InitialState::ghz);
  double direct = 0.0;
  for (int d = 7; d <= 50; ++d) direct += 2.0 * std::pow(1.0 + d, -1.5);
  CHECK(ghz_coupling_sum(s) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(receiver_size(s) == 88);
}

TEST_CASE("lower bound holds inside its window and is refused outside") {
  auto g = support::rng(33);
  for (int i = 0; i < 300; ++i) {
    double alpha = support::uniform(g, 0.0, 3.0);
    int delta = support::uniform_int(g, 1, 30);
    auto s = setup(Lattice::chain(201), delta, alpha);
    double t = support::uniform(g, 0.0, 0.5 * std::pow(1.0 + delta, alpha));
    REQUIRE(product_signal(s, t) >= product_signal_lower_bound(s, t));
  }
  auto s = setup(Lattice::chain(101), 3, 0.5);
  CHECK(kind_of([&] { product_signal_lower_bound(s, 1.01); }) == ErrorKind::precondition);
  CHECK_NOTHROW(product_signal_lower_bound(s, 1.0));
}

TEST_CASE("signals are monotone in lattice size for fixed delta") {
  double prev = 0.0;
  for (int len : {101, 201, 401, 801, 1601}) {
    double p = product_signal(setup(Lattice::chain(len), 10, 0.4), 0.1);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("setup validation") {
  auto s = setup(Lattice::chain(11), 6, 1.0);
  CHECK(kind_of([&] { product_signal(s, 0.1); }) == ErrorKind::input);
  s.delta = 0;
  CHECK(kind_of([&] { product_signal(s, 0.1); }) == ErrorKind::input);
  s.delta = 2;
  s.alpha = -1.0;
  CHECK(kind_of([&] { product_signal(s, 0.1); }) == ErrorKind::input);
  s.alpha = 1.0;
  CHECK(kind_of([&] { product_signal(s, -0.1); }) == ErrorKind::input);
  CHECK(kind_of([&] { ghz_signal(s, 0.1); }) == ErrorKind::input);
}

TEST_CASE("GHZ front exponent approaches D - alpha for fast decay") {
  auto chain = Lattice::chain(40001);
  CHECK(ghz_front_exponent(chain, 3.0, 10, 200) == doctest::Approx(-2.0).epsilon(0.05));
  CHECK(kind_of([&] { ghz_front_exponent(chain, 1.0, 10, 200); }) == ErrorKind::input);
  CHECK(kind_of([&] { ghz_front_exponent(Lattice::chain(401), 1.5, 10, 200); }) ==
        ErrorKind::precondition);
  CHECK(kind_of([&] { ghz_front_exponent(chain, 1.5, 10, 11); }) == ErrorKind::input);
}

TEST_CASE("curves and sidecars") {
  support::TempDir dir("channel");
  auto s = setup(Lattice::chain(51), 4, 0.9);
  std::vector<double> times{0.0, 0.25, 0.5, 1.0};
  auto c1 = sample_curve(s, CurveKind::exact, times, 1);
  auto c4 = sample_curve(s, CurveKind::exact, times, 4);
  CHECK(c1.p == c4.p);
  CHECK(c1.p[2] == product_signal(s, 0.5));
  write_curve(c1, dir.file("c.csv"), dir.file("c.json"));
  auto csv = read_text_file(dir.file("c.csv"));
  CHECK(csv.rfind("t,p\n0,0\n0.25,", 0) == 0);
  auto meta = nlohmann::json::parse(read_text_file(dir.file("c.json")));
  CHECK(meta["alpha"] == 0.9);
  CHECK(meta["D"] == 1);
  CHECK(meta["delta"] == 4);
  CHECK(meta["receiver_size"] == 44);
  CHECK(meta["state"] == "product_plus");

  std::vector<double> late{0.0, 10.0};
  CHECK(kind_of([&] { sample_curve(s, CurveKind::lower_bound, late, 1); }) == ErrorKind::precondition);
  std::vector<double> unsorted{0.5, 0.25};
  CHECK(kind_of([&] { sample_curve(s, CurveKind::exact, unsorted, 1); }) == ErrorKind::input);
}

TEST_CASE("first crossing") {
  auto s = setup(Lattice::chain(201), 5, 0.5);
  double t = first_crossing(s, 0.5, 10.0);
  REQUIRE(t > 0.0);
  CHECK(product_signal(s, t) >= 0.5);
  CHECK(product_signal(s, t - 1e-8) < 0.5);
  CHECK(first_crossing(setup(Lattice::chain(201), 90, 3.0), 0.5, 1.0) < 0.0);
}

TEST_CASE("long-range bound envelope and causal boundary") {
  BoundParams p;
  p.C = 1.0;
  p.v = 2.0;
  p.epsilon = 1e-3;
  for (int delta : {0, 1, 5, 50}) {
    double t = causal_boundary(p, 3.0, 1, delta);
    CHECK(lr_bound_envelope(p, 3.0, 1, delta, t) == doctest::Approx(p.epsilon).epsilon(1e-12));
  }
  p.C = 2.5;
  p.size_a = 3;
  p.size_b = 7;
  double t = causal_boundary(p, 2.5, 2, 9);
  CHECK(lr_bound_envelope(p, 2.5, 2, 9, t) == doctest::Approx(p.C * p.epsilon).epsilon(1e-12));
  // boundary grows logarithmically with distance
  CHECK(causal_boundary(p, 3.0, 1, 1000) > causal_boundary(p, 3.0, 1, 100));
  CHECK(lr_bound_envelope(p, 3.0, 1, 4, -0.2) == lr_bound_envelope(p, 3.0, 1, 4, 0.2));
  CHECK(kind_of([&] { causal_boundary(p, 1.0, 1, 3); }) == ErrorKind::domain);
  CHECK(kind_of([&] { lr_bound_envelope(p, 0.5, 1, 3, 1.0); }) == ErrorKind::domain);
  p.epsilon = 1.5;
  CHECK(kind_of([&] { causal_boundary(p, 3.0, 1, 3); }) == ErrorKind::input);
}
