#include "doctest.h"

#include <cmath>
#include <fstream>

#include "core/error.hpp"
#include "core/ed_engine.hpp"
#include "oracle/dense_spin.hpp"
#include "support.hpp"

using namespace lrs;
using namespace lrs::ed;
using oracle::Pauli;

namespace {

oracle::Vector to_eigen(const StateVector& s) {
  oracle::Vector v(s.dimension());
  for (std::size_t i = 0; i < s.dimension(); ++i) v(i) = s[i];
  return v;
}

StateVector random_state(int n, std::mt19937_64& g) {
  std::vector<Complex> a(std::size_t{1} << n);
  std::normal_distribution<double> nd;
  for (auto& z : a) z = {nd(g), nd(g)};
  return StateVector(n, std::move(a)).normalized();
}

double max_diff(const oracle::Vector& a, const oracle::Vector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("basis, plus and staggered states") {
  auto b = StateVector::basis_state(3, 5);
  CHECK(b[5] == Complex(1.0));
  CHECK(b.norm() == 1.0);
  auto p = StateVector::plus_state(4);
  CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-15));
  auto s = StateVector::staggered(6);
  CHECK(s[0b010101] == Complex(1.0));
  CHECK(expectation_z(s, 0) == -1.0);
  CHECK(expectation_z(s, 1) == 1.0);
  CHECK(total_magnetization(s) == 0.0);
  CHECK_THROWS_AS(StateVector(0), Error);
  CHECK_THROWS_AS(StateVector(kMaxSites + 1), Error);
  CHECK_THROWS_AS(StateVector(3, std::vector<Complex>(7)), Error);
}

TEST_CASE("Hamiltonian application matches dense matrices") {
  auto g = support::rng(51);
  for (double alpha : {0.0, 0.75, 3.0}) {
    const int n = 6;
    auto psi = random_state(n, g);
    auto xxz = build_xxz(Lattice::chain(n), 2.0, 1.0, alpha);
    CHECK(xxz.pairs.size() == static_cast<std::size_t>(n * (n - 1)));
    auto dense = oracle::xxz_hamiltonian(n, 2.0, 1.0, alpha);
    CHECK(max_diff(to_eigen(apply(xxz, psi)), dense * to_eigen(psi)) < 1e-12);

    auto ising = build_ising(Lattice::chain(n), 0.8, alpha);
    auto dense_i = oracle::ising_hamiltonian({n}, 0.8, alpha);
    CHECK(max_diff(to_eigen(apply(ising, psi)), dense_i * to_eigen(psi)) < 1e-12);
  }
}

TEST_CASE("site terms match dense matrices") {
  auto g = support::rng(52);
  SpinHamiltonian h;
  h.n_sites = 4;
  h.sites = {{0, SiteKind::x, 0.3}, {2, SiteKind::z, -1.1}, {3, SiteKind::x, 0.7}};
  h.pairs = {{1, 3, PairKind::flipflop, 0.4}, {0, 2, PairKind::zz, 0.9}};
  oracle::Matrix dense = 0.3 * oracle::site_op(4, 0, Pauli::X) - 1.1 * oracle::site_op(4, 2, Pauli::Z) +
                         0.7 * oracle::site_op(4, 3, Pauli::X) +
                         0.4 * 0.5 *
                             (oracle::site_op(4, 1, Pauli::X) * oracle::site_op(4, 3, Pauli::X) +
                              oracle::site_op(4, 1, Pauli::Y) * oracle::site_op(4, 3, Pauli::Y)) +
                         0.9 * oracle::site_op(4, 0, Pauli::Z) * oracle::site_op(4, 2, Pauli::Z);
  auto psi = random_state(4, g);
  CHECK(max_diff(to_eigen(apply(h, psi)), dense * to_eigen(psi)) < 1e-12);
  h.pairs.push_back({1, 1, PairKind::zz, 1.0});
  CHECK_THROWS_AS(h.validate(), Error);
}

TEST_CASE("compiled application is independent of the worker count") {
  auto g = support::rng(53);
  auto h = build_xxz(Lattice::chain(12), 2.0, 1.0, 0.75);
  CompiledHamiltonian c1(h, 1), c4(h, 4);
  auto psi = random_state(12, g);
  std::vector<Complex> a(psi.dimension()), b(psi.dimension());
  c1.apply(psi.amplitudes(), a, 1);
  c4.apply(psi.amplitudes(), b, 4);
  CHECK(a == b);
}

TEST_CASE("one Krylov step matches the dense exponential") {
  auto g = support::rng(54);
  const int n = 7;
  auto h = build_xxz(Lattice::chain(n), 2.0, 1.0, 1.5);
  auto dense = oracle::xxz_hamiltonian(n, 2.0, 1.0, 1.5);
  auto psi = random_state(n, g);
  for (double dt : {0.0025, 0.05, 0.2}) {
    PropagatorConfig cfg;
    cfg.dt = dt;
    StepInfo info;
    auto next = krylov_step(h, psi, cfg, 1, &info);
    oracle::Vector ref = oracle::evolution(dense, dt) * to_eigen(psi);
    CHECK(max_diff(to_eigen(next), ref) < 1e-9);
    CHECK(info.krylov_dim >= 2);
    CHECK(info.krylov_dim <= cfg.krylov_cap);
    CHECK(info.residual <= cfg.tolerance);
  }
}

TEST_CASE("Krylov step raises a convergence error at its cap") {
  auto g = support::rng(55);
  auto h = build_xxz(Lattice::chain(8), 2.0, 1.0, 0.5);
  auto psi = random_state(8, g);
  PropagatorConfig cfg;
  cfg.dt = 1.0;
  cfg.krylov_dim = 2;
  cfg.krylov_cap = 3;
  try {
    krylov_step(h, psi, cfg);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(e.kind() == ErrorKind::convergence);
    CHECK(e.residual() > cfg.tolerance);
  }
  cfg.krylov_cap = 1;
  CHECK_THROWS_AS(cfg.validate(256), Error);
}

TEST_CASE("an eigenstate leaves the Krylov space early") {
  // all spins up is an eigenstate of the XXZ chain
  auto h = build_xxz(Lattice::chain(6), 2.0, 1.0, 1.0);
  auto psi = StateVector::basis_state(6, 0);
  StepInfo info;
  auto next = krylov_step(h, psi, PropagatorConfig{}, 1, &info);
  double e = energy(CompiledHamiltonian(h), psi);
  CHECK(std::abs(next[0] - std::exp(Complex(0, -e * 0.0025))) < 1e-12);
}

TEST_CASE("expectations match dense operators") {
  auto g = support::rng(56);
  const int n = 5;
  auto psi = random_state(n, g);
  auto v = to_eigen(psi);
  for (int i = 0; i < n; ++i) {
    CHECK(expectation_z(psi, i) == doctest::Approx(oracle::expectation(oracle::site_op(n, i, Pauli::Z), v).real()).epsilon(1e-12));
    CHECK(expectation_x(psi, i) == doctest::Approx(oracle::expectation(oracle::site_op(n, i, Pauli::X), v).real()).epsilon(1e-12));
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      oracle::Matrix zz = oracle::site_op(n, i, Pauli::Z) * oracle::site_op(n, j, Pauli::Z);
      oracle::Matrix xx = oracle::site_op(n, i, Pauli::X) * oracle::site_op(n, j, Pauli::X);
      const Complex im(0, 1);
      oracle::Matrix sp = 0.5 * (oracle::site_op(n, i, Pauli::X) + im * oracle::site_op(n, i, Pauli::Y));
      oracle::Matrix sm = 0.5 * (oracle::site_op(n, j, Pauli::X) - im * oracle::site_op(n, j, Pauli::Y));
      CHECK(expectation_zz(psi, i, j) == doctest::Approx(oracle::expectation(zz, v).real()).epsilon(1e-12));
      CHECK(expectation_xx(psi, i, j) == doctest::Approx(oracle::expectation(xx, v).real()).epsilon(1e-12));
      CHECK(std::abs(expectation_pm(psi, i, j) - oracle::expectation(sp * sm, v)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(expectation_zz(psi, 1, 1), Error);
  CHECK_THROWS_AS(expectation_z(psi, 5), Error);
  auto h = build_xxz(Lattice::chain(n), 2.0, 1.0, 0.75);
  CHECK(energy(CompiledHamiltonian(h), psi) ==
        doctest::Approx(oracle::expectation(oracle::xxz_hamiltonian(n, 2.0, 1.0, 0.75), v).real()).epsilon(1e-12));
}

TEST_CASE("multi-step evolution conserves norm, magnetization and energy") {
  const int n = 8;
  auto h = build_xxz(Lattice::chain(n), 2.0, 1.0, 0.75);
  CompiledHamiltonian ch(h);
  auto psi = StateVector::staggered(n);
  double e0 = energy(ch, psi), m0 = total_magnetization(psi);
  PropagatorConfig cfg;
  cfg.dt = 0.01;
  for (int k = 0; k < 50; ++k) psi = krylov_step(ch, psi, cfg);
  CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
  CHECK(std::abs(total_magnetization(psi) - m0) < 1e-10);
  CHECK(std::abs(energy(ch, psi) - e0) < 1e-10);
  oracle::Vector ref = oracle::evolution(oracle::xxz_hamiltonian(n, 2.0, 1.0, 0.75), 0.5) *
             to_eigen(StateVector::staggered(n));
  CHECK(std::abs(ref.dot(to_eigen(psi))) > 1.0 - 1e-10);
}

TEST_CASE("checkpoints round-trip exactly") {
  support::TempDir dir("ed");
  auto g = support::rng(57);
  auto psi = random_state(5, g);
  save_checkpoint(psi, dir.file("psi.bin"));
  auto back = load_checkpoint(dir.file("psi.bin"));
  CHECK(back.n_sites() == 5);
  CHECK(back.amplitudes() == psi.amplitudes());
  CHECK(std::filesystem::file_size(dir.file("psi.bin")) == 8 + 4 + 32 * 16);

  std::ofstream(dir.file("bad.bin"), std::ios::binary) << "NOTMAGIC\x05\0\0\0";
  CHECK_THROWS_AS(load_checkpoint(dir.file("bad.bin")), Error);
  std::filesystem::resize_file(dir.file("psi.bin"), 100);
  CHECK_THROWS_AS(load_checkpoint(dir.file("psi.bin")), Error);
  CHECK_THROWS_AS(load_checkpoint(dir.file("missing.bin")), Error);
}
