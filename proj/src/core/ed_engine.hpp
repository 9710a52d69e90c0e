#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "core/lattice.hpp"

namespace lrs::ed {

using Complex = std::complex<double>;
using Basis = std::uint64_t;

/// Largest chain the dense representation accepts at all.
inline constexpr int kMaxSites = 30;

/// Amplitudes over the 2^N product basis; bit k of the index is site k, and
/// bit value 0 is σ^z = +1.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n_sites);  // zero vector
  StateVector(int n_sites, std::vector<Complex> amplitudes);

  static StateVector basis_state(int n_sites, Basis config);
  /// |+>^⊗N.
  static StateVector plus_state(int n_sites);
  /// |1,0,1,0,...>: even sites carry bit 1.
  static StateVector staggered(int n_sites);

  int n_sites() const { return n_sites_; }
  std::size_t dimension() const { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  std::vector<Complex>& amplitudes() { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm(int workers = 1) const;
  StateVector normalized(int workers = 1) const;

 private:
  int n_sites_ = 0;
  std::vector<Complex> amps_;
};

Complex inner(const StateVector& a, const StateVector& b, int workers = 1);

enum class PairKind { zz, flipflop };
enum class SiteKind { z, x };

struct PairTerm {
  int i;
  int j;
  PairKind kind;
  double coefficient;
};

struct SiteTerm {
  int site;
  SiteKind kind;
  double coefficient;
};

/// Real-coefficient sum of σ^zσ^z, (σ^+σ^- + σ^-σ^+), σ^z and σ^x terms;
/// Hermitian by construction.
struct SpinHamiltonian {
  int n_sites = 0;
  std::vector<PairTerm> pairs;
  std::vector<SiteTerm> sites;

  void validate() const;
};

/// Σ_{i>j} dist^-α [J_perp/2 (σ^+_iσ^-_j + h.c.) + J_z σ^z_iσ^z_j] on a chain.
SpinHamiltonian build_xxz(const Lattice& lattice, double j_perp, double j_z, double alpha);

/// -Σ_{i<j} J dist^-α σ^z_iσ^z_j, matching ising::IsingModel.
SpinHamiltonian build_ising(const Lattice& lattice, double J, double alpha);

/// H in a form ready for repeated application: the diagonal is tabulated
/// once, off-diagonal terms are kept as flip masks.
class CompiledHamiltonian {
 public:
  explicit CompiledHamiltonian(const SpinHamiltonian& h, int workers = 1);

  int n_sites() const { return n_sites_; }
  void apply(const std::vector<Complex>& in, std::vector<Complex>& out, int workers = 1) const;

 private:
  struct Flip {
    Basis mask;
    double coefficient;
    bool requires_unequal;  // flip-flop acts only on anti-aligned pairs
    int i, j;
  };
  int n_sites_;
  std::vector<double> diagonal_;
  std::vector<Flip> flips_;
};

/// H|ψ>, unnormalized.
StateVector apply(const SpinHamiltonian& h, const StateVector& psi, int workers = 1);

struct PropagatorConfig {
  double dt = 0.0025;
  int krylov_dim = 12;
  int krylov_cap = 30;
  double tolerance = 1e-10;

  void validate(std::size_t hilbert_dim) const;
};

struct StepInfo {
  int krylov_dim = 0;
  double residual = 0.0;
  double norm_before_renorm = 1.0;
};

/// exp(-i H dt)|ψ> by Lanczos with full reorthogonalization. The basis grows
/// until the residual estimate β_j |[exp(-i T dt)]_{j,1}| falls below the
/// tolerance; exceeding krylov_cap throws ConvergenceError.
StateVector krylov_step(const CompiledHamiltonian& h, const StateVector& psi,
                        const PropagatorConfig& cfg, int workers = 1, StepInfo* info = nullptr);
StateVector krylov_step(const SpinHamiltonian& h, const StateVector& psi,
                        const PropagatorConfig& cfg, int workers = 1, StepInfo* info = nullptr);

double expectation_z(const StateVector& psi, int i, int workers = 1);
double expectation_x(const StateVector& psi, int i, int workers = 1);
double expectation_zz(const StateVector& psi, int i, int j, int workers = 1);
double expectation_xx(const StateVector& psi, int i, int j, int workers = 1);
/// <σ^+_i σ^-_j> with σ^+ = |0><1|.
Complex expectation_pm(const StateVector& psi, int i, int j, int workers = 1);
double total_magnetization(const StateVector& psi, int workers = 1);
double energy(const CompiledHamiltonian& h, const StateVector& psi, int workers = 1);

/// Little-endian checkpoint: 8-byte magic "LRSPSI01", uint32 N, then 2^N
/// (re, im) float64 pairs.
void save_checkpoint(const StateVector& psi, const std::string& path);
StateVector load_checkpoint(const std::string& path);

}  // namespace lrs::ed
