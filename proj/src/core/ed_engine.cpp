#include "core/ed_engine.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include <Eigen/Eigenvalues>

#include "core/error.hpp"
#include "core/format.hpp"
#include "core/parallel.hpp"

namespace lrs::ed {

namespace {

constexpr std::size_t kParallelGrain = 2048;

inline double z_of(Basis s, int i) { return ((s >> i) & 1u) ? -1.0 : 1.0; }

void check_sites(int n) {
  require(n >= 1 && n <= kMaxSites,
          "state vector: site count must lie in [1, " + std::to_string(kMaxSites) + "]");
}

void check_site(const StateVector& psi, int i) {
  require(i >= 0 && i < psi.n_sites(), "site index " + std::to_string(i) + " out of range");
}

}  // namespace

StateVector::StateVector(int n_sites) : n_sites_(n_sites) {
  check_sites(n_sites);
  amps_.assign(std::size_t{1} << n_sites, Complex{});
}

StateVector::StateVector(int n_sites, std::vector<Complex> amplitudes)
    : n_sites_(n_sites), amps_(std::move(amplitudes)) {
  check_sites(n_sites);
  require(amps_.size() == (std::size_t{1} << n_sites), "state vector: dimension must be 2^N");
}

StateVector StateVector::basis_state(int n_sites, Basis config) {
  StateVector psi(n_sites);
  require(config < psi.dimension(), "basis_state: configuration out of range");
  psi.amps_[config] = 1.0;
  return psi;
}

StateVector StateVector::plus_state(int n_sites) {
  StateVector psi(n_sites);
  double a = std::pow(2.0, -0.5 * n_sites);
  std::fill(psi.amps_.begin(), psi.amps_.end(), Complex(a, 0.0));
  return psi;
}

StateVector StateVector::staggered(int n_sites) {
  Basis config = 0;
  for (int k = 0; k < n_sites; k += 2) config |= Basis{1} << k;
  return basis_state(n_sites, config);
}

double StateVector::norm(int workers) const {
  return std::sqrt(tree_reduce<double>(amps_.size(), workers,
                                       [&](std::size_t s) { return std::norm(amps_[s]); }));
}

StateVector StateVector::normalized(int workers) const {
  double n = norm(workers);
  require(n > 0.0, "normalized: zero vector");
  StateVector out = *this;
  for (auto& a : out.amps_) a /= n;
  return out;
}

Complex inner(const StateVector& a, const StateVector& b, int workers) {
  require(a.n_sites() == b.n_sites(), "inner: dimension mismatch");
  return tree_reduce<Complex>(a.dimension(), workers,
                              [&](std::size_t s) { return std::conj(a[s]) * b[s]; });
}

void SpinHamiltonian::validate() const {
  check_sites(n_sites);
  for (const auto& t : pairs) {
    require(t.i >= 0 && t.i < n_sites && t.j >= 0 && t.j < n_sites && t.i != t.j,
            "hamiltonian: pair term sites invalid");
    require(std::isfinite(t.coefficient), "hamiltonian: non-finite coefficient");
  }
  for (const auto& t : sites) {
    require(t.site >= 0 && t.site < n_sites, "hamiltonian: site term index invalid");
    require(std::isfinite(t.coefficient), "hamiltonian: non-finite coefficient");
  }
}

SpinHamiltonian build_xxz(const Lattice& lattice, double j_perp, double j_z, double alpha) {
  require(lattice.dimension() == 1, "build_xxz: lattice must be a chain");
  require(lattice.size() >= 2, "build_xxz: need at least 2 sites");
  require(lattice.size() <= kMaxSites, "build_xxz: chain too long for a dense state vector");
  require(alpha >= 0.0, "build_xxz: alpha must be >= 0");
  SpinHamiltonian h;
  h.n_sites = static_cast<int>(lattice.size());
  for (int i = 0; i < h.n_sites; ++i)
    for (int j = 0; j < i; ++j) {
      double decay = std::pow(static_cast<double>(lattice.distance(i, j)), -alpha);
      h.pairs.push_back({i, j, PairKind::flipflop, 0.5 * j_perp * decay});
      h.pairs.push_back({i, j, PairKind::zz, j_z * decay});
    }
  return h;
}

SpinHamiltonian build_ising(const Lattice& lattice, double J, double alpha) {
  require(lattice.size() >= 2 && lattice.size() <= kMaxSites,
          "build_ising: site count must lie in [2, 30]");
  SpinHamiltonian h;
  h.n_sites = static_cast<int>(lattice.size());
  for (int i = 0; i < h.n_sites; ++i)
    for (int j = i + 1; j < h.n_sites; ++j)
      h.pairs.push_back({i, j, PairKind::zz,
                         -J * std::pow(static_cast<double>(lattice.distance(i, j)), -alpha)});
  return h;
}

CompiledHamiltonian::CompiledHamiltonian(const SpinHamiltonian& h, int workers)
    : n_sites_(h.n_sites) {
  h.validate();
  const std::size_t dim = std::size_t{1} << n_sites_;
  diagonal_.assign(dim, 0.0);
  std::vector<PairTerm> zz;
  std::vector<SiteTerm> z;
  for (const auto& t : h.pairs) {
    if (t.kind == PairKind::zz)
      zz.push_back(t);
    else
      flips_.push_back({(Basis{1} << t.i) | (Basis{1} << t.j), t.coefficient, true, t.i, t.j});
  }
  for (const auto& t : h.sites) {
    if (t.kind == SiteKind::z)
      z.push_back(t);
    else
      flips_.push_back({Basis{1} << t.site, t.coefficient, false, t.site, t.site});
  }
  parallel_for(dim, workers, [&](std::size_t b, std::size_t e) {
    for (std::size_t s = b; s < e; ++s) {
      double acc = 0.0;
      for (const auto& t : zz) acc += t.coefficient * z_of(s, t.i) * z_of(s, t.j);
      for (const auto& t : z) acc += t.coefficient * z_of(s, t.site);
      diagonal_[s] = acc;
    }
  }, kParallelGrain);
}

void CompiledHamiltonian::apply(const std::vector<Complex>& in, std::vector<Complex>& out,
                                int workers) const {
  require(in.size() == diagonal_.size(), "apply: dimension mismatch");
  out.resize(in.size());
  // Flips outermost over small blocks: same per-state summation order as a
  // state-major loop, but branch-free and friendlier to the cache.
  constexpr std::size_t kBlock = 1024;
  parallel_for(in.size(), workers, [&](std::size_t b, std::size_t e) {
    for (std::size_t b0 = b; b0 < e; b0 += kBlock) {
      const std::size_t b1 = std::min(e, b0 + kBlock);
      for (std::size_t s = b0; s < b1; ++s) out[s] = diagonal_[s] * in[s];
      for (const auto& f : flips_) {
        const double c = f.coefficient;
        if (f.requires_unequal) {
          for (std::size_t s = b0; s < b1; ++s) {
            const double w = (((s >> f.i) ^ (s >> f.j)) & 1u) ? c : 0.0;
            out[s] += w * in[s ^ f.mask];
          }
        } else {
          for (std::size_t s = b0; s < b1; ++s) out[s] += c * in[s ^ f.mask];
        }
      }
    }
  }, kParallelGrain);
}

StateVector apply(const SpinHamiltonian& h, const StateVector& psi, int workers) {
  require(h.n_sites == psi.n_sites(), "apply: Hamiltonian and state differ in site count");
  CompiledHamiltonian compiled(h, workers);
  std::vector<Complex> out;
  compiled.apply(psi.amplitudes(), out, workers);
  return StateVector(psi.n_sites(), std::move(out));
}

void PropagatorConfig::validate(std::size_t hilbert_dim) const {
  require(dt > 0.0 && std::isfinite(dt), "propagator: dt must be > 0");
  require(krylov_dim >= 2, "propagator: krylov_dim must be >= 2");
  require(krylov_cap >= krylov_dim, "propagator: krylov_cap must be >= krylov_dim");
  require(static_cast<std::size_t>(krylov_dim) <= hilbert_dim,
          "propagator: krylov_dim exceeds the Hilbert-space dimension");
  require(tolerance > 0.0, "propagator: tolerance must be > 0");
}

StateVector krylov_step(const CompiledHamiltonian& h, const StateVector& psi,
                        const PropagatorConfig& cfg, int workers, StepInfo* info) {
  require(h.n_sites() == psi.n_sites(), "krylov_step: Hamiltonian and state differ in site count");
  const std::size_t dim = psi.dimension();
  cfg.validate(dim);
  const int cap = static_cast<int>(std::min<std::size_t>(cfg.krylov_cap, dim));

  auto dot = [&](const std::vector<Complex>& a, const std::vector<Complex>& b) {
    return tree_reduce<Complex>(dim, workers, [&](std::size_t s) { return std::conj(a[s]) * b[s]; });
  };
  auto axpy = [&](Complex a, const std::vector<Complex>& x, std::vector<Complex>& y) {
    parallel_for(dim, workers, [&](std::size_t b, std::size_t e) {
      for (std::size_t s = b; s < e; ++s) y[s] += a * x[s];
    }, kParallelGrain);
  };

  double psi_norm = psi.norm(workers);
  require(psi_norm > 0.0, "krylov_step: zero state");

  std::vector<std::vector<Complex>> basis;
  basis.reserve(cap);
  basis.push_back(psi.amplitudes());
  for (auto& a : basis.back()) a /= psi_norm;

  std::vector<double> alpha, beta;
  std::vector<Complex> w;
  Eigen::VectorXcd coeffs;
  double residual = 0.0;

  for (int j = 0;; ++j) {
    h.apply(basis[j], w, workers);
    alpha.push_back(dot(basis[j], w).real());
    axpy(-alpha[j], basis[j], w);
    if (j > 0) axpy(-beta[j - 1], basis[j - 1], w);
    for (int k = 0; k <= j; ++k) axpy(-dot(basis[k], w), basis[k], w);
    double b = std::sqrt(dot(w, w).real());

    const int m = j + 1;
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1))
                                : Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const auto& vecs = eig.eigenvectors();
    Eigen::VectorXcd phases(m);
    for (int l = 0; l < m; ++l)
      phases[l] = std::exp(Complex(0.0, -eig.eigenvalues()[l] * cfg.dt)) * vecs(0, l);
    coeffs = vecs.cast<Complex>() * phases;
    residual = b * std::abs(coeffs[m - 1]);

    if (residual < cfg.tolerance) break;
    if (m >= cap) {
      throw ConvergenceError("krylov_step: residual " + format_double(residual) +
                                 " above tolerance at Krylov dimension cap " + std::to_string(cap),
                             residual);
    }
    beta.push_back(b);
    basis.emplace_back(w);
    for (auto& a : basis.back()) a /= b;
  }

  std::vector<Complex> out(dim, Complex{});
  for (int k = 0; k < coeffs.size(); ++k) axpy(coeffs[k] * psi_norm, basis[k], out);
  StateVector result(psi.n_sites(), std::move(out));
  double n = result.norm(workers);
  if (info) {
    info->krylov_dim = static_cast<int>(coeffs.size());
    info->residual = residual;
    info->norm_before_renorm = n;
  }
  if (std::abs(n - psi_norm) > cfg.tolerance) {
    for (auto& a : result.amplitudes()) a *= psi_norm / n;
  }
  return result;
}

StateVector krylov_step(const SpinHamiltonian& h, const StateVector& psi,
                        const PropagatorConfig& cfg, int workers, StepInfo* info) {
  return krylov_step(CompiledHamiltonian(h, workers), psi, cfg, workers, info);
}

double expectation_z(const StateVector& psi, int i, int workers) {
  check_site(psi, i);
  const auto& a = psi.amplitudes();
  return tree_reduce<double>(a.size(), workers,
                             [&](std::size_t s) { return std::norm(a[s]) * z_of(s, i); });
}

double expectation_zz(const StateVector& psi, int i, int j, int workers) {
  check_site(psi, i);
  check_site(psi, j);
  require(i != j, "expectation_zz: sites must differ");
  const auto& a = psi.amplitudes();
  return tree_reduce<double>(a.size(), workers, [&](std::size_t s) {
    return std::norm(a[s]) * z_of(s, i) * z_of(s, j);
  });
}

double expectation_x(const StateVector& psi, int i, int workers) {
  check_site(psi, i);
  const auto& a = psi.amplitudes();
  const Basis m = Basis{1} << i;
  return tree_reduce<Complex>(a.size(), workers,
                              [&](std::size_t s) { return std::conj(a[s ^ m]) * a[s]; })
      .real();
}

double expectation_xx(const StateVector& psi, int i, int j, int workers) {
  check_site(psi, i);
  check_site(psi, j);
  require(i != j, "expectation_xx: sites must differ");
  const auto& a = psi.amplitudes();
  const Basis m = (Basis{1} << i) | (Basis{1} << j);
  return tree_reduce<Complex>(a.size(), workers,
                              [&](std::size_t s) { return std::conj(a[s ^ m]) * a[s]; })
      .real();
}

Complex expectation_pm(const StateVector& psi, int i, int j, int workers) {
  check_site(psi, i);
  check_site(psi, j);
  require(i != j, "expectation_pm: sites must differ");
  const auto& a = psi.amplitudes();
  const Basis m = (Basis{1} << i) | (Basis{1} << j);
  // σ^-_j needs bit j = 0, σ^+_i needs bit i = 1.
  return tree_reduce<Complex>(a.size(), workers, [&](std::size_t s) {
    bool active = ((s >> i) & 1u) == 1 && ((s >> j) & 1u) == 0;
    return active ? std::conj(a[s ^ m]) * a[s] : Complex{};
  });
}

double total_magnetization(const StateVector& psi, int workers) {
  const auto& a = psi.amplitudes();
  const int n = psi.n_sites();
  return tree_reduce<double>(a.size(), workers, [&](std::size_t s) {
    return std::norm(a[s]) * (n - 2.0 * std::popcount(static_cast<Basis>(s)));
  });
}

double energy(const CompiledHamiltonian& h, const StateVector& psi, int workers) {
  std::vector<Complex> hpsi;
  h.apply(psi.amplitudes(), hpsi, workers);
  const auto& a = psi.amplitudes();
  return tree_reduce<Complex>(a.size(), workers,
                              [&](std::size_t s) { return std::conj(a[s]) * hpsi[s]; })
      .real();
}

namespace {

constexpr char kMagic[8] = {'L', 'R', 'S', 'P', 'S', 'I', '0', '1'};

template <class T>
void put_le(std::string& buf, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  buf.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(const std::string& buf, std::size_t offset) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, buf.data() + offset, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void save_checkpoint(const StateVector& psi, const std::string& path) {
  std::string buf(kMagic, sizeof kMagic);
  put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(psi.n_sites()));
  buf.reserve(buf.size() + psi.dimension() * 16);
  for (const auto& a : psi.amplitudes()) {
    put_le<double>(buf, a.real());
    put_le<double>(buf, a.imag());
  }
  write_text_file(path, buf);
}

StateVector load_checkpoint(const std::string& path) {
  std::string buf = read_text_file(path);
  if (buf.size() < 12 || std::memcmp(buf.data(), kMagic, sizeof kMagic) != 0)
    fail(ErrorKind::input, path + ": not a state-vector checkpoint (bad magic)");
  auto n = get_le<std::uint32_t>(buf, 8);
  if (n < 1 || n > kMaxSites) fail(ErrorKind::input, path + ": site count out of range");
  std::size_t dim = std::size_t{1} << n;
  if (buf.size() != 12 + dim * 16)
    fail(ErrorKind::input, path + ": size does not match 2^N amplitudes");
  std::vector<Complex> amps(dim);
  for (std::size_t s = 0; s < dim; ++s)
    amps[s] = Complex(get_le<double>(buf, 12 + 16 * s), get_le<double>(buf, 20 + 16 * s));
  return StateVector(static_cast<int>(n), std::move(amps));
}

}  // namespace lrs::ed
