#include "core/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "core/error.hpp"
#include "core/numeric.hpp"

namespace lrs {

Lattice::Lattice(std::vector<int> extents) : extents_(std::move(extents)) {
  require(!extents_.empty(), "lattice: dimension must be at least 1");
  strides_.assign(extents_.size(), 1);
  for (int e : extents_) require(e >= 1, "lattice: every extent must be >= 1");
  for (int a = dimension() - 1; a >= 0; --a) {
    strides_[a] = size_;
    size_ *= extents_[a];
    require(size_ <= (Site{1} << 40), "lattice: too many sites");
  }
  std::vector<int> mid(extents_.size());
  for (std::size_t a = 0; a < extents_.size(); ++a) mid[a] = (extents_[a] - 1) / 2;
  center_ = index(mid);
}

void Lattice::check_site(Site s) const {
  if (!contains(s))
    fail(ErrorKind::input, "lattice: site index " + std::to_string(s) +
                               " outside [0, " + std::to_string(size_) + ")");
}

std::vector<int> Lattice::coords(Site s) const {
  check_site(s);
  std::vector<int> c(extents_.size());
  for (std::size_t a = 0; a < extents_.size(); ++a) {
    c[a] = static_cast<int>(s / strides_[a]);
    s %= strides_[a];
  }
  return c;
}

Site Lattice::index(const std::vector<int>& c) const {
  require(c.size() == extents_.size(), "lattice: coordinate rank mismatch");
  Site s = 0;
  for (std::size_t a = 0; a < c.size(); ++a) {
    require(c[a] >= 0 && c[a] < extents_[a], "lattice: coordinate outside extent");
    s += c[a] * strides_[a];
  }
  return s;
}

int Lattice::distance(Site i, Site j) const {
  check_site(i);
  check_site(j);
  Site d = 0;
  for (std::size_t a = 0; a < extents_.size(); ++a) {
    d += std::llabs(i / strides_[a] - j / strides_[a]);
    i %= strides_[a];
    j %= strides_[a];
  }
  return static_cast<int>(d);
}

int Lattice::max_distance_from(Site o) const {
  auto c = coords(o);
  int d = 0;
  for (std::size_t a = 0; a < c.size(); ++a) d += std::max(c[a], extents_[a] - 1 - c[a]);
  return d;
}

Site Lattice::shifted(Site o, int axis, int steps) const {
  require(axis >= 0 && axis < dimension(), "lattice: axis out of range");
  auto c = coords(o);
  long target = static_cast<long>(c[axis]) + steps;
  if (target < 0 || target >= extents_[axis])
    fail(ErrorKind::input, "lattice: displacement by " + std::to_string(steps) +
                               " along axis " + std::to_string(axis) + " leaves the lattice");
  c[axis] = static_cast<int>(target);
  return index(c);
}

ShellTable shell_counts(const Lattice& lattice, Site origin) {
  auto oc = lattice.coords(origin);
  // Distances decompose per axis, so the shell histogram is the convolution
  // of the per-axis |x - o_x| histograms.
  std::vector<std::int64_t> counts{1};
  for (int a = 0; a < lattice.dimension(); ++a) {
    int e = lattice.extents()[a];
    int reach = std::max(oc[a], e - 1 - oc[a]);
    std::vector<std::int64_t> axis(reach + 1, 0);
    for (int x = 0; x < e; ++x) ++axis[std::abs(x - oc[a])];
    std::vector<std::int64_t> next(counts.size() + axis.size() - 1, 0);
    for (std::size_t i = 0; i < counts.size(); ++i)
      for (std::size_t k = 0; k < axis.size(); ++k) next[i + k] += counts[i] * axis[k];
    counts = std::move(next);
  }
  return ShellTable{origin, std::move(counts)};
}

double shell_sum(const ShellTable& table, int delta, double exponent) {
  require(delta >= 0, "shell_sum: delta must be >= 0");
  require(exponent >= 0.0, "shell_sum: exponent must be >= 0");
  CompensatedSum acc;
  for (int l = delta; l <= table.l_max(); ++l) {
    if (table.counts[l] == 0) continue;
    acc.add(static_cast<double>(table.counts[l]) * std::pow(1.0 + l, -exponent));
  }
  return acc.value();
}

}  // namespace lrs
