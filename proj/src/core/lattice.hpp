#pragma once

#include <cstdint>
#include <vector>

namespace lrs {

using Site = std::int64_t;

/// Open-boundary hypercubic lattice. Sites are indexed row-major over the
/// axes (last axis fastest); distances are shortest edge paths, i.e.
/// Manhattan distance.
class Lattice {
 public:
  explicit Lattice(std::vector<int> extents);
  /// Chain of `length` sites.
  static Lattice chain(int length) { return Lattice({length}); }

  int dimension() const { return static_cast<int>(extents_.size()); }
  const std::vector<int>& extents() const { return extents_; }
  Site size() const { return size_; }

  /// Most central site, ties broken toward the lower index on each axis.
  Site center() const { return center_; }

  bool contains(Site s) const { return s >= 0 && s < size_; }
  std::vector<int> coords(Site s) const;
  Site index(const std::vector<int>& coords) const;

  int distance(Site i, Site j) const;
  /// Largest distance from `o` to any site.
  int max_distance_from(Site o) const;

  /// Site displaced from `o` by `steps` along `axis` (negative steps allowed).
  Site shifted(Site o, int axis, int steps) const;

 private:
  void check_site(Site s) const;

  std::vector<int> extents_;
  std::vector<Site> strides_;
  Site size_ = 1;
  Site center_ = 0;
};

/// Number of sites at each graph distance l = 0..l_max from an origin.
struct ShellTable {
  Site origin = 0;
  std::vector<std::int64_t> counts;

  int l_max() const { return static_cast<int>(counts.size()) - 1; }
};

ShellTable shell_counts(const Lattice& lattice, Site origin);

/// Σ_{l=delta}^{l_max} (1+l)^(-exponent) · counts[l], compensated.
/// Returns 0 when delta exceeds l_max.
double shell_sum(const ShellTable& table, int delta, double exponent);

}  // namespace lrs
