#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace lrs {

/// C(δ, t) sampled on a rectangular grid, stored row-major by distance.
struct CorrelationField {
  std::vector<int> distances;
  std::vector<double> times;
  std::vector<double> values;
  std::string observable;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  CorrelationField() = default;
  CorrelationField(std::vector<int> distances, std::vector<double> times, std::string observable);

  std::size_t n_distances() const { return distances.size(); }
  std::size_t n_times() const { return times.size(); }
  double& at(std::size_t d, std::size_t t) { return values[d * times.size() + t]; }
  double at(std::size_t d, std::size_t t) const { return values[d * times.size() + t]; }

  /// Throws on unsorted axes, size mismatch or non-finite values.
  void validate() const;
};

/// CSV with header `delta,t,value`, distance-major.
std::string field_to_csv(const CorrelationField& field);
CorrelationField field_from_csv(const std::string& text, const std::string& origin_name);

/// Sidecar metadata: observable tag, grid description and producer metadata.
nlohmann::ordered_json field_sidecar(const CorrelationField& field);

void write_field(const CorrelationField& field, const std::string& csv_path,
                 const std::string& meta_path);
/// Reads the CSV; if `meta_path` names an existing file its metadata is attached.
CorrelationField read_field(const std::string& csv_path, const std::string& meta_path = {});

}  // namespace lrs
