#include "core/field.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include "core/error.hpp"
#include "core/format.hpp"

namespace lrs {

CorrelationField::CorrelationField(std::vector<int> d, std::vector<double> t, std::string obs)
    : distances(std::move(d)), times(std::move(t)), observable(std::move(obs)) {
  values.assign(distances.size() * times.size(), 0.0);
}

void CorrelationField::validate() const {
  require(values.size() == distances.size() * times.size(), "field: value count mismatch");
  for (std::size_t i = 1; i < distances.size(); ++i)
    require(distances[i] > distances[i - 1], "field: distances must be increasing");
  for (std::size_t i = 1; i < times.size(); ++i)
    require(times[i] > times[i - 1], "field: times must be increasing");
  for (double v : values) require(std::isfinite(v), "field: non-finite value");
}

std::string field_to_csv(const CorrelationField& f) {
  std::string out = "delta,t,value\n";
  out.reserve(out.size() + f.values.size() * 48);
  for (std::size_t d = 0; d < f.n_distances(); ++d) {
    std::string delta = std::to_string(f.distances[d]);
    for (std::size_t t = 0; t < f.n_times(); ++t) {
      out += delta;
      out += ',';
      out += format_double(f.times[t]);
      out += ',';
      out += format_double(f.at(d, t));
      out += '\n';
    }
  }
  return out;
}

namespace {

template <class T>
T parse_number(std::string_view s, const std::string& where) {
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    fail(ErrorKind::input, where + ": cannot parse '" + std::string(s) + "' as a number");
  return v;
}

}  // namespace

CorrelationField field_from_csv(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line) || (++lineno, line != "delta,t,value"))
    fail(ErrorKind::input, name + ":1: expected header 'delta,t,value'");
  std::map<int, std::map<double, double>> rows;
  std::map<double, int> time_set;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::string where = name + ":" + std::to_string(lineno);
    auto c1 = line.find(','), c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos)
      fail(ErrorKind::input, where + ": expected three comma-separated columns");
    std::string_view sv(line);
    int d = parse_number<int>(sv.substr(0, c1), where);
    double t = parse_number<double>(sv.substr(c1 + 1, c2 - c1 - 1), where);
    double v = parse_number<double>(sv.substr(c2 + 1), where);
    if (!std::isfinite(t) || !std::isfinite(v)) fail(ErrorKind::input, where + ": non-finite entry");
    if (!rows[d].emplace(t, v).second)
      fail(ErrorKind::input, where + ": duplicate (delta, t) entry");
    time_set.emplace(t, 0);
  }
  if (rows.empty()) fail(ErrorKind::input, name + ": no data rows");
  CorrelationField f;
  for (auto& [t, _] : time_set) f.times.push_back(t);
  for (auto& [d, series] : rows) {
    if (series.size() != f.times.size())
      fail(ErrorKind::input, name + ": grid is not rectangular at delta=" + std::to_string(d));
    f.distances.push_back(d);
    for (auto& [t, v] : series) f.values.push_back(v);
  }
  f.validate();
  return f;
}

nlohmann::ordered_json field_sidecar(const CorrelationField& f) {
  nlohmann::ordered_json j;
  j["observable"] = f.observable;
  j["n_distances"] = f.n_distances();
  j["n_times"] = f.n_times();
  if (!f.distances.empty()) {
    j["delta_min"] = f.distances.front();
    j["delta_max"] = f.distances.back();
  }
  if (!f.times.empty()) {
    j["t_min"] = f.times.front();
    j["t_max"] = f.times.back();
  }
  j["metadata"] = f.metadata;
  return j;
}

void write_field(const CorrelationField& f, const std::string& csv_path,
                 const std::string& meta_path) {
  f.validate();
  write_text_file(csv_path, field_to_csv(f));
  if (!meta_path.empty()) write_text_file(meta_path, field_sidecar(f).dump(2) + "\n");
}

CorrelationField read_field(const std::string& csv_path, const std::string& meta_path) {
  CorrelationField f = field_from_csv(read_text_file(csv_path), csv_path);
  if (!meta_path.empty() && std::filesystem::exists(meta_path)) {
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(read_text_file(meta_path));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::input, meta_path + ": " + e.what());
    }
    if (j.contains("observable") && j["observable"].is_string())
      f.observable = j["observable"].get<std::string>();
    if (j.contains("metadata")) f.metadata = j["metadata"];
  }
  return f;
}

}  // namespace lrs
