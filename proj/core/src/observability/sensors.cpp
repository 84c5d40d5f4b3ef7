#include "resest/observability/sensors.hpp"

#include <algorithm>
#include <string>

#include "resest/common/error.hpp"

namespace resest::observability {

SensorSuite::SensorSuite(int state_count, std::vector<Sensor> sensors)
    : n_(state_count), sensors_(std::move(sensors)) {
  if (n_ <= 0) throw InvalidInput("sensor suite needs a positive state count");
  for (std::size_t i = 0; i < sensors_.size(); ++i) {
    auto& s = sensors_[i];
    s.id = static_cast<int>(i);
    for (int x : s.measures)
      if (x < 0 || x >= n_)
        throw InvalidInput("sensor " + std::to_string(i) + " measures state " + std::to_string(x) +
                           " outside [0, " + std::to_string(n_) + ")");
    std::vector<int> sorted = s.measures;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidInput("sensor " + std::to_string(i) + " lists a measured state twice");
  }
}

Matrix SensorSuite::output_matrix(int i) const {
  const auto& s = sensor(i);
  Matrix c = Matrix::Zero(static_cast<Eigen::Index>(s.measures.size()), n_);
  for (std::size_t r = 0; r < s.measures.size(); ++r) c(static_cast<Eigen::Index>(r), s.measures[r]) = 1.0;
  return c;
}

Matrix SensorSuite::stacked_output_matrix() const {
  Eigen::Index rows = 0;
  for (const auto& s : sensors_) rows += static_cast<Eigen::Index>(s.measures.size());
  Matrix c(rows, n_);
  Eigen::Index r = 0;
  for (int i = 0; i < sensor_count(); ++i) {
    const Matrix ci = output_matrix(i);
    c.middleRows(r, ci.rows()) = ci;
    r += ci.rows();
  }
  return c;
}

Vector SensorSuite::selector(int i) const {
  Vector d = Vector::Zero(n_);
  for (int x : sensor(i).measures) d(x) = 1.0;
  return d;
}

Matrix SensorSuite::dc() const {
  const Eigen::Index mn = static_cast<Eigen::Index>(sensor_count()) * n_;
  Vector diag(mn);
  for (int i = 0; i < sensor_count(); ++i) diag.segment(static_cast<Eigen::Index>(i) * n_, n_) = selector(i);
  return diag.asDiagonal();
}

SensorSuite SensorSuite::without_sensors(std::span<const int> removed) const {
  std::vector<bool> drop(sensors_.size(), false);
  for (int i : removed) {
    if (i < 0 || i >= sensor_count()) throw InvalidInput("removed sensor id out of range");
    drop[static_cast<std::size_t>(i)] = true;
  }
  std::vector<Sensor> kept;
  for (std::size_t i = 0; i < sensors_.size(); ++i)
    if (!drop[i]) kept.push_back(sensors_[i]);
  if (kept.empty()) throw InvalidInput("removing every sensor leaves nothing to simulate");
  return SensorSuite(n_, std::move(kept));
}

Json sensors_to_json(const SensorSuite& s) {
  Json list = Json::array();
  for (const auto& sensor : s.sensors())
    list.push_back({{"id", sensor.id}, {"measures", sensor.measures}, {"class", sensor.equivalence_class}});
  return Json{{"m", s.sensor_count()}, {"n", s.state_count()}, {"sensors", std::move(list)}};
}

SensorSuite sensors_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("sensors") || !doc["sensors"].is_array())
    throw InvalidInput("sensor suite JSON needs a \"sensors\" array");
  std::vector<Sensor> sensors;
  int max_state = -1;
  for (const auto& e : doc["sensors"]) {
    if (!e.is_object() || !e.contains("measures") || !e["measures"].is_array())
      throw InvalidInput("each sensor needs a \"measures\" array");
    Sensor s;
    s.id = e.value("id", static_cast<int>(sensors.size()));
    if (s.id != static_cast<int>(sensors.size())) throw InvalidInput("sensor ids must be 0..m-1 in order");
    for (const auto& x : e["measures"]) {
      if (!x.is_number_integer()) throw InvalidInput("measured state ids must be integers");
      s.measures.push_back(x.get<int>());
      max_state = std::max(max_state, s.measures.back());
    }
    s.equivalence_class = e.value("class", -1);
    sensors.push_back(std::move(s));
  }
  if (doc.contains("m") && doc["m"].get<int>() != static_cast<int>(sensors.size()))
    throw InvalidInput("\"m\" disagrees with the number of listed sensors");
  const int n = doc.contains("n") ? doc["n"].get<int>() : max_state + 1;
  return SensorSuite(n, std::move(sensors));
}

}  // namespace resest::observability
