#pragma once

#include <span>
#include <vector>

#include "resest/common/json_io.hpp"
#include "resest/common/linalg.hpp"

namespace resest::observability {

struct Sensor {
  int id = 0;
  std::vector<int> measures;    // measured state indices, each row of C_i selects one
  int equivalence_class = -1;   // parent-SCC class, -1 when outside every class

  friend bool operator==(const Sensor&, const Sensor&) = default;
};

/// Ordered set of sensors over an n-state plant. Stacking the per-sensor
/// selection rows C_i gives the global output matrix C.
class SensorSuite {
 public:
  SensorSuite() = default;
  SensorSuite(int state_count, std::vector<Sensor> sensors);

  int state_count() const { return n_; }
  int sensor_count() const { return static_cast<int>(sensors_.size()); }
  const std::vector<Sensor>& sensors() const { return sensors_; }
  const Sensor& sensor(int i) const { return sensors_.at(static_cast<std::size_t>(i)); }

  /// p_i x n selection matrix of sensor i.
  Matrix output_matrix(int i) const;
  /// Global C (sum p_i rows).
  Matrix stacked_output_matrix() const;
  /// Diagonal of C_i^T C_i as a 0/1 vector of length n.
  Vector selector(int i) const;
  /// blockdiag(C_i^T C_i), mn x mn.
  Matrix dc() const;

  /// Suite with the listed sensors deleted and the rest renumbered 0..m'-1.
  SensorSuite without_sensors(std::span<const int> removed) const;

  friend bool operator==(const SensorSuite&, const SensorSuite&) = default;

 private:
  int n_ = 0;
  std::vector<Sensor> sensors_;
};

/// {"m": m, "n": n, "sensors": [{"id": i, "measures": [...], "class": c}, ...]}
Json sensors_to_json(const SensorSuite& s);
SensorSuite sensors_from_json(const Json& doc);

}  // namespace resest::observability
