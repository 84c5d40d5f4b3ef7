#include "resest/gain/block_gain.hpp"

#include <algorithm>

#include "resest/common/error.hpp"

namespace resest::gain {

BlockDiagGain::BlockDiagGain(int sensor_count, int state_count)
    : n_(state_count), blocks_(static_cast<std::size_t>(sensor_count), Matrix::Zero(state_count, state_count)) {}

BlockDiagGain::BlockDiagGain(std::vector<Matrix> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) return;
  n_ = static_cast<int>(blocks_.front().rows());
  for (const auto& b : blocks_)
    if (b.rows() != n_ || b.cols() != n_) throw DimensionMismatch("every gain block must be n x n");
}

Matrix BlockDiagGain::assembled() const {
  Matrix k = Matrix::Zero(dimension(), dimension());
  for (int i = 0; i < sensor_count(); ++i) k.block(i * n_, i * n_, n_, n_) = block(i);
  return k;
}

SparseMatrix BlockDiagGain::assembled_sparse() const {
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < sensor_count(); ++i)
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c)
        if (block(i)(r, c) != 0.0) t.emplace_back(i * n_ + r, i * n_ + c, block(i)(r, c));
  SparseMatrix k(dimension(), dimension());
  k.setFromTriplets(t.begin(), t.end());
  return k;
}

BlockDiagGain BlockDiagGain::without_blocks(const std::vector<int>& removed) const {
  std::vector<Matrix> kept;
  for (int i = 0; i < sensor_count(); ++i)
    if (std::find(removed.begin(), removed.end(), i) == removed.end()) kept.push_back(block(i));
  BlockDiagGain out(std::move(kept));
  if (out.sensor_count() == 0) out.n_ = n_;
  return out;
}

Json gain_to_json(const BlockDiagGain& k) {
  Json blocks = Json::array();
  for (const auto& b : k.blocks()) {
    Json flat = Json::array();
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c) flat.push_back(b(r, c));
    blocks.push_back(std::move(flat));
  }
  return Json{{"m", k.sensor_count()}, {"n", k.state_count()}, {"blocks", std::move(blocks)}};
}

BlockDiagGain gain_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("m") || !doc.contains("n") || !doc.contains("blocks"))
    throw InvalidInput("gain JSON needs \"m\", \"n\" and \"blocks\"");
  const int m = doc["m"].get<int>();
  const int n = doc["n"].get<int>();
  const auto& blocks = doc["blocks"];
  if (!blocks.is_array() || static_cast<int>(blocks.size()) != m)
    throw InvalidInput("gain JSON lists a different number of blocks than \"m\"");
  BlockDiagGain k(m, n);
  for (int i = 0; i < m; ++i) {
    const auto& flat = blocks[static_cast<std::size_t>(i)];
    if (!flat.is_array() || static_cast<int>(flat.size()) != n * n)
      throw InvalidInput("each gain block must hold n*n numbers");
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) k.block(i)(r, c) = flat[static_cast<std::size_t>(r * n + c)].get<double>();
  }
  return k;
}

}  // namespace resest::gain
