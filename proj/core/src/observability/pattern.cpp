#include "resest/observability/pattern.hpp"

#include <random>
#include <string>

#include "resest/common/error.hpp"

namespace resest::observability {

SparsityPattern::SparsityPattern(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw InvalidInput("pattern dimensions must be non-negative");
  mask_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), false);
}

SparsityPattern SparsityPattern::square(int n, const std::vector<std::pair<int, int>>& positions,
                                        bool with_diagonal) {
  SparsityPattern p(n, n);
  if (with_diagonal)
    for (int i = 0; i < n; ++i) p.set(i, i);
  for (const auto& [r, c] : positions) p.set(r, c);
  return p;
}

SparsityPattern SparsityPattern::of(const Matrix& m, double tol) {
  SparsityPattern p(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (std::abs(m(r, c)) > tol) p.set(r, c);
  return p;
}

bool SparsityPattern::has(int r, int c) const {
  if (r < 0 || c < 0 || r >= rows_ || c >= cols_) throw InvalidInput("pattern position out of range");
  return mask_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)];
}

void SparsityPattern::set(int r, int c, bool value) {
  if (r < 0 || c < 0 || r >= rows_ || c >= cols_)
    throw InvalidInput("pattern position (" + std::to_string(r) + ", " + std::to_string(c) +
                       ") out of range");
  mask_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)] = value;
}

bool SparsityPattern::has_full_diagonal() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    if (!has(i, i)) return false;
  return true;
}

std::vector<std::pair<int, int>> SparsityPattern::nonzeros() const {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (has(r, c)) out.emplace_back(r, c);
  return out;
}

std::size_t SparsityPattern::nonzero_count() const {
  std::size_t k = 0;
  for (bool b : mask_) k += b ? 1 : 0;
  return k;
}

SparsityPattern SparsityPattern::replicated(int copies) const {
  SparsityPattern p(rows_ * copies, cols_ * copies);
  for (int k = 0; k < copies; ++k)
    for (const auto& [r, c] : nonzeros()) p.set(k * rows_ + r, k * cols_ + c);
  return p;
}

Matrix random_realization(const SparsityPattern& p, Rng& rng, double low, double high) {
  std::uniform_real_distribution<double> magnitude(low, high);
  std::bernoulli_distribution negative(0.5);
  Matrix m = Matrix::Zero(p.rows(), p.cols());
  for (const auto& [r, c] : p.nonzeros()) {
    const double v = magnitude(rng);
    m(r, c) = negative(rng) ? -v : v;
  }
  return m;
}

Json pattern_to_json(const SparsityPattern& p) {
  if (!p.is_square()) throw InvalidInput("only square patterns are serialized");
  Json nz = Json::array();
  for (const auto& [r, c] : p.nonzeros()) nz.push_back({r, c});
  return Json{{"n", p.rows()}, {"nonzeros", std::move(nz)}};
}

SparsityPattern pattern_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
    throw InvalidInput("pattern JSON needs an integer \"n\" field");
  const int n = doc["n"].get<int>();
  if (n <= 0) throw InvalidInput("pattern dimension must be positive");
  SparsityPattern p(n, n);
  const auto& nz = doc.value("nonzeros", Json::array());
  if (!nz.is_array()) throw InvalidInput("\"nonzeros\" must be an array");
  for (const auto& e : nz) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw InvalidInput("each nonzero must be a [row, col] pair");
    p.set(e[0].get<int>(), e[1].get<int>());
  }
  return p;
}

graphs::DiGraph system_digraph(const SparsityPattern& a) {
  if (!a.is_square()) throw InvalidInput("system pattern must be square");
  graphs::DiGraph g(a.rows(), true);
  for (const auto& [i, j] : a.nonzeros())
    if (i != j) g.add_edge(j, i);
  return g;
}

}  // namespace resest::observability
