#include "resest/common/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "resest/common/error.hpp"

namespace resest {
namespace {

void write_string(std::string& out, const std::string& s) {
  // nlohmann's own escaping is correct; reuse it for strings.
  out += Json(s).dump();
}

void write_double(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
  // Keep floats recognizable as floats when they happen to be integral.
  std::string_view sv(buf);
  if (sv.find_first_of(".eE") == std::string_view::npos) out += ".0";
}

void write_value(std::string& out, const Json& v, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_string(out, it.key());
        out += indent < 0 ? ":" : ": ";
        write_value(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line; nested structure gets broken up.
      bool flat = true;
      for (const auto& e : v) flat = flat && !e.is_structured();
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write_value(out, e, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      write_double(out, v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::string out;
  write_value(out, value, indent, 0);
  out += '\n';
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& rows) {
  if (!rows.is_array()) throw InvalidInput("matrix must be an array of rows");
  const auto r = static_cast<Eigen::Index>(rows.size());
  if (r == 0) return Matrix(0, 0);
  if (!rows[0].is_array()) throw InvalidInput("matrix row must be an array");
  const auto c = static_cast<Eigen::Index>(rows[0].size());
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c)
      throw InvalidInput("matrix rows must all have the same length");
    for (Eigen::Index j = 0; j < c; ++j) {
      const auto& e = row[static_cast<std::size_t>(j)];
      if (!e.is_number()) throw InvalidInput("matrix entries must be numbers");
      m(i, j) = e.get<double>();
    }
  }
  return m;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

}  // namespace resest
