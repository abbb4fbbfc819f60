#include "obsorder/matrix_json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace obsorder {

namespace {

Complex entry_from_json(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  fail(Errc::parse_error, "matrix entry must be [re, im] or a number, got " + e.dump());
}

Json entry_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

void dump_to(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        dump_to(value, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        dump_to(value, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(entry_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  Json out;
  out["dim"] = m.rows();
  out["entries"] = std::move(rows);
  return out;
}

Json matrix_to_json(const HermitianMatrix& m) { return matrix_to_json(m.matrix()); }

ComplexMatrix complex_matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
    fail(Errc::parse_error, "matrix JSON needs \"dim\" and \"entries\"");
  if (!j["dim"].is_number_integer()) fail(Errc::parse_error, "\"dim\" must be an integer");
  const auto d = j["dim"].get<long long>();
  if (d < 1 || d > 64) fail(Errc::invalid_argument, "\"dim\" must lie in [1, 64]");
  const Json& rows = j["entries"];
  if (!rows.is_array()) fail(Errc::parse_error, "\"entries\" must be an array of rows");
  if (static_cast<long long>(rows.size()) != d) {
    std::ostringstream os;
    os << "dim is " << d << " but entries has " << rows.size() << " rows";
    fail(Errc::not_square, os.str());
  }
  ComplexMatrix m(d, d);
  for (long long i = 0; i < d; ++i) {
    const Json& row = rows[i];
    if (!row.is_array()) fail(Errc::parse_error, "matrix row must be an array");
    if (static_cast<long long>(row.size()) != d) {
      std::ostringstream os;
      os << "row " << i << " has " << row.size() << " entries, expected " << d;
      fail(Errc::not_square, os.str());
    }
    for (long long k = 0; k < d; ++k) m(i, k) = entry_from_json(row[k]);
  }
  if (!all_finite(m)) fail(Errc::non_finite, "matrix has non-finite entries");
  return m;
}

HermitianMatrix hermitian_from_json(const Json& j) { return HermitianMatrix(complex_matrix_from_json(j)); }

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(entry_to_json(v(i)));
  return out;
}

ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(Errc::parse_error, "vector must be a non-empty array");
  ComplexVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = entry_from_json(j[i]);
  if (!all_finite(v)) fail(Errc::non_finite, "vector has non-finite entries");
  return v;
}

std::string dump_json(const Json& j) {
  std::string out;
  dump_to(j, out);
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, e.what());
  }
}

Json read_json_file(const std::string& path) {
  if (path == "-") {
    std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    return parse_json(text);
  }
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open " + path);
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_json(text);
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(Errc::invalid_argument, "cannot write " + path);
  out << dump_json(j) << '\n';
}

}  // namespace obsorder
