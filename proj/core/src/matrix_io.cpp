#include "pdmeans/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/core.h>
#include <json.hpp>

#include "pdmeans/error.hpp"

namespace pdmeans {

namespace {

using json = nlohmann::json;

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("invalid JSON: {}", e.what()));
  }
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw ParseError(fmt::format("{}: expected a number", what));
  return v.get<double>();
}

Complex entry(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) {
    return {number(v[0], "real part"), number(v[1], "imaginary part")};
  }
  throw ParseError("matrix entry must be a number or a [re, im] pair");
}

Matrix matrix_from(const json& doc) {
  if (!doc.is_object() || !doc.contains("entries")) {
    throw ParseError("matrix document needs an \"entries\" field");
  }
  const json& rows = doc.at("entries");
  if (!rows.is_array() || rows.empty()) throw ParseError("\"entries\" must be a nonempty array");
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (doc.contains("dim")) {
    const json& d = doc.at("dim");
    if (!d.is_number_integer() || d.get<long long>() != n) {
      throw ParseError(fmt::format("\"dim\" does not match the {} rows given", n));
    }
  }
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ParseError(fmt::format("row {} must have {} entries", i, n));
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = entry(row[static_cast<std::size_t>(j)]);
  }
  return m;
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

void append_matrix(std::string& out, const Matrix& m, std::string_view indent) {
  out += fmt::format("{{\n{}  \"dim\": {},\n{}  \"entries\": [\n", indent, m.rows(), indent);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += fmt::format("{}    [", indent);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += fmt::format("[{}, {}]", num(m(i, j).real()), num(m(i, j).imag()));
    }
    out += i + 1 < m.rows() ? "],\n" : "]\n";
  }
  out += fmt::format("{}  ]\n{}}}", indent, indent);
}

}  // namespace

HermitianMatrix parse_hermitian(std::string_view json_text) {
  return HermitianMatrix(matrix_from(parse_document(json_text)));
}

PDMatrix parse_pd_matrix(std::string_view json_text) { return PDMatrix(parse_hermitian(json_text)); }

WeightedTuple parse_tuple(std::string_view json_text) {
  const json doc = parse_document(json_text);
  if (!doc.is_object() || !doc.contains("matrices") || !doc.at("matrices").is_array()) {
    throw ParseError("tuple document needs a \"matrices\" array");
  }
  std::vector<PDMatrix> items;
  for (const json& m : doc.at("matrices")) items.emplace_back(HermitianMatrix(matrix_from(m)));
  if (items.empty()) throw ParseError("\"matrices\" must not be empty");

  std::vector<double> w;
  if (doc.contains("weights")) {
    const json& ws = doc.at("weights");
    if (!ws.is_array()) throw ParseError("\"weights\" must be an array");
    for (const json& v : ws) w.push_back(number(v, "weight"));
  } else {
    w.assign(items.size(), 1.0);
  }
  WeightVector weights(std::move(w));
  PDTuple tuple(std::move(items));
  require_same_length(weights, tuple);
  return {std::move(weights), std::move(tuple)};
}

std::string format_matrix(const Matrix& m) {
  std::string out;
  append_matrix(out, m, "");
  out += '\n';
  return out;
}

std::string format_tuple(const WeightVector& w, const PDTuple& tuple) {
  std::string out = "{\n  \"weights\": [";
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (j) out += ", ";
    out += num(w[j]);
  }
  out += "],\n  \"matrices\": [\n    ";
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    if (j) out += ",\n    ";
    append_matrix(out, tuple[j].matrix(), "    ");
  }
  out += "\n  ]\n}\n";
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(fmt::format("write to {} failed", path.string()));
}

PDMatrix read_pd_matrix_file(const std::filesystem::path& path) {
  return parse_pd_matrix(read_text_file(path));
}

WeightedTuple read_tuple_file(const std::filesystem::path& path) {
  return parse_tuple(read_text_file(path));
}

}  // namespace pdmeans
