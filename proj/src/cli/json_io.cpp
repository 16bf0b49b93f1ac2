#include "qdetect/cli/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qdetect/errors.hpp"

namespace qdetect::cli {
namespace {

std::string where(const std::filesystem::path& path, const std::string& field) {
  return path.string() + ": " + field;
}

Complex entry_from_json(const Json& e, const std::string& field) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw InputError(field + ": expected a number or an [re, im] pair");
}

void check_version(const Json& j, const std::filesystem::path& path) {
  if (!j.is_object()) throw InputError(path.string() + ": top level must be an object");
  if (!j.contains("schema_version"))
    throw InputError(where(path, "schema_version") + ": missing");
  if (!j["schema_version"].is_string() || j["schema_version"].get<std::string>() != kSchemaVersion)
    throw InputError(where(path, "schema_version") + ": expected \"" + kSchemaVersion + "\"");
}

std::size_t read_dim(const Json& j, const std::filesystem::path& path) {
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
    throw InputError(where(path, "dim") + ": expected a positive integer");
  return j["dim"].get<std::size_t>();
}

HermitianMatrix hermitian_from(const ComplexMatrix& m, std::size_t dim, const std::string& field) {
  if (m.rows() != dim || m.cols() != dim) {
    std::ostringstream msg;
    msg << field << ": expected " << dim << "x" << dim << ", got " << m.rows() << "x" << m.cols();
    throw InputError(msg.str());
  }
  try {
    return HermitianMatrix(m, 1e-9);
  } catch (const Error& e) {
    throw InputError(field + ": " + e.what());
  }
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << path.string() << ":" << line << ":" << column << ": invalid JSON";
    throw InputError(msg.str());
  }
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw InputError(field + ": expected a non-empty array");
  const bool column = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
  if (column) {
    std::vector<Complex> v;
    for (const auto& e : j) v.push_back({e.get<double>(), 0.0});
    const std::size_t rows = v.size();
    return ComplexMatrix(rows, 1, std::move(v));
  }
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<Complex> entries;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    const Json& row = j[r];
    if (!row.is_array() || row.empty()) throw InputError(row_field + ": expected a row of entries");
    if (r == 0) cols = row.size();
    if (row.size() != cols) {
      std::ostringstream msg;
      msg << row_field << ": expected " << cols << " entries, got " << row.size();
      throw InputError(msg.str());
    }
    for (std::size_t c = 0; c < cols; ++c)
      entries.push_back(entry_from_json(row[c], row_field + "[" + std::to_string(c) + "]"));
  }
  try {
    return ComplexMatrix(rows, cols, std::move(entries));
  } catch (const Error& e) {
    throw InputError(field + ": " + e.what());
  }
}

std::vector<ComplexMatrix> matrices_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw InputError(field + ": expected a non-empty list of matrices");
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(matrix_from_json(j[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Json matrices_to_json(const std::vector<ComplexMatrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

Json operators_to_json(const std::vector<HermitianMatrix>& ops) {
  Json out = Json::array();
  for (const auto& op : ops) out.push_back(matrix_to_json(op.matrix()));
  return out;
}

Json povm_file_json(const Povm& m) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["dim"] = m.dim();
  j["operators"] = operators_to_json(m.operators());
  return j;
}

std::vector<HermitianMatrix> read_povm_file(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  check_version(j, path);
  const std::size_t dim = read_dim(j, path);
  if (!j.contains("operators")) throw InputError(where(path, "operators") + ": missing");
  const auto ms = matrices_from_json(j["operators"], where(path, "operators"));
  std::vector<HermitianMatrix> ops;
  for (std::size_t k = 0; k < ms.size(); ++k)
    ops.push_back(hermitian_from(ms[k], dim, where(path, "operators[" + std::to_string(k) + "]")));
  return ops;
}

Json certificate_file_json(const HermitianMatrix& x) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["dim"] = x.dim();
  j["x"] = matrix_to_json(x.matrix());
  return j;
}

HermitianMatrix read_certificate_file(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  check_version(j, path);
  const std::size_t dim = read_dim(j, path);
  if (!j.contains("x")) throw InputError(where(path, "x") + ": missing");
  return hermitian_from(matrix_from_json(j["x"], where(path, "x")), dim, where(path, "x"));
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError(path.string() + ": cannot write file");
  out << j.dump(2) << '\n';
}

}  // namespace qdetect::cli
