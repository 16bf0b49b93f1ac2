#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdetect/ensemble.hpp"
#include "qdetect/matrix.hpp"

namespace qdetect::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// Bad input file or flag; maps to exit code 2. The message starts with the
/// file and field (or line) it refers to.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a JSON file. Syntax errors report line and column.
Json read_json_file(const std::filesystem::path& path);

/// Complex matrix as a list of rows whose entries are numbers or [re, im]
/// pairs. A flat list of numbers is read as a real column vector.
ComplexMatrix matrix_from_json(const Json& j, const std::string& field);
std::vector<ComplexMatrix> matrices_from_json(const Json& j, const std::string& field);

/// Rows of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);
Json matrices_to_json(const std::vector<ComplexMatrix>& ms);
Json operators_to_json(const std::vector<HermitianMatrix>& ops);

/// {"schema_version", "dim", "operators": [...]}
Json povm_file_json(const Povm& m);
/// Operators as stored; validity is left to the caller.
std::vector<HermitianMatrix> read_povm_file(const std::filesystem::path& path);

/// {"schema_version", "dim", "x": matrix}
Json certificate_file_json(const HermitianMatrix& x);
HermitianMatrix read_certificate_file(const std::filesystem::path& path);

void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace qdetect::cli
