#include "qdetect/cli/problem_file.hpp"

#include <sstream>

#include "qdetect/errors.hpp"

namespace qdetect::cli {
namespace {

std::string at(const std::string& source, const std::string& field) { return source + ": " + field; }

void check_shape(const ComplexMatrix& m, std::size_t rows, std::size_t cols, const std::string& field) {
  if (m.rows() == rows && (cols == 0 || m.cols() == cols)) return;
  std::ostringstream msg;
  msg << field << ": expected " << rows << "x";
  if (cols == 0)
    msg << "k";
  else
    msg << cols;
  msg << ", got " << m.rows() << "x" << m.cols();
  throw InputError(msg.str());
}

UnitaryGroup group_from(const Json& j, std::size_t dim, const std::string& field) {
  const auto elements = matrices_from_json(j, field);
  for (std::size_t k = 0; k < elements.size(); ++k)
    check_shape(elements[k], dim, dim, field + "[" + std::to_string(k) + "]");
  try {
    return UnitaryGroup::build(elements);
  } catch (const Error& e) {
    throw InputError(field + ": " + e.what());
  }
}

}  // namespace

ProblemFile parse_problem(const Json& j, const std::string& source) {
  if (!j.is_object()) throw InputError(source + ": top level must be an object");
  if (!j.contains("schema_version")) throw InputError(at(source, "schema_version") + ": missing");
  if (!j["schema_version"].is_string() || j["schema_version"].get<std::string>() != kSchemaVersion)
    throw InputError(at(source, "schema_version") + ": expected \"" + kSchemaVersion + "\"");
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
    throw InputError(at(source, "dim") + ": expected a positive integer");
  const std::size_t dim = j["dim"].get<std::size_t>();

  const bool has_states = j.contains("states") || j.contains("priors");
  const bool has_group = j.contains("group") || j.contains("generators");
  if (has_states == has_group)
    throw InputError(source + ": give either states and priors, or group and generators");
  const std::vector<const char*> required =
      has_states ? std::vector<const char*>{"states", "priors"}
                 : std::vector<const char*>{"group", "generators"};
  for (const char* key : required)
    if (!j.contains(key)) throw InputError(at(source, key) + ": missing");
  if (has_states && j.contains("second_group"))
    throw InputError(at(source, "second_group") + ": only allowed with group and generators");

  if (has_states) {
    const auto states = matrices_from_json(j["states"], at(source, "states"));
    const Json& pj = j["priors"];
    if (!pj.is_array() || pj.size() != states.size()) {
      std::ostringstream msg;
      msg << at(source, "priors") << ": expected " << states.size() << " numbers";
      throw InputError(msg.str());
    }
    std::vector<double> priors;
    for (std::size_t k = 0; k < pj.size(); ++k) {
      if (!pj[k].is_number())
        throw InputError(at(source, "priors[" + std::to_string(k) + "]") + ": expected a number");
      priors.push_back(pj[k].get<double>());
    }
    std::vector<DensityOperator> rhos;
    for (std::size_t k = 0; k < states.size(); ++k) {
      const std::string field = at(source, "states[" + std::to_string(k) + "]");
      check_shape(states[k], dim, dim, field);
      try {
        rhos.emplace_back(HermitianMatrix(states[k], 1e-9));
      } catch (const Error& e) {
        throw InputError(field + ": " + e.what());
      }
    }
    try {
      return ProblemFile{source, dim, Ensemble::build(std::move(rhos), std::move(priors)), {}, {}, {}};
    } catch (const Error& e) {
      const std::string field = e.code() == ErrorCode::PriorsInvalid ? "priors" : "states";
      throw InputError(at(source, field) + ": " + e.what());
    }
  }

  UnitaryGroup group = group_from(j["group"], dim, at(source, "group"));
  auto generators = matrices_from_json(j["generators"], at(source, "generators"));
  for (std::size_t k = 0; k < generators.size(); ++k)
    check_shape(generators[k], dim, 0, at(source, "generators[" + std::to_string(k) + "]"));
  std::optional<UnitaryGroup> second;
  if (j.contains("second_group")) second = group_from(j["second_group"], dim, at(source, "second_group"));
  try {
    Ensemble e = generate_cgu({group, generators});
    return ProblemFile{source, dim, std::move(e), std::move(group), std::move(generators),
                       std::move(second)};
  } catch (const Error& e) {
    throw InputError(at(source, "generators") + ": " + e.what());
  }
}

ProblemFile load_problem(const std::filesystem::path& path) {
  return parse_problem(read_json_file(path), path.string());
}

}  // namespace qdetect::cli
