#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qdetect/cli/json_io.hpp"
#include "qdetect/ensemble.hpp"
#include "qdetect/symmetry.hpp"

namespace qdetect::cli {

/// Parsed problem file. Either explicit states with priors, or a group with
/// generator factors (equal priors) and optionally a second group V_k for
/// generators of the form V_k phi.
struct ProblemFile {
  std::string source;
  std::size_t dim = 0;
  Ensemble ensemble;
  std::optional<UnitaryGroup> group;
  std::vector<ComplexMatrix> generators;
  std::optional<UnitaryGroup> second_group;

  bool symmetric() const { return group.has_value(); }
  CguSpec cgu_spec() const { return {*group, generators}; }
};

/// Throws InputError naming the file and field for every malformed or
/// invalid input, including failed ensemble and group validation.
ProblemFile load_problem(const std::filesystem::path& path);
ProblemFile parse_problem(const Json& j, const std::string& source);

}  // namespace qdetect::cli
