#pragma once

// Problem files: a Lie algebra g, a subalgebra h given by indices or by an
// embedding matrix, optional named h-modules, and run settings.  The text
// format is JSON with every rational written as a "p/q" string.

#include <optional>
#include <string>
#include <vector>

#include "pbwgate/lie.hpp"

namespace pbwgate {

/// Syntax or validation failure; `location` is "line L, column C" for
/// syntax errors and a JSON pointer such as "/g/brackets/3" otherwise.
class ParseError : public Error {
public:
  ParseError(std::string location, const std::string &msg)
      : Error(location + ": " + msg), location(std::move(location)) {}
  std::string location;
};

struct ModuleSpec {
  std::string name;
  std::size_t dim = 0;
  /// One dim x dim matrix per h-basis element.
  std::vector<Matrix> actions;
  bool operator==(const ModuleSpec &) const = default;
};

struct Settings {
  std::size_t max_degree = 4;
  /// Empty means every check.
  std::vector<std::string> checks;
  /// The problem is expected to violate the Jacobi identity.
  bool negative_control = false;
  bool operator==(const Settings &) const = default;
};

struct ProblemFile {
  std::string name;
  std::string description;
  LieAlgebra g;
  /// Columns are the images of the h-basis in g coordinates.
  Matrix embedding;
  /// Set when h was given as a subset of the g-basis.
  std::optional<std::vector<std::size_t>> h_indices;
  std::vector<std::string> h_labels;
  /// Optional complement columns; empty means the echelon complement.
  std::optional<Matrix> complement;
  std::vector<ModuleSpec> modules;
  Settings settings;

  InclusionPair pair() const;
  /// Built-ins: "trivial", "n", "adjoint" (of h); otherwise a named spec.
  LieModule module(const std::string &name, const InclusionPair &pair) const;
  std::vector<std::string> module_names() const;

  /// Semantic equality (h_indices is a spelling, not part of the object).
  bool operator==(const ProblemFile &o) const;
};

ProblemFile parse_problem(const std::string &text);
ProblemFile parse_problem_file(const std::string &path);
std::string serialize_problem(const ProblemFile &p);

std::vector<std::string> catalog_list();
/// Throws Error for an unknown name.
ProblemFile catalog_get(const std::string &name);

} // namespace pbwgate
